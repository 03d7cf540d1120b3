#include "pathplan/oracle.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

namespace pathplan {

namespace {

enum class Kind { Weak, Smart };

struct Checker {
  const ExecutionPlan& plan;
  ExecutionPlan bare;
  const AtomicQuery& q;
  const Catalog& catalog;
  Kind kind;
  OracleResult result;

  // true = counterexample found
  bool test(const Instance& inst, const char* layer) {
    ++result.instances;
    auto free = eval_plan(bare, catalog, inst, CallMode::OptionalEdge);
    if (free.empty()) return false;
    auto expected = eval_query(q, inst);
    if (kind == Kind::Weak && expected.empty()) return false;
    auto got = plan.filters.empty() ? free : eval_plan(plan, catalog, inst, CallMode::OptionalEdge);
    bool bad;
    if (kind == Kind::Smart) {
      bad = got != expected;
    } else {
      bad = std::none_of(got.begin(), got.end(), [&](const std::string& c) { return expected.count(c); });
    }
    if (bad) {
      result.holds = false;
      result.witness = inst;
      result.layer = layer;
    }
    return bad;
  }
};

Instance rename(const Instance& inst, const std::string& from, const std::string& to) {
  Instance out;
  for (auto f : inst.facts()) {
    if (f.subject == from) f.subject = to;
    if (f.object == from) f.object = to;
    out.add(f);
  }
  return out;
}

OracleResult run(const ExecutionPlan& plan, const AtomicQuery& q, const Catalog& catalog,
                 const OracleBudget& budget, Kind kind) {
  Checker ck{plan, without_filters(plan), q, catalog, kind, {}};

  auto free_sem = plan_semantics(sub_function_transformation(ck.bare, catalog), catalog);
  auto sem = plan_semantics(sub_function_transformation(plan, catalog), catalog);

  // canonical instance
  Instance canon = canonical_weak_database(free_sem, q);
  if (ck.test(canon, "canonical")) return ck.result;

  // the plan body itself, with filtered variables set to their constants
  {
    Instance frozen;
    auto name = [&](int b) -> std::string {
      for (const auto& f : sem.filters)
        if (f.position == b) return f.constant;
      if (b == 0) return q.constant;
      return "_f" + std::to_string(b);
    };
    for (int b = 0; b < sem.length(); ++b) frozen.add(sem.skeleton[static_cast<std::size_t>(b)], name(b), name(b + 1));
    if (ck.test(frozen, "frozen")) return ck.result;
  }

  // subsets of the canonical instance
  std::vector<Fact> cf(canon.facts().begin(), canon.facts().end());
  if (cf.size() <= 12) {
    for (std::uint32_t mask = 1; mask + 1 < (1u << cf.size()); ++mask) {
      Instance sub;
      for (std::size_t i = 0; i < cf.size(); ++i)
        if (mask & (1u << i)) sub.add(cf[i]);
      if (ck.test(sub, "canonical-subset")) return ck.result;
    }
  }

  // two constants of the canonical instance collapsed into one
  {
    auto cs = canon.constants();
    std::vector<std::string> consts(cs.begin(), cs.end());
    for (std::size_t i = 0; i < consts.size(); ++i)
      for (std::size_t j = i + 1; j < consts.size(); ++j) {
        const auto& keep = consts[j] == q.constant ? consts[j] : consts[i];
        const auto& drop = consts[j] == q.constant ? consts[i] : consts[j];
        if (ck.test(rename(canon, drop, keep), "canonical-merge")) return ck.result;
      }
  }

  // small instances over the plan's relations
  std::set<std::string> rels{q.relation.relation};
  for (const auto& a : sem.skeleton) rels.insert(a.relation);
  std::vector<std::string> pool{q.constant, "_k0", "_k1", "_k2"};
  std::vector<Fact> universe;
  for (const auto& r : rels)
    for (const auto& s : pool)
      for (const auto& o : pool) universe.push_back({r, s, o});

  std::size_t tried = 0;
  bool found = false, capped = false;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t, int)> combos = [&](std::size_t from, int left) {
    if (found || capped) return;
    if (left == 0) {
      if (tried++ >= budget.max_exhaustive) {
        capped = true;
        return;
      }
      Instance inst;
      for (auto i : pick) inst.add(universe[i]);
      found = ck.test(inst, "exhaustive");
      return;
    }
    for (std::size_t i = from; i < universe.size() && !found && !capped; ++i) {
      pick.push_back(i);
      combos(i + 1, left - 1);
      pick.pop_back();
    }
  };
  for (int size = 1; size <= budget.max_facts && !found && !capped; ++size) combos(0, size);
  if (found) return ck.result;
  if (capped) ck.result.complete = false;

  std::mt19937_64 rng(budget.seed);
  for (int i = 0; i < budget.random_instances; ++i) {
    Instance inst;
    auto n = 1 + rng() % static_cast<std::uint64_t>(std::max(1, budget.max_facts));
    for (std::uint64_t k = 0; k < n; ++k) inst.add(universe[rng() % universe.size()]);
    if (ck.test(inst, "random")) return ck.result;
  }
  return ck.result;
}

}  // namespace

OracleResult oracle_is_weakly_smart(const ExecutionPlan& plan, const AtomicQuery& q,
                                    const Catalog& catalog, const OracleBudget& budget) {
  return run(plan, q, catalog, budget, Kind::Weak);
}

OracleResult oracle_is_smart(const ExecutionPlan& plan, const AtomicQuery& q,
                             const Catalog& catalog, const OracleBudget& budget) {
  return run(plan, q, catalog, budget, Kind::Smart);
}

}  // namespace pathplan
