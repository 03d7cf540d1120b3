#include "pathplan/engine.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "pathplan/characterize.hpp"

namespace pathplan {

namespace {

std::vector<const SubFunction*> pointers(const FunctionSet& fs, const std::vector<int>& idx) {
  std::vector<const SubFunction*> out;
  for (int i : idx) out.push_back(&fs[static_cast<std::size_t>(i)]);
  return out;
}

std::vector<const SubFunction*> called(const ExecutionPlan& plan, const Catalog& catalog) {
  std::vector<const SubFunction*> out;
  for (const auto& c : plan.calls) {
    const SubFunction* f = catalog.find(c.function);
    if (!f) throw Error(ErrorCode::UnknownFunction, "unknown function '" + c.function + "'");
    out.push_back(f);
  }
  return out;
}

bool single_atom(const SubFunction& f, const Atom& a) {
  return f.skeleton.size() == 1 && f.skeleton[0] == a;
}

std::string plan_key(const ExecutionPlan& p) {
  std::string s = call_sequence(p) + "|" + p.output;
  for (const auto& f : p.filters) s += "|" + f.variable + "=" + f.constant;
  return s;
}

// smallest first: a short witness turns up early
template <class F>
void for_each_proper_subsequence(std::size_t n, F&& f) {
  if (n == 0 || n > 20) return;
  for (std::size_t k = 1; k < n; ++k) {
    std::uint32_t mask = (1u << k) - 1;
    const std::uint32_t limit = 1u << n;
    while (mask < limit) {
      if (f(mask)) return;
      std::uint32_t low = mask & -mask, ripple = mask + low;  // next mask with k bits
      mask = ripple | (((mask ^ ripple) >> 2) / low);
    }
  }
}

void check_catalog(const Catalog& catalog) {
  if (catalog.empty()) throw Error(ErrorCode::EmptyCatalog, "catalog has no functions");
}

}  // namespace

namespace {

// verdicts on call sequences, shared by the checks of one enumeration
using Memo = std::map<std::vector<const SubFunction*>, bool>;

template <class F>
bool memo(Memo* m, const std::vector<const SubFunction*>& calls, F&& f) {
  if (!m) return f();
  auto it = m->find(calls);
  if (it != m->end()) return it->second;
  bool v = f();
  m->emplace(calls, v);
  return v;
}

bool weak_subsequence(const std::vector<const SubFunction*>& calls, const AtomicQuery& q,
                      const Catalog& catalog, Memo* m) {
  bool found = false;
  for_each_proper_subsequence(calls.size(), [&](std::uint32_t mask) {
    std::vector<const SubFunction*> sub;
    for (std::size_t i = 0; i < calls.size(); ++i)
      if (mask & (1u << i)) sub.push_back(calls[i]);
    found = memo(m, sub, [&] { return is_weakly_smart(chain_plan(sub, q.constant), q, catalog); });
    return found;
  });
  return found;
}

}  // namespace

bool has_weak_subsequence(const std::vector<const SubFunction*>& calls, const AtomicQuery& q,
                          const Catalog& catalog) {
  return weak_subsequence(calls, q, catalog, nullptr);
}

// Some output choice over the calls, with its minimal filter, is smart.
static bool smart_able(const std::vector<const SubFunction*>& calls, const AtomicQuery& q,
                       const Catalog& catalog) {
  ExecutionPlan base = chain_plan(calls, q.constant);
  std::vector<std::string> outs{base.output};
  const auto& last = base.calls.back();
  const SubFunction* lf = calls.back();
  for (std::size_t j = 0; j < lf->outputs.size(); ++j)
    if (lf->outputs[j] == lf->length() - 1) outs.push_back(last.outputs[j]);
  if (base.calls.size() >= 2) outs.push_back(last.input);
  for (const auto& o : outs) {
    ExecutionPlan p = base;
    p.output = o;
    if (is_smart(minimal_filtering_plan(p, q, catalog), q, catalog).level == SmartLevel::Smart) return true;
  }
  return false;
}

// A call may hand on any of its outputs, so a kept call can be any
// sub-function of the same parent.
static bool smart_subsequence(const ExecutionPlan& plan, const AtomicQuery& q, const Catalog& catalog,
                              Memo* m) {
  auto calls = called(plan, catalog);
  std::vector<std::vector<const SubFunction*>> variants;
  for (const SubFunction* f : calls) {
    variants.emplace_back();
    for (const auto& g : catalog.closure())
      if (g.parent == f->parent) variants.back().push_back(&g);
    if (variants.back().empty()) variants.back().push_back(f);
  }
  bool found = false;
  for_each_proper_subsequence(calls.size(), [&](std::uint32_t mask) {
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < calls.size(); ++i)
      if (mask & (1u << i)) kept.push_back(i);
    std::vector<const SubFunction*> sub(kept.size());
    std::function<void(std::size_t)> pick = [&](std::size_t k) {
      if (found) return;
      if (k == kept.size()) {
        found = memo(m, sub, [&] { return smart_able(sub, q, catalog); });
        return;
      }
      for (const SubFunction* g : variants[kept[k]]) {
        sub[k] = g;
        pick(k + 1);
        if (found) return;
      }
    };
    pick(0);
    return found;
  });
  return found;
}

bool has_smart_subsequence(const ExecutionPlan& plan, const AtomicQuery& q, const Catalog& catalog) {
  return smart_subsequence(plan, q, catalog, nullptr);
}

void enumerate_minimal_weakly_smart(const AtomicQuery& q, const Catalog& catalog, const PlanSink& sink,
                                    const SearchOptions& opts, SearchStats* stats) {
  check_catalog(catalog);
  const FunctionSet& fs = catalog.closure();
  SearchStats local;
  std::set<std::string> seen;
  std::size_t emitted = 0;
  bool stop = false;
  Memo verdicts;

  auto offer = [&](const std::vector<int>& fns, const PlanAssembly& pa) {
    auto calls = pointers(fs, fns);
    ExecutionPlan plan = chain_plan(calls, q.constant);
    if (!seen.insert(call_sequence(plan)).second) return;
    auto sem = plan_semantics(plan, catalog);
    if (!is_loosely_bounded(sem, q)) {
      ++local.rejected;
      return;
    }
    if (weak_subsequence(calls, q, catalog, &verdicts)) return;
    FoundPlan fp{plan, !is_bounded(sem, q).has_value(), pa};
    if (!sink(fp) || ++emitted >= opts.max_plans) stop = true;
  };

  for (std::size_t i = 0; i < fs.size() && !stop; ++i)
    if (single_atom(fs[i], q.relation)) {
      PlanAssembly pa;
      pa.functions = {static_cast<int>(i)};
      pa.start_nodes = {1};
      pa.end_nodes = {0};
      pa.top = 1;
      offer(pa.functions, pa);
    }

  for (bool loose : {false, true}) {
    if (stop) break;
    ScanConfig cfg;
    cfg.loose = loose;
    cfg.options = opts;
    scan_plans(q, fs, cfg,
               [&](const PlanAssembly& pa) {
                 offer(pa.functions, pa);
                 return !stop;
               },
               local);
  }
  if (stats) stats->merge(local);
}

std::vector<FoundPlan> enumerate_minimal_weakly_smart(const AtomicQuery& q, const Catalog& catalog,
                                                      const SearchOptions& opts, SearchStats* stats) {
  std::vector<FoundPlan> out;
  enumerate_minimal_weakly_smart(
      q, catalog, [&](const FoundPlan& p) { out.push_back(p); return true; }, opts, stats);
  return out;
}

std::optional<ExecutionPlan> find_one_weakly_smart(const AtomicQuery& q, const Catalog& catalog,
                                                   const SearchOptions& opts, SearchStats* stats) {
  check_catalog(catalog);
  const FunctionSet& fs = catalog.closure();
  for (const auto& f : fs)
    if (single_atom(f, q.relation)) return chain_plan({&f}, q.constant);

  SearchStats local;
  std::optional<ExecutionPlan> found;
  for (bool loose : {false, true}) {
    if (found || local.timed_out) break;
    ScanConfig cfg;
    cfg.loose = loose;
    cfg.single_plan = true;
    cfg.options = opts;
    scan_plans(q, fs, cfg,
               [&](const PlanAssembly& pa) {
                 ExecutionPlan plan = chain_plan(pointers(fs, pa.functions), q.constant);
                 if (!is_weakly_smart(plan, q, catalog)) {
                   ++local.rejected;
                   return true;
                 }
                 found = std::move(plan);
                 return false;
               },
               local);
  }
  if (stats) stats->merge(local);
  if (!found) return std::nullopt;
  return minimize_plan(*found, q, catalog);
}

namespace {

// Smart candidates built on top of a bounded plan W (the last call of W ends
// with r on the r-answer of a).
template <class Emit>
bool smart_candidates(const std::vector<int>& fns, const FunctionSet& fs, const AtomicQuery& q,
                      Emit&& emit) {
  auto calls = pointers(fs, fns);
  const SubFunction& last = *calls.back();
  const Atom& r = q.relation;

  // filter the variable before the final r
  if (last.skeleton.back() == r) {
    ExecutionPlan p = chain_plan(calls, q.constant);
    const auto& lc = p.calls.back();
    std::string var;
    if (last.length() >= 2) {
      for (std::size_t j = 0; j < last.outputs.size(); ++j)
        if (last.outputs[j] == last.length() - 1) var = lc.outputs[j];
    } else if (p.calls.size() >= 2) {
      var = lc.input;
    }
    bool trivial = last.length() == 1 && p.calls.size() == 1;
    if (!var.empty() || trivial) {
      if (!var.empty()) p.filters.push_back({var, q.constant});
      if (!emit(std::move(p))) return false;
    }

    // last call continues with r^- back to a
    for (const auto& g : fs) {
      if (g.parent != last.parent || g.prefix != last.prefix + 1 || g.skeleton.back() != r.inverted())
        continue;
      auto ext = calls;
      ext.back() = &g;
      ExecutionPlan pg = chain_plan(ext, q.constant);
      const auto& gc = pg.calls.back();
      std::string out, tail;
      for (std::size_t j = 0; j < g.outputs.size(); ++j) {
        if (g.outputs[j] == last.length()) out = gc.outputs[j];
        if (g.outputs[j] == g.length()) tail = gc.outputs[j];
      }
      if (out.empty() || tail.empty()) continue;
      pg.output = out;
      pg.filters.push_back({tail, q.constant});
      if (!emit(std::move(pg))) return false;
    }
  }

  // an extra call r^- whose answer must be a
  for (const auto& f : fs) {
    if (!single_atom(f, r.inverted())) continue;
    auto ext = calls;
    ext.push_back(&f);
    ExecutionPlan p = chain_plan(ext, q.constant);
    p.output = p.calls.back().input;
    p.filters.push_back({p.calls.back().outputs.back(), q.constant});
    if (!emit(std::move(p))) return false;
  }
  return true;
}

}  // namespace

void enumerate_minimal_smart(const AtomicQuery& q, const Catalog& catalog, const PlanSink& sink,
                             const SearchOptions& opts, SearchStats* stats) {
  check_catalog(catalog);
  const FunctionSet& fs = catalog.closure();
  SearchStats local;
  std::set<std::string> seen;
  std::size_t emitted = 0;
  bool stop = false;
  Memo verdicts;

  auto emit = [&](ExecutionPlan p) {
    if (!seen.insert(plan_key(p)).second) return true;
    // cheaper with the shared verdicts, and most candidates fail here
    if (smart_subsequence(p, q, catalog, &verdicts)) return true;
    if (is_smart(p, q, catalog).level != SmartLevel::Smart) {
      ++local.rejected;
      return true;
    }
    FoundPlan fp;
    fp.plan = std::move(p);
    if (!sink(fp) || ++emitted >= opts.max_plans) stop = true;
    return !stop;
  };

  for (std::size_t i = 0; i < fs.size() && !stop; ++i)
    if (single_atom(fs[i], q.relation)) emit(chain_plan({&fs[i]}, q.constant));

  if (!stop) {
    ScanConfig cfg;
    cfg.options = opts;
    scan_plans(q, fs, cfg,
               [&](const PlanAssembly& pa) { return smart_candidates(pa.functions, fs, q, emit); }, local);
  }
  if (stats) stats->merge(local);
}

std::vector<FoundPlan> enumerate_minimal_smart(const AtomicQuery& q, const Catalog& catalog,
                                               const SearchOptions& opts, SearchStats* stats) {
  std::vector<FoundPlan> out;
  enumerate_minimal_smart(
      q, catalog, [&](const FoundPlan& p) { out.push_back(p); return true; }, opts, stats);
  return out;
}

std::optional<ExecutionPlan> find_one_smart(const AtomicQuery& q, const Catalog& catalog,
                                            const SearchOptions& opts, SearchStats* stats) {
  check_catalog(catalog);
  const FunctionSet& fs = catalog.closure();
  for (const auto& f : fs)
    if (single_atom(f, q.relation)) return chain_plan({&f}, q.constant);

  SearchStats local;
  std::optional<ExecutionPlan> found;
  ScanConfig cfg;
  cfg.single_plan = true;
  cfg.options = opts;
  scan_plans(q, fs, cfg,
             [&](const PlanAssembly& pa) {
               return smart_candidates(pa.functions, fs, q, [&](ExecutionPlan p) {
                 if (is_smart(p, q, catalog).level != SmartLevel::Smart) {
                   ++local.rejected;
                   return true;
                 }
                 found = std::move(p);
                 return false;
               });
             },
             local);
  if (stats) stats->merge(local);
  return found;
}

std::vector<ExecutionPlan> susie_plans(const AtomicQuery& q, const Catalog& catalog) {
  const FunctionSet& fs = catalog.closure();
  std::vector<ExecutionPlan> out;
  std::set<std::string> seen;
  auto push = [&](ExecutionPlan p) {
    if (seen.insert(plan_key(p)).second) out.push_back(std::move(p));
  };

  for (const auto& f : fs) {
    if (f.skeleton.back() != q.relation) continue;
    const int n = f.length() - 1;
    if (n == 0) {
      push(chain_plan({&f}, q.constant));
      continue;
    }
    if (!f.is_output(n)) continue;
    // chains of functions reading exactly f[0..n)^-
    const Skeleton back = reverse(slice(f.skeleton, 0, static_cast<std::size_t>(n)));
    std::vector<const SubFunction*> chain;
    std::function<void(std::size_t)> extend = [&](std::size_t at) {
      if (at == back.size()) {
        auto calls = chain;
        calls.push_back(&f);
        ExecutionPlan p = chain_plan(calls, q.constant);
        const auto& lc = p.calls.back();
        for (std::size_t j = 0; j < f.outputs.size(); ++j)
          if (f.outputs[j] == n) p.filters.push_back({lc.outputs[j], q.constant});
        push(std::move(p));
        return;
      }
      for (const auto& g : fs) {
        if (at + g.skeleton.size() > back.size()) continue;
        if (!std::equal(g.skeleton.begin(), g.skeleton.end(), back.begin() + static_cast<long>(at))) continue;
        chain.push_back(&g);
        extend(at + g.skeleton.size());
        chain.pop_back();
      }
    };
    extend(0);
  }
  return out;
}

ExecutionPlan minimize_plan(const ExecutionPlan& plan, const AtomicQuery& q, const Catalog& catalog) {
  ExecutionPlan bare = sub_function_transformation(without_filters(plan), catalog);
  if (!is_weakly_smart(bare, q, catalog))
    throw Error(ErrorCode::NotWeaklySmart, "plan is not weakly smart");
  auto calls = called(bare, catalog);
  const std::size_t n = calls.size();
  // smallest sub-sequences first, so the first hit is minimal
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::size_t> pick;
    std::optional<ExecutionPlan> hit;
    std::function<void(std::size_t)> choose = [&](std::size_t from) {
      if (hit) return;
      if (pick.size() == k) {
        std::vector<const SubFunction*> sub;
        for (auto i : pick) sub.push_back(calls[i]);
        ExecutionPlan p = chain_plan(sub, q.constant);
        if (is_weakly_smart(p, q, catalog)) hit = std::move(p);
        return;
      }
      for (std::size_t i = from; i < n && !hit; ++i) {
        pick.push_back(i);
        choose(i + 1);
        pick.pop_back();
      }
    };
    choose(0);
    if (hit) return *hit;
  }
  return bare;
}

bool has_trivial_equivalent_rewriting(const AtomicQuery& q, const Catalog& catalog) {
  for (const auto& f : catalog.closure())
    if (single_atom(f, q.relation)) return true;
  return false;
}

BoundEstimate bound_estimate(std::size_t functions, int max_length) {
  BoundEstimate b;
  b.functions = functions;
  b.max_length = max_length;
  if (functions == 0) return b;
  const int e = 2 * max_length;
  b.log10_m = e * std::log10(static_cast<double>(functions));
  long double m = std::pow(static_cast<long double>(functions), e);
  if (b.log10_m < 19.0) {
    std::uint64_t v = 1;
    for (int i = 0; i < e; ++i) v *= functions;
    b.m = v;
  }
  b.factorial_digits = std::floor(static_cast<double>(std::lgamma(m + 1.0L) / std::log(10.0L))) + 1.0;
  return b;
}

BoundEstimate bound_estimate(const Catalog& catalog) {
  return bound_estimate(catalog.size(), catalog.max_length());
}

}  // namespace pathplan
