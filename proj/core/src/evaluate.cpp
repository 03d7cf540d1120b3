#include "pathplan/evaluate.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace pathplan {

namespace {
std::string key(const std::string& rel, const std::string& c) { return rel + '\x1f' + c; }
const std::vector<std::string> kNone;
}  // namespace

Instance::Instance(const std::vector<Fact>& facts) {
  for (const auto& f : facts) add(f);
}

void Instance::add(const Fact& f) {
  if (!facts_.insert(f).second) return;
  fwd_[key(f.relation, f.subject)].push_back(f.object);
  bwd_[key(f.relation, f.object)].push_back(f.subject);
}

void Instance::add(const Atom& atom, const std::string& from, const std::string& to) {
  if (atom.inverse) add(Fact{atom.relation, to, from});
  else add(Fact{atom.relation, from, to});
}

const std::vector<std::string>& Instance::successors(const Atom& atom, const std::string& from) const {
  const auto& index = atom.inverse ? bwd_ : fwd_;
  auto it = index.find(key(atom.relation, from));
  return it == index.end() ? kNone : it->second;
}

std::set<std::string> Instance::constants() const {
  std::set<std::string> out;
  for (const auto& f : facts_) {
    out.insert(f.subject);
    out.insert(f.object);
  }
  return out;
}

std::string Instance::str() const {
  std::string out;
  for (const auto& f : facts_) out += f.relation + "(" + f.subject + ", " + f.object + ")\n";
  return out;
}

std::set<std::string> eval_path_query(const Skeleton& skeleton, const std::string& start,
                                      const std::vector<BoundaryFilter>& filters,
                                      const Instance& inst) {
  PathSemantics sem;
  sem.skeleton = skeleton;
  sem.filters = filters;
  sem.output = static_cast<int>(skeleton.size());
  sem.constant = start;
  return eval_semantics(sem, inst);
}

std::set<std::string> eval_semantics(const PathSemantics& sem, const Instance& inst) {
  // (value at the output boundary, value at the current boundary)
  using Pair = std::pair<std::string, std::string>;
  auto pinned = [&](int b, const std::string& v) {
    for (const auto& f : sem.filters)
      if (f.position == b && f.constant != v) return false;
    return true;
  };
  std::set<Pair> frontier;
  if (pinned(0, sem.constant)) frontier.insert({sem.output == 0 ? sem.constant : "", sem.constant});
  for (int b = 0; b < sem.length() && !frontier.empty(); ++b) {
    std::set<Pair> next;
    const Atom& atom = sem.skeleton[static_cast<std::size_t>(b)];
    for (const auto& [out, cur] : frontier) {
      for (const auto& y : inst.successors(atom, cur)) {
        if (!pinned(b + 1, y)) continue;
        next.insert({b + 1 == sem.output ? y : out, y});
      }
    }
    frontier = std::move(next);
  }
  std::set<std::string> result;
  for (const auto& p : frontier) result.insert(p.first);
  return result;
}

CallResult call_function(const SubFunction& f, const std::string& input, const Instance& inst,
                         CallMode mode) {
  CallResult res;
  const int n = f.length();
  std::vector<std::string> path{input};
  auto emit = [&](int matched) {
    Row row;
    for (int p : f.outputs) {
      if (p <= matched) row.push_back(path[static_cast<std::size_t>(p)]);
      else row.push_back(std::nullopt);
    }
    res.rows.insert(std::move(row));
  };
  std::function<void(int)> dfs = [&](int k) {
    if (k == n) {
      emit(n);
      return;
    }
    const auto& next = inst.successors(f.skeleton[static_cast<std::size_t>(k)], path.back());
    if (next.empty()) {
      if (mode == CallMode::OptionalEdge && k >= 1) emit(k);
      return;
    }
    for (const auto& y : next) {
      path.push_back(y);
      dfs(k + 1);
      path.pop_back();
    }
  };
  dfs(0);
  return res;
}

std::set<std::string> eval_plan(const ExecutionPlan& plan, const Catalog& catalog,
                                const Instance& inst, CallMode mode) {
  std::map<std::string, std::size_t> slot;
  for (const auto& c : plan.calls)
    for (const auto& v : c.outputs) slot.emplace(v, slot.size());

  std::vector<Row> rows{Row(slot.size())};
  for (const auto& call : plan.calls) {
    const SubFunction* fn = catalog.find(call.function);
    if (!fn) throw Error(ErrorCode::UnknownFunction, "unknown function '" + call.function + "'");
    auto in = slot.find(call.input);
    std::map<std::string, CallResult> cache;
    std::vector<Row> next;
    for (auto& row : rows) {
      std::optional<std::string> input =
          in == slot.end() ? std::optional<std::string>(call.input) : row[in->second];
      if (!input) {
        next.push_back(row);  // call not made, outputs stay null
        continue;
      }
      auto it = cache.find(*input);
      if (it == cache.end()) it = cache.emplace(*input, call_function(*fn, *input, inst, mode)).first;
      for (const auto& r : it->second.rows) {
        Row extended = row;
        for (std::size_t j = 0; j < r.size() && j < call.outputs.size(); ++j)
          extended[slot.at(call.outputs[j])] = r[j];
        next.push_back(std::move(extended));
      }
    }
    rows = std::move(next);
    if (rows.empty()) break;
  }

  std::set<std::string> result;
  auto out = slot.find(plan.output);
  if (out == slot.end()) return result;
  for (const auto& row : rows) {
    bool pass = true;
    for (const auto& f : plan.filters) {
      auto s = slot.find(f.variable);
      if (s == slot.end() || row[s->second] != f.constant) pass = false;
    }
    if (pass && row[out->second]) result.insert(*row[out->second]);
  }
  return result;
}

std::set<std::string> eval_query(const AtomicQuery& q, const Instance& inst) {
  const auto& s = inst.successors(q.relation, q.constant);
  return {s.begin(), s.end()};
}

Instance canonical_weak_database(const PathSemantics& sem, const AtomicQuery& q) {
  Instance inst;
  inst.add(q.relation, q.constant, "_c0");
  std::string prev = q.constant;
  for (int i = 0; i < sem.length(); ++i) {
    std::string cur = "_p" + std::to_string(i + 1);
    inst.add(sem.skeleton[static_cast<std::size_t>(i)], prev, cur);
    prev = cur;
  }
  return inst;
}

}  // namespace pathplan
