#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pathplan/catalog.hpp"
#include "pathplan/model.hpp"
#include "pathplan/plan.hpp"

namespace pathplan {

// Stored in forward orientation only: r^-(x,y) is kept as r(y,x).
struct Fact {
  std::string relation;
  std::string subject;
  std::string object;
  friend bool operator==(const Fact&, const Fact&) = default;
  friend auto operator<=>(const Fact&, const Fact&) = default;
};

class Instance {
 public:
  Instance() = default;
  explicit Instance(const std::vector<Fact>& facts);

  void add(const Fact& f);
  void add(const Atom& atom, const std::string& from, const std::string& to);

  const std::set<Fact>& facts() const { return facts_; }
  std::size_t size() const { return facts_.size(); }
  bool empty() const { return facts_.empty(); }

  // y with atom(from, y)
  const std::vector<std::string>& successors(const Atom& atom, const std::string& from) const;

  std::set<std::string> constants() const;
  std::string str() const;  // one fact per line, sorted

  friend bool operator==(const Instance& a, const Instance& b) { return a.facts_ == b.facts_; }

 private:
  std::set<Fact> facts_;
  // key: relation + '\x1f' + constant
  std::map<std::string, std::vector<std::string>> fwd_, bwd_;
};

using Row = std::vector<std::optional<std::string>>;

struct CallResult {
  std::set<Row> rows;  // one entry per output position of the function
};

enum class CallMode { Standard, OptionalEdge };

// Constants at the end of `skeleton` reachable from `start`; each filter pins
// a boundary to a constant.
std::set<std::string> eval_path_query(const Skeleton& skeleton, const std::string& start,
                                      const std::vector<BoundaryFilter>& filters,
                                      const Instance& inst);

// Answers of a path query at its output boundary.
std::set<std::string> eval_semantics(const PathSemantics& sem, const Instance& inst);

// Standard: one row per full embedding. OptionalEdge: one row per maximal
// partial embedding of length >= 1, positions past the match are null.
CallResult call_function(const SubFunction& f, const std::string& input, const Instance& inst,
                         CallMode mode);

// Calls whose input is null are not made and yield nulls. Filters are applied
// to the finished rows; null never passes a filter.
std::set<std::string> eval_plan(const ExecutionPlan& plan, const Catalog& catalog,
                                const Instance& inst, CallMode mode);

std::set<std::string> eval_query(const AtomicQuery& q, const Instance& inst);

// {r(a, c0)} plus a fresh-constant copy of the path: the r-answer c0 and the
// plan's answers on this instance decide weak smartness.
Instance canonical_weak_database(const PathSemantics& sem, const AtomicQuery& q);

}  // namespace pathplan
