#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pathplan/catalog.hpp"
#include "pathplan/plan.hpp"
#include "pathplan/search.hpp"

namespace pathplan {

struct FoundPlan {
  ExecutionPlan plan;
  bool loose = false;  // only loosely bounded (weakly smart through the first r-successor)
  PlanAssembly assembly;
};

using PlanSink = std::function<bool(const FoundPlan&)>;  // false stops the stream

// Every minimal weakly smart plan over the catalog's sub-functions, each
// once. Throws EmptyCatalog.
void enumerate_minimal_weakly_smart(const AtomicQuery& q, const Catalog& catalog, const PlanSink& sink,
                                    const SearchOptions& opts = {}, SearchStats* stats = nullptr);
std::vector<FoundPlan> enumerate_minimal_weakly_smart(const AtomicQuery& q, const Catalog& catalog,
                                                      const SearchOptions& opts = {},
                                                      SearchStats* stats = nullptr);

// Single-plan mode: states are never revisited. The plan returned is cut
// down to a minimal one.
std::optional<ExecutionPlan> find_one_weakly_smart(const AtomicQuery& q, const Catalog& catalog,
                                                   const SearchOptions& opts = {},
                                                   SearchStats* stats = nullptr);

void enumerate_minimal_smart(const AtomicQuery& q, const Catalog& catalog, const PlanSink& sink,
                             const SearchOptions& opts = {}, SearchStats* stats = nullptr);
std::vector<FoundPlan> enumerate_minimal_smart(const AtomicQuery& q, const Catalog& catalog,
                                               const SearchOptions& opts = {},
                                               SearchStats* stats = nullptr);

std::optional<ExecutionPlan> find_one_smart(const AtomicQuery& q, const Catalog& catalog,
                                            const SearchOptions& opts = {},
                                            SearchStats* stats = nullptr);

// Plans of the form F.F^-.r: a chain reading back to a, then the function
// that walks out again and ends with r, filtered on a.
std::vector<ExecutionPlan> susie_plans(const AtomicQuery& q, const Catalog& catalog);

// Shortest weakly smart sub-sequence of the plan's calls (filters dropped).
// Throws NotWeaklySmart.
ExecutionPlan minimize_plan(const ExecutionPlan& plan, const AtomicQuery& q, const Catalog& catalog);

bool has_trivial_equivalent_rewriting(const AtomicQuery& q, const Catalog& catalog);

// M = |catalog|^(2k); the number of minimal plans is at most M!.
struct BoundEstimate {
  std::size_t functions = 0;
  int max_length = 0;
  std::optional<std::uint64_t> m;  // empty if it does not fit 64 bits
  double log10_m = 0;
  double factorial_digits = 0;  // decimal digits of M!
};
BoundEstimate bound_estimate(const Catalog& catalog);
BoundEstimate bound_estimate(std::size_t functions, int max_length);

// Is some proper call sub-sequence weakly smart / smart-able? For smart
// plans a kept call may be cut to another output of the same function.
bool has_weak_subsequence(const std::vector<const SubFunction*>& calls, const AtomicQuery& q,
                          const Catalog& catalog);
bool has_smart_subsequence(const ExecutionPlan& plan, const AtomicQuery& q, const Catalog& catalog);

}  // namespace pathplan
