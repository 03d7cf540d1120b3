#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pathplan/catalog.hpp"
#include "pathplan/model.hpp"
#include "pathplan/plan.hpp"

namespace pathplan {

// One move of a walk over a base skeleton with positions 0..len(base).
// Forward from i reads base[i] and lands on i+1; backward from i reads
// base[i-1]^- and lands on i-1.
struct Step {
  bool forward = true;
  Atom emitted;
  int from = 0;
  int to = 0;
  friend bool operator==(const Step&, const Step&) = default;
};

struct WalkDecomposition {
  Skeleton base;
  std::vector<Step> steps;
  int start = 0;
  int end = 0;
};

// Walk that starts at len(base), emits `candidate` and stops at `target`.
// Backward moves are tried first; the answer is deterministic.
std::optional<WalkDecomposition> find_walk(const Skeleton& base, const Skeleton& candidate,
                                           int target);

// Generalised form: required[k] (if set) is the position the walk must be on
// after emitting k atoms; required has candidate.size()+1 entries.
std::optional<WalkDecomposition> find_constrained_walk(const Skeleton& base,
                                                       const Skeleton& candidate,
                                                       const std::vector<std::optional<int>>& required);

// skeleton = P.B (bounded) or r.P.B (loose), B a walk over r^-.P (resp. r^-.r.P).
struct BoundedDecomposition {
  Skeleton forward_path;  // P
  WalkDecomposition walk;
  bool loose = false;
};

// Bounded: the walk through r^-.P ends on position 0 (the r-answer of a).
std::optional<BoundedDecomposition> is_bounded(const PathSemantics& sem, const AtomicQuery& q);

// Bounded, or skeleton = r.P.B with the walk over r^-.r.P ending on
// position 2 (the first r-successor of a).
std::optional<BoundedDecomposition> is_loosely_bounded(const PathSemantics& sem,
                                                       const AtomicQuery& q);

// Same two tests, but honouring the output and filter boundaries of `sem`:
// output on the answer position, every a-filter on the position of a.
std::optional<BoundedDecomposition> constrained_bounded(const PathSemantics& sem,
                                                        const AtomicQuery& q, bool loose);

bool is_weakly_smart(const ExecutionPlan& plan, const AtomicQuery& q, const Catalog& catalog);

bool is_well_filtering(const ExecutionPlan& plan, const AtomicQuery& q, const Catalog& catalog);

// The plan without filters if that is already well-filtering, otherwise with one
// a-filter on the latest variable that makes it so. Filter-free if there is none.
ExecutionPlan minimal_filtering_plan(const ExecutionPlan& plan, const AtomicQuery& q,
                                     const Catalog& catalog);

enum class SmartLevel { Smart, WeaklySmartOnly, NotWeaklySmart };
const char* to_string(SmartLevel level);

struct Verdict {
  SmartLevel level = SmartLevel::NotWeaklySmart;
  std::optional<BoundedDecomposition> decomposition;
  std::string reason;
};

Verdict is_smart(const ExecutionPlan& plan, const AtomicQuery& q, const Catalog& catalog);

}  // namespace pathplan
