#include "pathplan/characterize.hpp"

#include <algorithm>

namespace pathplan {

const char* to_string(SmartLevel level) {
  switch (level) {
    case SmartLevel::Smart: return "smart";
    case SmartLevel::WeaklySmartOnly: return "weaklySmartOnly";
    case SmartLevel::NotWeaklySmart: return "notWeaklySmart";
  }
  return "?";
}

namespace {

PathSemantics transformed_semantics(const ExecutionPlan& plan, const Catalog& catalog) {
  return plan_semantics(sub_function_transformation(plan, catalog), catalog);
}

bool foreign_filter(const PathSemantics& sem, const AtomicQuery& q) {
  return std::any_of(sem.filters.begin(), sem.filters.end(),
                     [&](const BoundaryFilter& f) { return f.constant != q.constant; });
}

bool weak_on(const PathSemantics& sem, const AtomicQuery& q) {
  if (foreign_filter(sem, q)) return false;
  return constrained_bounded(sem, q, false) || constrained_bounded(sem, q, true);
}

bool well_filtering_on(const PathSemantics& sem, const AtomicQuery& q) {
  if (foreign_filter(sem, q)) return false;
  auto is_a = [&](int b) {
    if (b == 0) return true;
    return std::any_of(sem.filters.begin(), sem.filters.end(),
                       [&](const BoundaryFilter& f) { return f.position == b; });
  };
  auto is_x = [&](int b) { return b == sem.output || (is_a(sem.output) && is_a(b)); };
  const Atom& r = q.relation;
  for (int b = 0; b < sem.length(); ++b) {
    const Atom& atom = sem.skeleton[static_cast<std::size_t>(b)];
    if (atom == r && is_a(b) && is_x(b + 1)) return true;
    if (atom == r.inverted() && is_x(b) && is_a(b + 1)) return true;
  }
  return false;
}

// exact smartness of the plan as written
std::optional<BoundedDecomposition> smart_core(const ExecutionPlan& plan, const AtomicQuery& q,
                                               const Catalog& catalog) {
  auto sem = transformed_semantics(plan, catalog);
  if (!well_filtering_on(sem, q)) return std::nullopt;
  return constrained_bounded(sem, q, false);
}

}  // namespace

bool is_weakly_smart(const ExecutionPlan& plan, const AtomicQuery& q, const Catalog& catalog) {
  return weak_on(transformed_semantics(plan, catalog), q);
}

bool is_well_filtering(const ExecutionPlan& plan, const AtomicQuery& q, const Catalog& catalog) {
  return well_filtering_on(transformed_semantics(plan, catalog), q);
}

ExecutionPlan minimal_filtering_plan(const ExecutionPlan& plan, const AtomicQuery& q,
                                     const Catalog& catalog) {
  ExecutionPlan bare = without_filters(plan);
  if (is_well_filtering(bare, q, catalog)) return bare;
  for (std::size_t i = bare.calls.size(); i-- > 0;) {
    const auto& outs = bare.calls[i].outputs;
    for (std::size_t j = outs.size(); j-- > 0;) {
      ExecutionPlan candidate = bare;
      candidate.filters.push_back({outs[j], q.constant});
      try {
        if (is_well_filtering(candidate, q, catalog)) return candidate;
      } catch (const Error&) {
        // filter makes the plan branch; not a path query, skip it
      }
    }
  }
  return bare;
}

Verdict is_smart(const ExecutionPlan& plan, const AtomicQuery& q, const Catalog& catalog) {
  Verdict v;
  auto sem = transformed_semantics(plan, catalog);
  bool weak = weak_on(sem, q);
  v.level = weak ? SmartLevel::WeaklySmartOnly : SmartLevel::NotWeaklySmart;

  if (foreign_filter(sem, q)) {
    v.reason = "filter on a constant other than " + q.constant;
    return v;
  }
  // the minimal filtering plan is smart whenever any filtering of the plan is
  if (!smart_core(minimal_filtering_plan(plan, q, catalog), q, catalog)) {
    v.reason = "minimal filtering plan is not smart";
    return v;
  }
  if (!well_filtering_on(sem, q)) {
    v.reason = "not well-filtering";
    return v;
  }
  auto d = constrained_bounded(sem, q, false);
  if (!d) {
    v.reason = "no bounded walk places the filters on a and the output on the answer";
    return v;
  }
  v.level = SmartLevel::Smart;
  v.decomposition = std::move(d);
  return v;
}

}  // namespace pathplan
