#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "pathplan/catalog.hpp"
#include "pathplan/evaluate.hpp"
#include "pathplan/plan.hpp"

namespace pathplan {

// Instances tried, in order: the canonical instance, the frozen plan body,
// every subset of the canonical instance, every single merge of two of its
// constants, all instances up to max_facts facts over a 4-constant pool
// (stopping after max_exhaustive), and random_instances random ones.
struct OracleBudget {
  int max_facts = 6;
  std::size_t max_exhaustive = 20000;
  int random_instances = 200;
  std::uint64_t seed = 0x5eed;
};

struct OracleResult {
  bool holds = true;
  std::optional<Instance> witness;
  bool complete = true;  // false if the exhaustive layer was cut short
  std::size_t instances = 0;
  std::string layer;  // where the witness came from
};

// Weak smartness is read as: whenever q(I) and the filter-free plan are both
// nonempty, the plan returns at least one answer of q.
OracleResult oracle_is_weakly_smart(const ExecutionPlan& plan, const AtomicQuery& q,
                                    const Catalog& catalog, const OracleBudget& budget = {});

// Whenever the filter-free plan has a result, the plan returns exactly q(I).
OracleResult oracle_is_smart(const ExecutionPlan& plan, const AtomicQuery& q,
                             const Catalog& catalog, const OracleBudget& budget = {});

}  // namespace pathplan
