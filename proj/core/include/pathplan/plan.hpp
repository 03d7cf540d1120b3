#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pathplan/catalog.hpp"
#include "pathplan/model.hpp"

namespace pathplan {

// f(input -> outputs...). `input` is either a constant or a variable bound by
// an earlier call; `outputs` has one entry per output position of `function`.
struct FunctionCall {
  std::string function;
  std::string input;
  std::vector<std::string> outputs;
  friend bool operator==(const FunctionCall&, const FunctionCall&) = default;
};

struct Filter {
  std::string variable;
  std::string constant;
  friend bool operator==(const Filter&, const Filter&) = default;
  friend auto operator<=>(const Filter&, const Filter&) = default;
};

struct ExecutionPlan {
  std::vector<FunctionCall> calls;
  std::vector<Filter> filters;
  std::string output;
  friend bool operator==(const ExecutionPlan&, const ExecutionPlan&) = default;
};

struct BoundaryFilter {
  int position = 0;
  std::string constant;
  friend bool operator==(const BoundaryFilter&, const BoundaryFilter&) = default;
  friend auto operator<=>(const BoundaryFilter&, const BoundaryFilter&) = default;
};

// A path query: atoms between boundaries 0..len, boundary 0 is the constant.
struct PathSemantics {
  Skeleton skeleton;
  std::vector<BoundaryFilter> filters;  // sorted by position
  int output = 0;
  std::string constant = "a";

  int length() const { return static_cast<int>(skeleton.size()); }
  std::vector<int> filter_positions() const;
  friend bool operator==(const PathSemantics&, const PathSemantics&) = default;
};

// True if `token` names a variable bound by some call of the plan.
bool is_plan_variable(const ExecutionPlan& plan, const std::string& token);

// Requires a chained plan: call 0 takes a constant, call i takes the last
// output of call i-1. Throws NotChained, NotPathShaped, UnknownFunction.
PathSemantics plan_semantics(const ExecutionPlan& plan, const Catalog& catalog);

// Cuts every call to the shortest sub-function covering the outputs the plan
// actually uses. Throws UnknownFunction, MissingSubFunction.
ExecutionPlan sub_function_transformation(const ExecutionPlan& plan,
                                          const Catalog& catalog);

ExecutionPlan without_filters(const ExecutionPlan& plan);

enum class Violation {
  NoInputA,
  OrphanCall,
  UnresolvedInput,
  NotChained,
  DuplicateVariable,
  UnknownFunction,
  OutputArity,
  BadFilter,
  BadOutput,
};
const char* to_string(Violation v);

std::vector<Violation> validate_plan(const ExecutionPlan& plan,
                                     const AtomicQuery& q,
                                     const Catalog& catalog);

// Builds the constraint-free chain over a sequence of callables: each call
// feeds its last output into the next one. Variables are v0, v1, ...
ExecutionPlan chain_plan(const std::vector<const SubFunction*>& calls,
                         const std::string& constant);

// Variable at 1-based position `pos` of call `i`, or "" if not an output.
std::string variable_at(const ExecutionPlan& plan, const Catalog& catalog,
                        std::size_t call, int pos);

std::string call_sequence(const ExecutionPlan& plan);  // "f,g,h"

}  // namespace pathplan
