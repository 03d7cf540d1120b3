#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pathplan/catalog.hpp"
#include "pathplan/plan.hpp"

namespace pathplan {

enum class Direction { Forward, Backward };

// A function laid over the current edge of the forward path. `index` is
// 1-based: forward members read atom index, backward members read its inverse.
struct PositionedFunction {
  int function = 0;  // index into the function set
  int index = 1;
  Direction direction = Direction::Forward;
  bool designated = false;
  friend bool operator==(const PositionedFunction&, const PositionedFunction&) = default;
  friend auto operator<=>(const PositionedFunction&, const PositionedFunction&) = default;
};

struct SearchState {
  std::vector<PositionedFunction> members;  // kept sorted
  void normalize();
  friend bool operator==(const SearchState&, const SearchState&) = default;
};

using FunctionSet = std::vector<SubFunction>;

// Every member reads the same relation atom as the designated one.
bool state_consistent(const SearchState& s, const FunctionSet& fs);

struct Successors {
  SearchState advanced;
  int starts = 0;
  int ends = 0;
  bool designated_ended = false;
};

// One step up the forward path: forward members move on or end, backward
// members move down or start.
Successors search_successors(const SearchState& s, const FunctionSet& fs);

struct SearchOptions {
  std::size_t max_plans = 10000;
  int max_depth = 64;  // longest forward path explored
  std::optional<std::chrono::milliseconds> timeout;
};

struct SearchStats {
  std::size_t states = 0;         // distinct states entered at positions >= 1
  std::size_t blocked = 0;        // expansions cut because the state was seen
  std::size_t max_history = 0;    // deepest history stack
  std::size_t history_repeats = 0;  // must stay 0
  std::size_t rejected = 0;       // assembled plans that failed re-checking
  bool timed_out = false;
  bool truncated = false;         // max_plans reached
  void merge(const SearchStats& o);
};

// Where each call of an assembled plan starts and ends on the forward path.
struct PlanAssembly {
  std::vector<int> functions;  // indices into the function set, call order
  std::vector<int> start_nodes;
  std::vector<int> end_nodes;
  bool loose = false;
  int top = 0;  // last node of the forward path
};

struct ScanConfig {
  bool loose = false;       // final call ends on the first r-successor of a
  bool single_plan = false; // history is never popped; stop at the first plan
  // which functions may be the final call (null = any)
  std::function<bool(int)> final_ok;
  SearchOptions options;
};

// Scans forward paths bottom-up and reports every plan whose skeleton is a
// bounded (or, with loose, loosely bounded) walk. The sink returns false to
// stop the scan.
void scan_plans(const AtomicQuery& q, const FunctionSet& fs, const ScanConfig& cfg,
                const std::function<bool(const PlanAssembly&)>& sink, SearchStats& stats);

}  // namespace pathplan
