#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pathplan/model.hpp"

namespace pathplan {

// f(x, y1..yn) <- r1(x,y1), ..., rn(y(n-1), yn). outputs are 1-based and
// strictly increasing; the rest are existential.
struct PathFunction {
  std::string name;
  Skeleton skeleton;
  std::vector<int> outputs;

  int length() const { return static_cast<int>(skeleton.size()); }
  bool is_output(int position) const;
  friend bool operator==(const PathFunction&, const PathFunction&) = default;
};

// Throws Error(InvalidFunction) on an empty body or bad output list.
void validate_function(const PathFunction& f);

// A prefix of a catalog function, cut at an output position. Keeps the
// parent's outputs up to the cut so a filter can still address them.
// A whole function is also represented this way (prefix == parent length).
struct SubFunction {
  std::string name;
  std::string parent;
  int prefix = 0;
  Skeleton skeleton;
  std::vector<int> outputs;

  int length() const { return static_cast<int>(skeleton.size()); }
  bool is_output(int position) const;
  friend bool operator==(const SubFunction&, const SubFunction&) = default;
};

std::string sub_function_name(const PathFunction& parent, int prefix);

// One sub-function per output position, shortest first.
std::vector<SubFunction> derive_sub_functions(const PathFunction& f);

class Catalog {
 public:
  Catalog() = default;
  explicit Catalog(std::vector<PathFunction> functions);

  // Throws DuplicateName / InvalidFunction.
  void add(PathFunction f);

  const std::vector<PathFunction>& functions() const { return functions_; }
  bool empty() const { return functions_.empty(); }
  std::size_t size() const { return functions_.size(); }

  // All sub-functions of all functions, in catalog order.
  const std::vector<SubFunction>& closure() const { return closure_; }

  // Functions and sub-functions addressable by name in a plan.
  const SubFunction* find(const std::string& name) const;
  const PathFunction* find_function(const std::string& name) const;

  // The sub-function of `parent` cut at `prefix`, if that position is an output.
  const SubFunction* prefix_of(const std::string& parent, int prefix) const;

  std::vector<std::string> relations() const;  // sorted, unique
  int max_length() const;

 private:
  std::vector<PathFunction> functions_;
  std::vector<SubFunction> closure_;
  std::vector<SubFunction> extra_;  // whole functions whose last position is existential
  std::map<std::string, std::size_t> by_name_;
  std::map<std::string, std::pair<bool, std::size_t>> callables_;  // (extra?, index)
  void reindex();
};

}  // namespace pathplan
