#include "pathplan/catalog.hpp"

#include <algorithm>
#include <set>

namespace pathplan {

bool PathFunction::is_output(int position) const {
  return std::binary_search(outputs.begin(), outputs.end(), position);
}

bool SubFunction::is_output(int position) const {
  return std::binary_search(outputs.begin(), outputs.end(), position);
}

void validate_function(const PathFunction& f) {
  if (!is_identifier(f.name))
    throw Error(ErrorCode::InvalidFunction, "bad function name '" + f.name + "'");
  if (f.skeleton.empty())
    throw Error(ErrorCode::InvalidFunction, f.name + ": empty body");
  if (f.outputs.empty())
    throw Error(ErrorCode::InvalidFunction, f.name + ": no output");
  for (std::size_t i = 0; i < f.outputs.size(); ++i) {
    int p = f.outputs[i];
    if (p < 1 || p > f.length())
      throw Error(ErrorCode::InvalidFunction, f.name + ": output position out of range");
    if (i && f.outputs[i - 1] >= p)
      throw Error(ErrorCode::InvalidFunction, f.name + ": outputs not strictly increasing");
  }
}

std::string sub_function_name(const PathFunction& parent, int prefix) {
  if (prefix == parent.length()) return parent.name;
  return parent.name + "@" + std::to_string(prefix);
}

std::vector<SubFunction> derive_sub_functions(const PathFunction& f) {
  std::vector<SubFunction> out;
  for (int p : f.outputs) {
    SubFunction s;
    s.name = sub_function_name(f, p);
    s.parent = f.name;
    s.prefix = p;
    s.skeleton = slice(f.skeleton, 0, static_cast<std::size_t>(p));
    for (int o : f.outputs)
      if (o <= p) s.outputs.push_back(o);
    out.push_back(std::move(s));
  }
  return out;
}

Catalog::Catalog(std::vector<PathFunction> functions) {
  for (auto& f : functions) add(std::move(f));
}

void Catalog::add(PathFunction f) {
  validate_function(f);
  if (by_name_.count(f.name))
    throw Error(ErrorCode::DuplicateName, "duplicate function name '" + f.name + "'");
  by_name_[f.name] = functions_.size();
  functions_.push_back(std::move(f));
  reindex();
}

void Catalog::reindex() {
  closure_.clear();
  extra_.clear();
  callables_.clear();
  for (const auto& f : functions_) {
    for (auto& s : derive_sub_functions(f)) closure_.push_back(std::move(s));
    if (!f.is_output(f.length())) {
      SubFunction whole{f.name, f.name, f.length(), f.skeleton, f.outputs};
      extra_.push_back(std::move(whole));
    }
  }
  for (std::size_t i = 0; i < closure_.size(); ++i)
    callables_.emplace(closure_[i].name, std::pair{false, i});
  for (std::size_t i = 0; i < extra_.size(); ++i)
    callables_.emplace(extra_[i].name, std::pair{true, i});
}

const SubFunction* Catalog::find(const std::string& name) const {
  auto it = callables_.find(name);
  if (it == callables_.end()) return nullptr;
  auto [extra, idx] = it->second;
  return extra ? &extra_[idx] : &closure_[idx];
}

const PathFunction* Catalog::find_function(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? nullptr : &functions_[it->second];
}

const SubFunction* Catalog::prefix_of(const std::string& parent, int prefix) const {
  for (const auto& s : closure_)
    if (s.parent == parent && s.prefix == prefix) return &s;
  return nullptr;
}

std::vector<std::string> Catalog::relations() const {
  std::set<std::string> rels;
  for (const auto& f : functions_)
    for (const auto& a : f.skeleton) rels.insert(a.relation);
  return {rels.begin(), rels.end()};
}

int Catalog::max_length() const {
  int k = 0;
  for (const auto& f : functions_) k = std::max(k, f.length());
  return k;
}

}  // namespace pathplan
