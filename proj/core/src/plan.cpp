#include "pathplan/plan.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pathplan {

const char* to_string(Violation v) {
  switch (v) {
    case Violation::NoInputA: return "NoInputA";
    case Violation::OrphanCall: return "OrphanCall";
    case Violation::UnresolvedInput: return "UnresolvedInput";
    case Violation::NotChained: return "NotChained";
    case Violation::DuplicateVariable: return "DuplicateVariable";
    case Violation::UnknownFunction: return "UnknownFunction";
    case Violation::OutputArity: return "OutputArity";
    case Violation::BadFilter: return "BadFilter";
    case Violation::BadOutput: return "BadOutput";
  }
  return "?";
}

std::vector<int> PathSemantics::filter_positions() const {
  std::vector<int> out;
  for (const auto& f : filters) out.push_back(f.position);
  return out;
}

bool is_plan_variable(const ExecutionPlan& plan, const std::string& token) {
  for (const auto& c : plan.calls)
    if (std::find(c.outputs.begin(), c.outputs.end(), token) != c.outputs.end()) return true;
  return false;
}

static const SubFunction& lookup(const Catalog& catalog, const std::string& name) {
  const SubFunction* f = catalog.find(name);
  if (!f) throw Error(ErrorCode::UnknownFunction, "unknown function '" + name + "'");
  return *f;
}

PathSemantics plan_semantics(const ExecutionPlan& plan, const Catalog& catalog) {
  if (plan.calls.empty()) throw Error(ErrorCode::NotChained, "plan has no calls");
  PathSemantics sem;
  std::map<std::string, int> boundary;
  std::set<std::string> consumed;
  int offset = 0;
  for (std::size_t i = 0; i < plan.calls.size(); ++i) {
    const auto& call = plan.calls[i];
    const auto& fn = lookup(catalog, call.function);
    if (call.outputs.size() != fn.outputs.size())
      throw Error(ErrorCode::NotPathShaped, call.function + ": wrong number of outputs");
    if (i == 0) {
      if (is_plan_variable(plan, call.input))
        throw Error(ErrorCode::NotChained, "first call must take the constant");
      sem.constant = call.input;
    } else {
      const auto& prev = plan.calls[i - 1];
      auto it = std::find(prev.outputs.begin(), prev.outputs.end(), call.input);
      if (it == prev.outputs.end())
        throw Error(ErrorCode::NotChained,
                    "call " + std::to_string(i) + " does not read the previous call");
      if (!consumed.insert(call.input).second)
        throw Error(ErrorCode::NotPathShaped, "variable consumed twice");
      if (boundary.at(call.input) != offset)
        throw Error(ErrorCode::NotPathShaped,
                    "call " + std::to_string(i) + " reads an inner variable");
    }
    for (std::size_t j = 0; j < call.outputs.size(); ++j) {
      if (!boundary.emplace(call.outputs[j], offset + fn.outputs[j]).second)
        throw Error(ErrorCode::NotPathShaped, "variable '" + call.outputs[j] + "' bound twice");
    }
    sem.skeleton.insert(sem.skeleton.end(), fn.skeleton.begin(), fn.skeleton.end());
    offset += fn.length();
  }
  auto out = boundary.find(plan.output);
  if (out == boundary.end())
    throw Error(ErrorCode::NotPathShaped, "output '" + plan.output + "' is not a plan variable");
  sem.output = out->second;
  for (const auto& f : plan.filters) {
    auto it = boundary.find(f.variable);
    if (it == boundary.end())
      throw Error(ErrorCode::NotPathShaped, "filter on unknown variable '" + f.variable + "'");
    sem.filters.push_back({it->second, f.constant});
  }
  std::sort(sem.filters.begin(), sem.filters.end());
  sem.filters.erase(std::unique(sem.filters.begin(), sem.filters.end()), sem.filters.end());
  return sem;
}

ExecutionPlan sub_function_transformation(const ExecutionPlan& plan, const Catalog& catalog) {
  std::set<std::string> used{plan.output};
  for (const auto& f : plan.filters) used.insert(f.variable);
  for (const auto& c : plan.calls) used.insert(c.input);

  ExecutionPlan out = plan;
  for (auto& call : out.calls) {
    const auto& fn = lookup(catalog, call.function);
    int last = 0;
    for (std::size_t j = 0; j < call.outputs.size() && j < fn.outputs.size(); ++j)
      if (used.count(call.outputs[j])) last = fn.outputs[j];
    if (last == 0) continue;  // orphan call, nothing to cut against
    const SubFunction* target = catalog.prefix_of(fn.parent, last);
    if (!target)
      throw Error(ErrorCode::MissingSubFunction,
                  "no sub-function of " + fn.parent + " at position " + std::to_string(last));
    call.function = target->name;
    call.outputs.resize(target->outputs.size());
  }
  return out;
}

ExecutionPlan without_filters(const ExecutionPlan& plan) {
  ExecutionPlan out = plan;
  out.filters.clear();
  return out;
}

std::vector<Violation> validate_plan(const ExecutionPlan& plan, const AtomicQuery& q,
                                     const Catalog& catalog) {
  std::vector<Violation> out;
  auto add = [&](Violation v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };

  bool uses_a = false;
  for (const auto& c : plan.calls)
    if (c.input == q.constant && !is_plan_variable(plan, c.input)) uses_a = true;
  if (!uses_a) add(Violation::NoInputA);

  std::set<std::string> bound, consumed;
  for (std::size_t i = 0; i < plan.calls.size(); ++i) {
    const auto& c = plan.calls[i];
    const SubFunction* fn = catalog.find(c.function);
    if (!fn) add(Violation::UnknownFunction);
    else if (fn->outputs.size() != c.outputs.size()) add(Violation::OutputArity);

    bool input_is_var = is_plan_variable(plan, c.input);
    if (input_is_var) {
      if (!bound.count(c.input)) add(Violation::UnresolvedInput);
      consumed.insert(c.input);
    } else if (c.input != q.constant && uses_a) {
      add(Violation::UnresolvedInput);
    }
    if (i == 0 ? input_is_var
               : std::find(plan.calls[i - 1].outputs.begin(), plan.calls[i - 1].outputs.end(),
                           c.input) == plan.calls[i - 1].outputs.end())
      add(Violation::NotChained);
    for (const auto& v : c.outputs)
      if (!bound.insert(v).second) add(Violation::DuplicateVariable);
  }

  std::set<std::string> filtered;
  for (const auto& f : plan.filters) {
    if (!bound.count(f.variable) || f.constant != q.constant) add(Violation::BadFilter);
    filtered.insert(f.variable);
  }
  if (!bound.count(plan.output)) add(Violation::BadOutput);

  for (const auto& c : plan.calls) {
    bool useful = false;
    for (const auto& v : c.outputs)
      if (v == plan.output || consumed.count(v) || filtered.count(v)) useful = true;
    if (!useful) add(Violation::OrphanCall);
  }
  return out;
}

ExecutionPlan chain_plan(const std::vector<const SubFunction*>& calls, const std::string& constant) {
  ExecutionPlan plan;
  int next = 0;
  std::string input = constant;
  for (const SubFunction* f : calls) {
    FunctionCall c{f->name, input, {}};
    for (std::size_t j = 0; j < f->outputs.size(); ++j) c.outputs.push_back("v" + std::to_string(next++));
    input = c.outputs.back();
    plan.calls.push_back(std::move(c));
  }
  plan.output = input;
  return plan;
}

std::string variable_at(const ExecutionPlan& plan, const Catalog& catalog, std::size_t call, int pos) {
  if (call >= plan.calls.size()) return "";
  const SubFunction* fn = catalog.find(plan.calls[call].function);
  if (!fn) return "";
  for (std::size_t j = 0; j < fn->outputs.size() && j < plan.calls[call].outputs.size(); ++j)
    if (fn->outputs[j] == pos) return plan.calls[call].outputs[j];
  return "";
}

std::string call_sequence(const ExecutionPlan& plan) {
  std::string out;
  for (std::size_t i = 0; i < plan.calls.size(); ++i) {
    if (i) out += ',';
    out += plan.calls[i].function;
  }
  return out;
}

}  // namespace pathplan
