#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pathplan/catalog.hpp"
#include "pathplan/evaluate.hpp"
#include "pathplan/plan.hpp"

namespace pathplan {

class ParseError : public Error {
 public:
  ParseError(ErrorCode code, int line, int column, std::string expected, const std::string& what)
      : Error(code, what), line_(line), column_(column), expected_(std::move(expected)) {}
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& expected() const { return expected_; }

 private:
  int line_, column_;
  std::string expected_;
};

struct CatalogDocument {
  std::vector<PathFunction> functions;
  std::string source;
  Catalog catalog() const { return Catalog(functions); }
};

// name = atom . atom ... [| out 1 2 ...]   with # comments.
CatalogDocument parse_catalog(std::string_view text, std::string source = "<input>");
std::string serialize_catalog(const std::vector<PathFunction>& functions);

// rel(subject, object) per line.
Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& inst);

//   call NAME(INPUT -> v0, v1)
//   filter v0 = a
//   output v1
std::string serialize_plan(const ExecutionPlan& plan);
ExecutionPlan parse_plan(std::string_view text);
// several plans, each closed by its output line
std::vector<ExecutionPlan> parse_plans(std::string_view text);

// Throws UnknownFunction if a call names nothing in the catalog.
void resolve_plan(const ExecutionPlan& plan, const Catalog& catalog);

// JSON object {calls, filters, output, skeleton, verdictMetadata}.
std::string plan_record(const ExecutionPlan& plan, const Catalog& catalog,
                        const std::map<std::string, std::string>& metadata = {});

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace pathplan
