#include "pathplan/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace pathplan {

namespace {

bool space(char c) { return c == ' ' || c == '\t' || c == '\r'; }
bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool const_char(char c) {
  return !space(c) && c != '(' && c != ')' && c != ',' && c != '#' && c != '\n';
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i <= text.size()) {
    auto nl = text.find('\n', i);
    if (nl == std::string_view::npos) nl = text.size();
    out.push_back(text.substr(i, nl - i));
    i = nl + 1;
  }
  return out;
}

// One line being parsed. Columns are 1-based.
struct Cursor {
  std::string_view s;
  int line;
  std::size_t i = 0;

  Cursor(std::string_view text, int ln) : s(text), line(ln) {
    auto hash = s.find('#');
    if (hash != std::string_view::npos) s = s.substr(0, hash);
  }
  void ws() {
    while (i < s.size() && space(s[i])) ++i;
  }
  bool eof() {
    ws();
    return i >= s.size();
  }
  bool blank() {
    std::size_t j = 0;
    while (j < s.size() && space(s[j])) ++j;
    return j >= s.size();
  }
  int col() const { return static_cast<int>(i) + 1; }
  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(ErrorCode::SyntaxError, line, col(), expected,
                     "line " + std::to_string(line) + ", column " + std::to_string(col()) +
                         ": expected " + expected);
  }
  void expect(char c, const std::string& what) {
    ws();
    if (i >= s.size() || s[i] != c) fail(what);
    ++i;
  }
  bool accept(std::string_view tok) {
    ws();
    if (s.substr(i, tok.size()) == tok) {
      i += tok.size();
      return true;
    }
    return false;
  }
  std::string ident(const std::string& what) {
    ws();
    if (i >= s.size() || !ident_start(s[i])) fail(what);
    std::size_t b = i;
    while (i < s.size() && ident_char(s[i])) ++i;
    return std::string(s.substr(b, i - b));
  }
  std::string word(const std::string& what, bool (*ok)(char)) {
    ws();
    std::size_t b = i;
    while (i < s.size() && ok(s[i]) && !(s[i] == '-' && i + 1 < s.size() && s[i + 1] == '>')) ++i;
    if (i == b) fail(what);
    return std::string(s.substr(b, i - b));
  }
  int integer(const std::string& what) {
    ws();
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail(what);
    int v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      v = v * 10 + (s[i] - '0');
      if (v > 1000000) fail("a small integer");
      ++i;
    }
    return v;
  }
  void finish() {
    if (!eof()) fail("end of line");
  }
};

bool fn_name_char(char c) { return ident_char(c) || c == '@'; }

}  // namespace

CatalogDocument parse_catalog(std::string_view text, std::string source) {
  CatalogDocument doc;
  doc.source = std::move(source);
  std::set<std::string> names;
  auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    Cursor c(lines[ln], static_cast<int>(ln) + 1);
    if (c.blank()) continue;
    PathFunction f;
    c.ws();
    const int name_col = c.col();
    f.name = c.ident("function name");
    c.expect('=', "'='");
    for (;;) {
      Atom a;
      a.relation = c.ident("relation name");
      if (c.s.substr(c.i, 2) == "^-") {
        a.inverse = true;
        c.i += 2;
      }
      f.skeleton.push_back(std::move(a));
      if (!c.accept(".")) break;
    }
    if (c.accept("|")) {
      c.ws();
      if (!c.accept("out")) c.fail("'out'");
      do {
        c.ws();
        const int at = c.col();
        int p = c.integer("output position");
        if (p < 1 || p > f.length())
          throw ParseError(ErrorCode::SyntaxError, c.line, at, "output position in 1.." + std::to_string(f.length()),
                           "line " + std::to_string(c.line) + ": output position " + std::to_string(p) +
                               " out of range");
        if (!f.outputs.empty() && f.outputs.back() >= p)
          throw ParseError(ErrorCode::SyntaxError, c.line, at, "strictly increasing output positions",
                           "line " + std::to_string(c.line) + ": output positions must increase");
        f.outputs.push_back(p);
        c.ws();
      } while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i])));
    } else {
      f.outputs = {f.length()};
    }
    c.finish();
    if (!names.insert(f.name).second)
      throw ParseError(ErrorCode::DuplicateName, c.line, name_col, "a new function name",
                       "line " + std::to_string(c.line) + ": duplicate function '" + f.name + "'");
    if (pivot_count(f.skeleton) > 1)
      throw ParseError(ErrorCode::MultiPivotLoop, c.line, name_col, "at most one r.r^- turn",
                       "line " + std::to_string(c.line) + ": function '" + f.name +
                           "' turns around more than once");
    doc.functions.push_back(std::move(f));
  }
  return doc;
}

std::string serialize_catalog(const std::vector<PathFunction>& functions) {
  std::string out;
  for (const auto& f : functions) {
    out += f.name + " = ";
    for (std::size_t i = 0; i < f.skeleton.size(); ++i) {
      if (i) out += " . ";
      out += f.skeleton[i].str();
    }
    if (f.outputs != std::vector<int>{f.length()}) {
      out += " | out";
      for (int p : f.outputs) out += " " + std::to_string(p);
    }
    out += "\n";
  }
  return out;
}

Instance parse_instance(std::string_view text) {
  Instance inst;
  auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    Cursor c(lines[ln], static_cast<int>(ln) + 1);
    if (c.blank()) continue;
    Fact f;
    f.relation = c.ident("relation name");
    if (c.s.substr(c.i, 2) == "^-")
      throw ParseError(ErrorCode::InverseFactRejected, c.line, c.col(), "a forward relation",
                       "line " + std::to_string(c.line) + ": write inverse facts in forward form");
    c.expect('(', "'('");
    f.subject = c.word("constant", const_char);
    c.expect(',', "','");
    f.object = c.word("constant", const_char);
    c.expect(')', "')'");
    c.finish();
    inst.add(f);
  }
  return inst;
}

std::string serialize_instance(const Instance& inst) { return inst.str(); }

std::string serialize_plan(const ExecutionPlan& plan) {
  std::string out;
  for (const auto& c : plan.calls) {
    out += "call " + c.function + "(" + c.input + " ->";
    for (std::size_t j = 0; j < c.outputs.size(); ++j) out += (j ? ", " : " ") + c.outputs[j];
    out += ")\n";
  }
  for (const auto& f : plan.filters) out += "filter " + f.variable + " = " + f.constant + "\n";
  out += "output " + plan.output + "\n";
  return out;
}

std::vector<ExecutionPlan> parse_plans(std::string_view text) {
  std::vector<ExecutionPlan> plans;
  ExecutionPlan cur;
  bool open = false;
  auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    Cursor c(lines[ln], static_cast<int>(ln) + 1);
    if (c.blank()) continue;
    c.ws();
    if (c.accept("call")) {
      FunctionCall call;
      call.function = c.word("function name", fn_name_char);
      c.expect('(', "'('");
      call.input = c.word("input constant or variable", const_char);
      if (!c.accept("->")) c.fail("'->'");
      do {
        call.outputs.push_back(c.word("output variable", const_char));
      } while (c.accept(","));
      c.expect(')', "')'");
      cur.calls.push_back(std::move(call));
      open = true;
    } else if (c.accept("filter")) {
      Filter f;
      f.variable = c.word("variable", const_char);
      c.expect('=', "'='");
      f.constant = c.word("constant", const_char);
      cur.filters.push_back(std::move(f));
      open = true;
    } else if (c.accept("output")) {
      cur.output = c.word("variable", const_char);
      c.finish();
      plans.push_back(std::move(cur));
      cur = ExecutionPlan{};
      open = false;
      continue;
    } else {
      c.fail("'call', 'filter' or 'output'");
    }
    c.finish();
  }
  if (open)
    throw ParseError(ErrorCode::SyntaxError, static_cast<int>(lines.size()), 1, "'output' line",
                     "plan is missing its output line");
  return plans;
}

ExecutionPlan parse_plan(std::string_view text) {
  auto plans = parse_plans(text);
  if (plans.size() != 1)
    throw ParseError(ErrorCode::SyntaxError, 1, 1, "exactly one plan",
                     "expected exactly one plan, found " + std::to_string(plans.size()));
  return plans.front();
}

void resolve_plan(const ExecutionPlan& plan, const Catalog& catalog) {
  for (const auto& c : plan.calls)
    if (!catalog.find(c.function))
      throw Error(ErrorCode::UnknownFunction, "unknown function '" + c.function + "'");
}

std::string plan_record(const ExecutionPlan& plan, const Catalog& catalog,
                        const std::map<std::string, std::string>& metadata) {
  using nlohmann::json;
  json j;
  j["calls"] = json::array();
  Skeleton sk;
  for (const auto& c : plan.calls) {
    j["calls"].push_back({{"function", c.function}, {"input", c.input}, {"outputs", c.outputs}});
    if (const SubFunction* f = catalog.find(c.function)) sk = concat(sk, f->skeleton);
  }
  j["filters"] = json::array();
  for (const auto& f : plan.filters) j["filters"].push_back({{"variable", f.variable}, {"constant", f.constant}});
  j["output"] = plan.output;
  j["skeleton"] = to_string(sk);
  j["verdictMetadata"] = json::object();
  for (const auto& [k, v] : metadata) j["verdictMetadata"][k] = v;
  return j.dump();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace pathplan
