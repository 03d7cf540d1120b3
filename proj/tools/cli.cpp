#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "pathplan/characterize.hpp"
#include "pathplan/engine.hpp"
#include "pathplan/evaluate.hpp"
#include "pathplan/io.hpp"
#include "pathplan/oracle.hpp"
#include "pathplan/synth.hpp"

namespace pathplan::cli {

namespace {

struct Common {
  std::string functions;
  std::string query;
  std::string constant = "a";
};

Catalog load_catalog(const std::string& path) {
  return parse_catalog(read_file(path), path).catalog();
}

ExecutionPlan load_plan(const std::string& path, const Catalog& catalog) {
  ExecutionPlan plan = parse_plan(read_file(path));
  resolve_plan(plan, catalog);
  return plan;
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty())
    out << text;
  else
    write_file(out_path, text);
}

int cmd_plans(const Common& c, const std::string& mode, std::size_t max_plans, const std::string& format,
              const std::string& out_path, std::ostream& out, std::ostream& err) {
  Catalog catalog = load_catalog(c.functions);
  AtomicQuery q = parse_query(c.query, c.constant);
  SearchOptions opts;
  opts.max_plans = max_plans;

  std::vector<ExecutionPlan> plans;
  SearchStats stats;
  if (mode == "weak") {
    for (auto& f : enumerate_minimal_weakly_smart(q, catalog, opts, &stats)) plans.push_back(f.plan);
  } else if (mode == "smart") {
    for (auto& f : enumerate_minimal_smart(q, catalog, opts, &stats)) plans.push_back(f.plan);
  } else if (mode == "susie") {
    plans = susie_plans(q, catalog);
  } else {
    if (auto p = find_one_weakly_smart(q, catalog, opts, &stats)) plans.push_back(*p);
  }
  if (stats.timed_out) err << "warning: search timed out\n";
  if (stats.truncated) err << "warning: stopped after " << max_plans << " plans\n";

  std::sort(plans.begin(), plans.end(), [](const ExecutionPlan& a, const ExecutionPlan& b) {
    auto ka = call_sequence(a), kb = call_sequence(b);
    if (ka != kb) return ka < kb;
    return serialize_plan(a) < serialize_plan(b);
  });
  plans.erase(std::unique(plans.begin(), plans.end(),
                          [](const ExecutionPlan& a, const ExecutionPlan& b) {
                            return serialize_plan(a) == serialize_plan(b);
                          }),
              plans.end());

  std::string text;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    if (format == "json") {
      text += plan_record(plans[i], catalog, {{"mode", mode}, {"query", q.relation.str()}}) + "\n";
    } else {
      if (i) text += "\n";
      text += serialize_plan(plans[i]);
    }
  }
  emit(text, out_path, out);
  return plans.empty() ? NoPlan : Ok;
}

int cmd_check(const Common& c, const std::string& plan_path, const std::string& level, bool oracle,
              int budget, std::ostream& out) {
  Catalog catalog = load_catalog(c.functions);
  AtomicQuery q = parse_query(c.query, c.constant);
  ExecutionPlan plan = load_plan(plan_path, catalog);

  bool verdict;
  std::string reason;
  if (level == "weak") {
    verdict = is_weakly_smart(plan, q, catalog);
  } else {
    Verdict v = is_smart(plan, q, catalog);
    verdict = v.level == SmartLevel::Smart;
    reason = v.reason;
  }
  out << level << ": " << (verdict ? "yes" : "no");
  if (!reason.empty()) out << " (" << reason << ")";
  out << "\n";

  if (oracle) {
    OracleBudget b;
    b.max_facts = budget;
    OracleResult r = level == "weak" ? oracle_is_weakly_smart(plan, q, catalog, b)
                                     : oracle_is_smart(plan, q, catalog, b);
    out << "oracle: " << (r.holds ? "yes" : "no") << " after " << r.instances << " instances";
    if (!r.complete) out << " (exhaustive layer cut short)";
    out << "\n";
    if (r.witness) out << "witness (" << r.layer << "):\n" << r.witness->str();
    if (r.holds != verdict) return OracleDisagrees;
  }
  return verdict ? Ok : CheckFailed;
}

int cmd_eval(const std::string& functions, const std::string& instance, const std::string& plan_path,
             const std::string& semantics, std::ostream& out) {
  Catalog catalog = load_catalog(functions);
  ExecutionPlan plan = load_plan(plan_path, catalog);
  Instance inst = parse_instance(read_file(instance));
  CallMode mode = semantics == "optional-edge" ? CallMode::OptionalEdge : CallMode::Standard;
  for (const auto& v : eval_plan(plan, catalog, inst, mode)) out << v << "\n";
  return Ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Plans over path-shaped Web service functions"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub, bool query) {
    sub->add_option("--functions", common.functions, "catalog file")->required();
    if (query) {
      sub->add_option("--query", common.query, "query relation, REL or REL^-")->required();
      sub->add_option("--constant", common.constant, "query constant");
    }
  };

  std::string mode = "smart", format = "text", out_path;
  std::size_t max_plans = 10000;
  auto* plans = app.add_subcommand("plans", "enumerate plans for a query");
  add_common(plans, true);
  plans->add_option("--mode", mode)->check(CLI::IsMember({"weak", "smart", "susie", "one"}));
  plans->add_option("--max-plans", max_plans);
  plans->add_option("--out", out_path);
  plans->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  std::string plan_path, level = "smart";
  bool oracle = false;
  int budget = 6;
  auto* check = app.add_subcommand("check", "check a plan");
  add_common(check, true);
  check->add_option("--plan", plan_path)->required();
  check->add_option("--level", level)->check(CLI::IsMember({"weak", "smart"}));
  check->add_flag("--oracle", oracle);
  check->add_option("--budget", budget, "max facts in exhaustive oracle instances")->check(CLI::Range(0, 8));

  std::string instance, semantics = "standard";
  auto* eval = app.add_subcommand("eval", "run a plan on an instance");
  add_common(eval, false);
  eval->add_option("--instance", instance)->required();
  eval->add_option("--plan", plan_path)->required();
  eval->add_option("--semantics", semantics)->check(CLI::IsMember({"standard", "optional-edge"}));

  SynthConfig sc;
  auto* synth = app.add_subcommand("synth", "generate a random catalog");
  synth->add_option("--relations", sc.relations)->check(CLI::PositiveNumber);
  synth->add_option("--functions", sc.functions)->check(CLI::NonNegativeNumber);
  synth->add_option("--max-len", sc.max_length)->check(CLI::PositiveNumber);
  synth->add_option("--seed", sc.seed);
  synth->add_option("--out", out_path);

  SweepConfig sw;
  std::string axis = "relations";
  int timeout_ms = 2000;
  auto* bench = app.add_subcommand("bench", "answered-fraction sweep, CSV out");
  bench->add_option("--axis", axis)->check(CLI::IsMember({"relations", "functions"}));
  bench->add_option("--fixed", sw.fixed)->check(CLI::PositiveNumber);
  bench->add_option("--min", sw.min)->check(CLI::PositiveNumber);
  bench->add_option("--max", sw.max)->check(CLI::PositiveNumber);
  bench->add_option("--step", sw.step)->check(CLI::PositiveNumber);
  bench->add_option("--seeds", sw.seeds)->check(CLI::PositiveNumber);
  bench->add_option("--max-len", sw.max_length)->check(CLI::PositiveNumber);
  bench->add_option("--base-seed", sw.base_seed);
  bench->add_option("--timeout-ms", timeout_ms)->check(CLI::PositiveNumber);
  bench->add_option("--out", out_path);

  std::vector<std::string> argv_store{"pathplan"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? Ok : Usage;
  }

  try {
    if (*plans) return cmd_plans(common, mode, max_plans, format, out_path, out, err);
    if (*check) return cmd_check(common, plan_path, level, oracle, budget, out);
    if (*eval) return cmd_eval(common.functions, instance, plan_path, semantics, out);
    if (*synth) {
      emit(serialize_catalog(gen_catalog(sc).functions()), out_path, out);
      return Ok;
    }
    if (*bench) {
      sw.axis = axis == "functions" ? Axis::Functions : Axis::Relations;
      sw.timeout = std::chrono::milliseconds(timeout_ms);
      if (sw.min > sw.max) {
        err << "error: --min is larger than --max\n";
        return Usage;
      }
      emit(sweep_csv(sweep(sw)), out_path, out);
      return Ok;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return Usage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return Usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return Usage;
  }
  return Usage;
}

}  // namespace pathplan::cli
