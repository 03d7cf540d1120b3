#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "pathplan/io.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = pathplan::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& f) { return std::string(PATHPLAN_DATA_DIR) + "/" + f; }

const char* kPi1 =
    "call getCompany(a -> v0)\n"
    "call getHierarchy(v0 -> v1, v2)\n"
    "filter v1 = a\n"
    "output v2\n";

}  // namespace

TEST(Cli, PlansSmartFig1) {
  auto r = run({"plans", "--functions", data("fig1.cat"), "--query", "jobTitle", "--mode", "smart"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, kPi1);
}

TEST(Cli, PlansWeakFig1IsUnfiltered) {
  auto r = run({"plans", "--functions", data("fig1.cat"), "--query", "jobTitle", "--mode", "weak"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "call getCompany(a -> v0)\ncall getHierarchy(v0 -> v1, v2)\noutput v2\n");
}

TEST(Cli, MusicHasNoSmartPlan) {
  auto r = run({"plans", "--functions", data("music.cat"), "--query", "sing", "--mode", "smart"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.out, "");
}

TEST(Cli, CheckPi1WithOracle) {
  auto r = run({"check", "--functions", data("fig1.cat"), "--plan", data("pi1.plan"), "--query", "jobTitle",
                "--level", "smart", "--oracle"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
}

TEST(Cli, CheckFails) {
  auto tmp = std::filesystem::temp_directory_path() / "pathplan_pi2.plan";
  pathplan::write_file(tmp.string(),
                       "call getEducation(a -> v0)\ncall getHierarchy(v0 -> v1, v2)\nfilter v1 = a\noutput v2\n");
  auto r = run({"check", "--functions", data("fig1.cat"), "--plan", tmp.string(), "--query", "jobTitle",
                "--level", "weak", "--oracle"});
  EXPECT_EQ(r.code, 4) << r.out;
  std::filesystem::remove(tmp);
}

TEST(Cli, EvalSortedLines) {
  auto tmp = std::filesystem::temp_directory_path() / "pathplan_anna.plan";
  pathplan::write_file(tmp.string(),
                       "call getCompany(Anna -> x)\ncall getHierarchy(x -> y, z)\noutput z\n");
  auto r = run({"eval", "--functions", data("fig1.cat"), "--instance", data("fig1.inst"), "--plan", tmp.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "Editor\nJournalist\n");
  std::filesystem::remove(tmp);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"plans", "--query", "r"}).code, 2);
  EXPECT_EQ(run({"plans", "--functions", data("fig1.cat"), "--query", "r", "--mode", "fast"}).code, 2);
  EXPECT_EQ(run({"plans", "--functions", "/nonexistent.cat", "--query", "r"}).code, 2);
  auto r = run({"frobnicate"});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, Deterministic) {
  std::vector<std::string> args{"plans", "--functions", data("realfunctions.cat"), "--query", "hasId", "--mode", "weak"};
  auto a = run(args), b = run(args);
  EXPECT_EQ(a.out, b.out);
  auto j = run({"plans", "--functions", data("fig1.cat"), "--query", "jobTitle", "--format", "json"});
  EXPECT_NE(j.out.find("\"skeleton\":\"worksFor.worksFor^-.jobTitle\""), std::string::npos);
}

TEST(Cli, SynthRoundTrips) {
  auto r = run({"synth", "--relations", "5", "--functions", "7", "--max-len", "3", "--seed", "4"});
  EXPECT_EQ(r.code, 0);
  auto doc = pathplan::parse_catalog(r.out);
  EXPECT_EQ(doc.functions.size(), 7u);
  EXPECT_EQ(run({"synth", "--relations", "5", "--functions", "7", "--max-len", "3", "--seed", "4"}).out, r.out);
}

TEST(Cli, BenchCsv) {
  auto r = run({"bench", "--axis", "functions", "--fixed", "3", "--min", "2", "--max", "3", "--step", "1",
                "--seeds", "1"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "axisValue,approach,fractionAnswered,medianMs,p95Ms");
}
