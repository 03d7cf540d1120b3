#include <gtest/gtest.h>

#include <set>

#include "brute.hpp"
#include "pathplan/search.hpp"

using namespace pathplan;

namespace {

FunctionSet fset(std::vector<std::string> skeletons) {
  FunctionSet fs;
  for (std::size_t i = 0; i < skeletons.size(); ++i) {
    SubFunction f;
    f.name = f.parent = "f" + std::to_string(i);
    f.skeleton = parse_skeleton(skeletons[i]);
    f.prefix = f.length();
    f.outputs = {f.length()};
    fs.push_back(f);
  }
  return fs;
}

SearchState state(std::vector<PositionedFunction> m) {
  SearchState s{std::move(m)};
  s.normalize();
  return s;
}

constexpr auto F = Direction::Forward;
constexpr auto B = Direction::Backward;

}  // namespace

TEST(StateConsistent, Examples) {
  auto fs = fset({"u.s", "s^-.u^-.r", "t^-.s^-"});
  EXPECT_TRUE(state_consistent(state({{0, 1, F, true}, {1, 2, B, false}}), fs));
  EXPECT_FALSE(state_consistent(state({{0, 1, F, true}, {2, 1, B, false}}), fs));
  EXPECT_TRUE(state_consistent(state({{0, 2, F, true}}), fs));
}

TEST(Successors, SingleAtomEnds) {
  auto fs = fset({"r"});
  auto s = search_successors(state({{0, 1, F, true}}), fs);
  EXPECT_TRUE(s.advanced.members.empty());
  EXPECT_EQ(s.ends, 1);
  EXPECT_EQ(s.starts, 0);
  EXPECT_TRUE(s.designated_ended);
}

TEST(Successors, TransitionRules) {
  auto fs = fset({"u.s.t", "t^-.s^-"});
  auto s = search_successors(state({{0, 2, F, true}, {1, 2, B, false}}), fs);
  EXPECT_EQ(s.advanced, state({{0, 3, F, true}, {1, 1, B, false}}));
  EXPECT_EQ(s.starts, 0);
  EXPECT_EQ(s.ends, 0);

  s = search_successors(state({{0, 3, F, true}, {1, 1, B, false}}), fs);
  EXPECT_TRUE(s.advanced.members.empty());
  EXPECT_EQ(s.ends, 1);
  EXPECT_EQ(s.starts, 1);
  EXPECT_TRUE(s.designated_ended);
}

TEST(Scan, AssemblyInvariantsOnRandomCatalogs) {
  Rng rng(31);
  std::size_t plans = 0;
  for (int round = 0; round < 150; ++round) {
    Catalog c = brute::random_catalog(rng, 2, 5, 3, 0.3);
    AtomicQuery q = parse_query(rng.below(2) ? "r0" : "r0^-");
    for (bool loose : {false, true}) {
      ScanConfig cfg;
      cfg.loose = loose;
      SearchStats stats;
      scan_plans(q, c.closure(), cfg,
                 [&](const PlanAssembly& pa) {
                   ++plans;
                   EXPECT_EQ(pa.functions.size(), pa.start_nodes.size());
                   EXPECT_EQ(pa.functions.size(), pa.end_nodes.size());
                   // no two calls start, and no two calls end, on one node
                   std::set<int> starts(pa.start_nodes.begin(), pa.start_nodes.end());
                   std::set<int> ends(pa.end_nodes.begin(), pa.end_nodes.end());
                   EXPECT_EQ(starts.size(), pa.start_nodes.size());
                   EXPECT_EQ(ends.size(), pa.end_nodes.size());
                   // calls abut: each starts where the previous ended
                   for (std::size_t i = 1; i < pa.functions.size(); ++i)
                     EXPECT_EQ(pa.start_nodes[i], pa.end_nodes[i - 1]);
                   EXPECT_EQ(pa.start_nodes.front(), 1);
                   EXPECT_EQ(pa.end_nodes.back(), loose ? 2 : 0);
                   return true;
                 },
                 stats);
      EXPECT_EQ(stats.history_repeats, 0u);
    }
  }
  EXPECT_GT(plans, 20u);
}
