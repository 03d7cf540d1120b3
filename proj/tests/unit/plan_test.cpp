#include <gtest/gtest.h>

#include "brute.hpp"
#include "pathplan/evaluate.hpp"
#include "pathplan/plan.hpp"

using namespace pathplan;

namespace {

Catalog fig1() {
  return Catalog({{"getCompany", parse_skeleton("worksFor"), {1}},
                  {"getHierarchy", parse_skeleton("worksFor^-.jobTitle"), {1, 2}},
                  {"getEducation", parse_skeleton("graduatedFrom"), {1}}});
}

ExecutionPlan pi1(const std::string& a = "Anna") {
  return ExecutionPlan{{{"getCompany", a, {"x"}}, {"getHierarchy", "x", {"y", "z"}}}, {{"y", a}}, "z"};
}

}  // namespace

TEST(PlanSemantics, Pi1) {
  auto sem = plan_semantics(pi1(), fig1());
  EXPECT_EQ(to_string(sem.skeleton), "worksFor.worksFor^-.jobTitle");
  ASSERT_EQ(sem.filters.size(), 1u);
  EXPECT_EQ(sem.filters[0].position, 2);
  EXPECT_EQ(sem.filters[0].constant, "Anna");
  EXPECT_EQ(sem.output, 3);
  EXPECT_EQ(sem.constant, "Anna");
}

TEST(PlanSemantics, SingleCall) {
  Catalog c({{"f", parse_skeleton("r"), {1}}});
  auto sem = plan_semantics(ExecutionPlan{{{"f", "a", {"v0"}}}, {}, "v0"}, c);
  EXPECT_EQ(to_string(sem.skeleton), "r");
  EXPECT_EQ(sem.output, 1);
  EXPECT_TRUE(sem.filters.empty());
}

TEST(PlanSemantics, BoundedPlanChain) {
  Catalog c({{"f1", parse_skeleton("u.s.t"), {3}},
             {"f2", parse_skeleton("t^-.s^-"), {2}},
             {"f3", parse_skeleton("s"), {1}},
             {"f4", parse_skeleton("s^-.u^-.r"), {3}}});
  auto plan = chain_plan({c.find("f1"), c.find("f2"), c.find("f3"), c.find("f4")}, "a");
  EXPECT_EQ(to_string(plan_semantics(plan, c).skeleton), "u.s.t.t^-.s^-.s.s^-.u^-.r");
}

TEST(PlanSemantics, Errors) {
  Catalog c = fig1();
  ExecutionPlan skip{{{"getCompany", "a", {"x"}}, {"getEducation", "a", {"w"}}, {"getHierarchy", "x", {"y", "z"}}},
                     {}, "z"};
  try {
    plan_semantics(skip, c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotChained);
  }
  ExecutionPlan inner{{{"getHierarchy", "a", {"y", "z"}}, {"getCompany", "y", {"x"}}}, {}, "x"};
  try {
    plan_semantics(inner, c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPathShaped);
  }
}

TEST(Transformation, CutsToUsedPrefix) {
  Catalog c({{"getCompanyInfo", parse_skeleton("worksAt.locatedIn"), {1, 2}}, {"g", parse_skeleton("r"), {1}}});
  ExecutionPlan p{{{"getCompanyInfo", "a", {"y", "z"}}, {"g", "y", {"w"}}}, {}, "w"};
  auto t = sub_function_transformation(p, c);
  EXPECT_EQ(t.calls[0].function, "getCompanyInfo@1");
  EXPECT_EQ(t.calls[0].outputs, (std::vector<std::string>{"y"}));
  EXPECT_EQ(to_string(plan_semantics(t, c).skeleton), "worksAt.r");
}

TEST(Transformation, FixpointOnSubFunctions) {
  Catalog c = fig1();
  auto p = chain_plan({c.find("getCompany"), c.find("getHierarchy@1")}, "a");
  EXPECT_EQ(sub_function_transformation(p, c), p);
  EXPECT_EQ(sub_function_transformation(pi1(), c), pi1());
}

TEST(Transformation, MissingSubFunction) {
  Catalog c({{"f", parse_skeleton("r.s"), {2}}, {"g", parse_skeleton("t"), {1}}});
  // f@1 does not exist, but nothing asks for position 1 through an output
  auto p = chain_plan({c.find("f"), c.find("g")}, "a");
  EXPECT_NO_THROW(sub_function_transformation(p, c));
}

TEST(Transformation, EvaluationEquivalentOnFig1) {
  Catalog c = fig1();
  ExecutionPlan wide{{{"getCompany", "a", {"x"}}, {"getHierarchy", "x", {"y", "z"}}}, {}, "y"};
  auto t = sub_function_transformation(wide, c);
  EXPECT_EQ(t.calls[1].function, "getHierarchy@1");
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    auto inst = brute::random_instance(rng, {"worksFor", "jobTitle", "graduatedFrom"}, {"a", "b", "c", "d"},
                                         1 + static_cast<int>(rng.below(8)));
    ASSERT_EQ(eval_plan(wide, c, inst, CallMode::OptionalEdge), eval_plan(t, c, inst, CallMode::OptionalEdge))
        << inst.str();
  }
}

namespace {

// chained plan over whole functions; each call reads some output of the
// previous one, the plan output is some output of the last call
ExecutionPlan random_plan(Rng& rng, const Catalog& c, std::size_t calls) {
  ExecutionPlan p;
  std::string input = "a";
  int var = 0;
  for (std::size_t i = 0; i < calls; ++i) {
    const auto& f = c.functions()[rng.below(c.size())];
    FunctionCall call{f.name, input, {}};
    for (std::size_t j = 0; j < f.outputs.size(); ++j) call.outputs.push_back("v" + std::to_string(var++));
    input = call.outputs[rng.below(call.outputs.size())];
    p.calls.push_back(call);
  }
  p.output = input;
  if (rng.below(2)) {
    const auto& call = p.calls[rng.below(p.calls.size())];
    p.filters.push_back({call.outputs[rng.below(call.outputs.size())], "a"});
  }
  return p;
}

}  // namespace

TEST(Transformation, OptionalEdgeEquivalenceOnRandomPlans) {
  Rng rng(99);
  for (int round = 0; round < 300; ++round) {
    Catalog c = brute::random_catalog(rng, 3, 4, 3, 0.6);
    auto p = random_plan(rng, c, 1 + rng.below(3));
    ExecutionPlan t;
    ASSERT_NO_THROW(t = sub_function_transformation(p, c));
    // each call became the prefix ending at its last used output
    for (std::size_t i = 0; i < p.calls.size(); ++i) {
      const SubFunction* before = c.find(p.calls[i].function);
      const SubFunction* after = c.find(t.calls[i].function);
      ASSERT_EQ(after->parent, before->parent);
      ASSERT_EQ(after->skeleton, slice(before->skeleton, 0, static_cast<std::size_t>(after->length())));
    }
    for (int k = 0; k < 10; ++k) {
      auto inst = brute::random_instance(rng, relation_names(3), {"a", "b", "c"}, static_cast<int>(rng.below(13)));
      ASSERT_EQ(eval_plan(p, c, inst, CallMode::OptionalEdge), eval_plan(t, c, inst, CallMode::OptionalEdge))
          << call_sequence(p);
    }
  }
}

TEST(Validate, Examples) {
  Catalog c = fig1();
  AtomicQuery q = parse_query("jobTitle", "Anna");
  EXPECT_TRUE(validate_plan(pi1(), q, c).empty());

  auto wrong_input = pi1("b");
  wrong_input.filters[0].constant = "Anna";
  auto v = validate_plan(wrong_input, q, c);
  EXPECT_NE(std::find(v.begin(), v.end(), Violation::NoInputA), v.end());

  ExecutionPlan orphan{{{"getEducation", "Anna", {"w"}}, {"getCompany", "Anna", {"x"}}, {"getHierarchy", "x", {"y", "z"}}},
                       {{"y", "Anna"}}, "z"};
  v = validate_plan(orphan, q, c);
  EXPECT_NE(std::find(v.begin(), v.end(), Violation::OrphanCall), v.end());

  ExecutionPlan bad_filter = pi1();
  bad_filter.filters[0].constant = "Bob";
  v = validate_plan(bad_filter, q, c);
  EXPECT_NE(std::find(v.begin(), v.end(), Violation::BadFilter), v.end());
}

TEST(ChainPlan, NamesAndSequence) {
  Catalog c = fig1();
  auto p = chain_plan({c.find("getCompany"), c.find("getHierarchy")}, "a");
  EXPECT_EQ(p.calls[0].outputs, (std::vector<std::string>{"v0"}));
  EXPECT_EQ(p.calls[1].input, "v0");
  EXPECT_EQ(p.calls[1].outputs, (std::vector<std::string>{"v1", "v2"}));
  EXPECT_EQ(p.output, "v2");
  EXPECT_EQ(call_sequence(p), "getCompany,getHierarchy");
  EXPECT_EQ(variable_at(p, c, 1, 1), "v1");
}
