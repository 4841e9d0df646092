#include <gtest/gtest.h>

#include "fairinit/exact.hpp"
#include "fairinit/instances.hpp"
#include "fairinit/model.hpp"
#include "support/brute.hpp"

using namespace fairinit;

TEST(Exact, FloorCeilDivision) {
  EXPECT_EQ(floor_div(7, 2), 3);
  EXPECT_EQ(floor_div(-7, 2), -4);
  EXPECT_EQ(ceil_div(7, 2), 4);
  EXPECT_EQ(ceil_div(-7, 2), -3);
  EXPECT_EQ(ceil_div(6, 3), 2);
}

TEST(Exact, CompareProductsDoesNotOverflow) {
  const Value big = Value{1} << 62;
  EXPECT_EQ(compare_products(big, 4, big, 3), 1);
  EXPECT_EQ(compare_products(big, 3, 3, big), 0);
}

TEST(Exact, RatioParsing) {
  EXPECT_EQ(parse_ratio("2/4"), Ratio(1, 2));
  EXPECT_EQ(parse_ratio("3"), Ratio(3));
  EXPECT_THROW(parse_ratio("0.5"), InputError);
  EXPECT_THROW(parse_ratio("1/0"), InputError);
  EXPECT_THROW(parse_ratio(""), InputError);
  EXPECT_TRUE(Ratio(1, 3) < Ratio(1, 2));
  EXPECT_EQ(Ratio(6, 4).str(), "3/2");
}

TEST(Instance, RejectsBadShapes) {
  EXPECT_THROW(Instance(2, {0, 0}, {{1, 1}}), InputError);
  EXPECT_THROW(Instance(2, {0}, {{1}}), InputError);
  EXPECT_THROW(Instance(1, {-1}, {{1}}), InputError);
  EXPECT_THROW(Instance(1, {0}, {{-2}}), InputError);
}

TEST(Validation, TwoAgentPresetIsValid) { EXPECT_TRUE(validate_instance(preset("obs1")).ok()); }

TEST(Validation, ReportsEveryIssue) {
  const Instance zero_row(2, {0, 0}, {{1, 1}, {0, 0}});
  auto v = validate_instance(zero_row);
  ASSERT_EQ(v.issues.size(), 1u);
  EXPECT_EQ(v.issues[0].kind, IssueKind::AgentValuesNothing);
  EXPECT_EQ(v.issues[0].message, "agent 1 values no resource");

  const Instance single(1, {0}, {{1}});
  v = validate_instance(single);
  ASSERT_EQ(v.issues.size(), 1u);
  EXPECT_EQ(v.issues[0].message, "fewer than two agents");

  const Instance dead_column(2, {0, 0}, {{1, 0}, {1, 0}});
  v = validate_instance(dead_column);
  ASSERT_EQ(v.issues.size(), 1u);
  EXPECT_EQ(v.issues[0].kind, IssueKind::ResourceValuedByNobody);
  EXPECT_EQ(v.issues[0].index, 1u);

  EXPECT_THROW(require_valid(single), PreconditionViolated);
}

TEST(Levels, Examples) {
  auto l = compute_levels(preset("obs1"));
  EXPECT_EQ(l.levels, (std::vector<std::vector<Agent>>{{0}, {1}}));
  EXPECT_EQ(l.values, (std::vector<Value>{1, 10}));

  l = compute_levels(Instance::identical(1, {5, 5, 5}, {1, 1, 1}));
  EXPECT_EQ(l.size(), 1u);
  EXPECT_EQ(l.levels[0], (std::vector<Agent>{0, 1, 2}));

  l = compute_levels(preset("ex1"));
  EXPECT_EQ(l.levels, (std::vector<std::vector<Agent>>{{0, 1}, {2}}));
  EXPECT_EQ(l.values, (std::vector<Value>{0, 20}));
}

TEST(Levels, PartitionAndOrderOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto inst = random_instance({seed, 2 + seed % 5, 1 + seed % 4, 5, 6, Flavor::General});
    const auto l = compute_levels(inst);
    std::vector<Agent> seen;
    for (std::size_t h = 0; h < l.size(); ++h) {
      if (h > 0) {
        EXPECT_LT(l.values[h - 1], l.values[h]);
      }
      for (Agent a : l.levels[h]) {
        EXPECT_EQ(inst.initial(a), l.values[h]);
        EXPECT_EQ(l.level_of[a], h);
        seen.push_back(a);
      }
      EXPECT_TRUE(std::is_sorted(l.levels[h].begin(), l.levels[h].end()));
    }
    std::sort(seen.begin(), seen.end());
    for (Agent a = 0; a < inst.agents(); ++a)
      EXPECT_EQ(seen[a], a);
  }
}

TEST(BundleUtility, Examples) {
  const auto obs1 = preset("obs1");
  EXPECT_EQ(bundle_utility(obs1, 1, std::vector<Resource>{0, 1}), 20);
  EXPECT_EQ(bundle_utility(obs1, 0, std::vector<Resource>{}), 0);
  const auto ex2 = preset("ex2");
  std::vector<Resource> rest;
  for (Resource r = 1; r < 100; ++r)
    rest.push_back(r);
  EXPECT_EQ(bundle_utility(ex2, 0, rest), 0);
  EXPECT_THROW(bundle_utility(obs1, 2, std::vector<Resource>{}), InputError);
  EXPECT_THROW(bundle_utility(obs1, 0, std::vector<Resource>{4}), InputError);
}

TEST(BundleUtility, Additive) {
  const auto inst = random_instance({7, 3, 6, 9, 4, Flavor::General});
  std::vector<Resource> x;
  for (Resource r = 0; r < inst.resources(); ++r) {
    for (Agent i = 0; i < inst.agents(); ++i) {
      const auto before = bundle_utility(inst, i, x);
      auto y = x;
      y.push_back(r);
      EXPECT_EQ(bundle_utility(inst, i, y), before + inst.utility(i, r));
    }
    x.push_back(r);
  }
}

TEST(Predicates, IdenticalResources) {
  EXPECT_TRUE(is_identical_resources(preset("obs1")));
  EXPECT_FALSE(is_identical_resources(preset("ex2")));
  EXPECT_TRUE(is_identical_resources(Instance(1, {0, 0}, {{3}, {4}})));
}

TEST(Predicates, Diminishing) {
  EXPECT_FALSE(is_diminishing(preset("obs1")));
  EXPECT_TRUE(is_diminishing(Instance(2, {3, 3}, {{1, 5}, {9, 0}})));
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const auto inst = random_instance({seed, 2 + seed % 4, 1 + seed % 5, 4, 3, Flavor::General});
    EXPECT_EQ(is_diminishing(inst), brute::diminishing(inst)) << seed;
  }
}

TEST(Allocation, Validation) {
  const auto inst = preset("obs1");
  EXPECT_NO_THROW(validate_allocation(inst, Allocation({{0, 1}, {2}})));
  EXPECT_THROW(validate_allocation(inst, Allocation({{0, 1}, {1}})), InputError);
  EXPECT_THROW(validate_allocation(inst, Allocation({{0, 9}, {}})), InputError);
  EXPECT_THROW(validate_allocation(inst, Allocation(std::vector<Bundle>{{0}})), InputError);
  EXPECT_FALSE(is_complete(inst, Allocation({{0, 1}, {2}})));
  EXPECT_TRUE(is_complete(inst, Allocation({{3, 0, 1}, {2}})));
  EXPECT_EQ(Allocation({{3, 0}, {}}).bundle(0), (Bundle{0, 3}));
}
