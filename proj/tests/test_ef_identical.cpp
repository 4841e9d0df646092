#include <gtest/gtest.h>

#include <functional>

#include "fairinit/ef_identical.hpp"
#include "fairinit/instances.hpp"
#include "fairinit/oracle.hpp"

using namespace fairinit;

TEST(Levels, TwoAgentPresetAnalysis) {
  const auto inst = preset("obs1");
  const auto a = analyze_levels(inst);
  EXPECT_EQ(a.violating, (std::vector<std::pair<Agent, Agent>>{{0, 1}}));
  EXPECT_EQ(a.h_star, 2u);
  EXPECT_EQ(a.t_star, 1u);
  ASSERT_EQ(a.k.size(), 2u);
  EXPECT_EQ(a.k[0], 0u); // floor((10 - 1) / 10)
  const auto d = decide_ef_init_identical(inst);
  EXPECT_FALSE(d.exists);
  EXPECT_FALSE(d.allocation.has_value());
}

TEST(Levels, NoViolatingPairWithEqualInitials) {
  const auto inst = Instance::identical(5, {3, 3, 3}, {1, 4, 2});
  const auto a = analyze_levels(inst);
  EXPECT_TRUE(a.violating.empty());
  EXPECT_EQ(a.t_star, 1u);
  EXPECT_EQ(a.h_star, 2u);
  EXPECT_EQ(a.k, (std::vector<std::size_t>{5}));
}

TEST(Levels, ViolatingPairsMatchDoubleLoop) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto inst = random_instance({seed, 2 + seed % 4, 1 + seed % 6, 5, 12, Flavor::Identical});
    const auto a = analyze_levels(inst);
    std::size_t count = 0;
    std::size_t h = a.levels.size() + 1;
    for (Agent i = 0; i < inst.agents(); ++i)
      for (Agent j = 0; j < inst.agents(); ++j)
        if (inst.initial(i) < inst.initial(j) && inst.utility(i, 0) < inst.utility(j, 0)) {
          ++count;
          h = std::min(h, a.levels.level_of[j] + 1);
        }
    EXPECT_EQ(a.violating.size(), count);
    EXPECT_EQ(a.h_star, h);
  }
}

TEST(Levels, Preconditions) {
  EXPECT_THROW(analyze_levels(preset("ex2")), PreconditionViolated);
  EXPECT_THROW(analyze_levels(Instance::identical(2, {0, 0}, {1, 0})), PreconditionViolated);
}

TEST(Tail, Examples) {
  const auto inst = preset("obs1");
  auto a = analyze_levels(inst);
  EXPECT_TRUE(check_ef_init_tail(inst, a, a.t_star, 3));
  // pretend level 2 were still below h*: agent 1 would envy agent 0 holding one
  a.t_star = 2;
  EXPECT_FALSE(check_ef_init_tail(inst, a, 1, 1)); // 1 * 10 <= 10 - 1 fails
  EXPECT_TRUE(check_ef_init_tail(inst, a, 1, 0));
  EXPECT_THROW(check_ef_init_tail(inst, a, 3, 1), InputError);
}

TEST(Decide, SingleLevelSplitsEvenly) {
  const auto inst = Instance::identical(6, {2, 2, 2}, {1, 5, 3});
  const auto d = decide_ef_init_identical(inst);
  ASSERT_TRUE(d.allocation.has_value());
  for (Agent i = 0; i < 3; ++i)
    EXPECT_EQ(d.allocation->bundle(i).size(), 2u);
  EXPECT_FALSE(decide_ef_init_identical(Instance::identical(5, {2, 2, 2}, {1, 5, 3})).exists);
}

TEST(Decide, AgreesWithOracle) {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const auto inst = random_instance({seed, 2 + seed % 3, 1 + seed % 6, 5, 12, Flavor::Identical});
    const auto d = decide_ef_init_identical(inst);
    EXPECT_EQ(d.exists, exists_complete_by_profiles(inst, NotionTag::EfInit).has_value()) << seed;
    if (!d.allocation)
      continue;
    EXPECT_TRUE(is_complete(inst, *d.allocation));
    EXPECT_TRUE(satisfies(inst, *d.allocation, NotionTag::EfInit));
    const auto& an = d.analysis;
    for (std::size_t h = 1; h <= an.levels.size(); ++h) {
      const auto& level = an.levels.levels[h - 1];
      for (Agent i : level) {
        EXPECT_EQ(d.allocation->bundle(i).size(), d.allocation->bundle(level[0]).size());
        if (h > an.t_star)
          EXPECT_TRUE(d.allocation->bundle(i).empty());
        else
          EXPECT_LE(d.allocation->bundle(i).size(), an.k[h - 1]);
      }
    }
  }
}

// D[a][b][c] against the definition of a fitting count vector.
TEST(Decide, TableMatchesFittingDefinition) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const auto inst = random_instance({seed, 2 + seed % 3, 1 + seed % 5, 4, 9, Flavor::Identical});
    const auto d = decide_ef_init_identical(inst, {false, true});
    const auto& an = d.analysis;
    const auto m = inst.resources();
    ASSERT_TRUE(d.table.has_value());
    ASSERT_EQ(d.table->size(), an.t_star);
    for (std::size_t b = 1; b <= an.t_star; ++b) {
      std::vector<std::vector<char>> want(m + 1, std::vector<char>(m + 1, 0));
      std::vector<std::size_t> counts(b);
      std::function<void(std::size_t)> go = [&](std::size_t h) {
        if (h == b) {
          std::size_t a = 0;
          for (std::size_t g = 0; g < b; ++g)
            a += counts[g] * an.levels.levels[g].size();
          if (a > m)
            return;
          Allocation alloc(inst.agents());
          Resource r = 0;
          for (std::size_t g = 0; g < b; ++g)
            for (Agent i : an.levels.levels[g])
              for (std::size_t k = 0; k < counts[g]; ++k)
                alloc.give(i, r++);
          // envy only among levels 1..b
          bool ok = true;
          for (std::size_t g1 = 0; g1 < b && ok; ++g1)
            for (std::size_t g2 = 0; g2 < b && ok; ++g2)
              for (Agent i : an.levels.levels[g1])
                for (Agent j : an.levels.levels[g2])
                  if (i != j && !check_pair(inst, alloc, i, j, NotionTag::EfInit).ok)
                    ok = false;
          if (ok)
            want[a][counts[b - 1]] = 1;
          return;
        }
        for (std::size_t c = 1; c <= std::min(an.k[h], m); ++c) {
          counts[h] = c;
          go(h + 1);
        }
      };
      go(0);
      EXPECT_EQ((*d.table)[b - 1], want) << "seed " << seed << " level " << b;
    }
  }
}
