#include <flower/repair.hpp>

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace flower;

TEST(MinimalHelperSetsTest, ReferenceCodeNode7) {
  const auto sets = minimal_helper_sets(fixtures::code_7_5(), 7);
  const std::vector<std::vector<int>> expected = {{4}, {1, 5}, {2, 5}};
  EXPECT_EQ(sets, expected);
  EXPECT_EQ(repair_degree_set(fixtures::code_7_5(), 7),
            (std::vector<int>{1, 2}));
}

TEST(MinimalHelperSetsTest, ReferenceCodeAllDegreeSets) {
  const FrCode code = fixtures::code_7_5();
  EXPECT_EQ(repair_degree_set(code, 1), (std::vector<int>{2}));
  EXPECT_EQ(repair_degree_set(code, 2), (std::vector<int>{2}));
  EXPECT_EQ(repair_degree_set(code, 3), (std::vector<int>{2}));
  EXPECT_EQ(repair_degree_set(code, 4), (std::vector<int>{2, 3}));
  EXPECT_EQ(repair_degree_set(code, 5), (std::vector<int>{3}));
  EXPECT_EQ(repair_degree_set(code, 6), (std::vector<int>{2}));
}

TEST(MinimalHelperSetsTest, SingleNodeCode) {
  const FrCode code({{1}}, 1);
  EXPECT_EQ(minimal_helper_sets(code, 1),
            (std::vector<std::vector<int>>{{}}));
  EXPECT_EQ(repair_degree_set(code, 1), (std::vector<int>{0}));
  const NodeRepair nr = analyze_node(code, 1);
  EXPECT_EQ(nr.unrepairable, (std::vector<int>{1}));
}

TEST(MinimalHelperSetsTest, EmptyNodeRepairsWithZeroHelpers) {
  const FrCode code({{1, 2}, {}, {1, 2}}, 2);
  const NodeRepair nr = analyze_node(code, 2);
  EXPECT_EQ(nr.minimal_helper_sets, (std::vector<std::vector<int>>{{}}));
  EXPECT_EQ(nr.degree_set, (std::vector<int>{0}));
  EXPECT_TRUE(nr.unrepairable.empty());
}

TEST(SdrDegreeTest, ReferenceCode) {
  const FrCode code = fixtures::code_7_5();
  EXPECT_EQ(sdr_repair_degree(code, 4), 3);
  EXPECT_EQ(sdr_repair_degree(code, 7), 2);
}

TEST(SdrDegreeTest, TwoNodeRepetition) {
  EXPECT_EQ(sdr_repair_degree(FrCode({{1}, {1}}, 1), 1), 1);
}

TEST(SdrDegreeTest, CoLocatedReplicasBlockDistinctHelpers) {
  // Node 1 of the (4,6,3,2) system needs packets 1 and 6, both held only by
  // node 2: no distinct-helper assignment exists.
  const FrCode code = fixtures::code_4_6();
  EXPECT_FALSE(sdr_repair_degree(code, 1).has_value());
}

TEST(SdrDegreeTest, AssignmentNamesDistinctHolders) {
  const FrCode code = fixtures::code_7_5();
  const auto assignment = sdr_assignment(code, 4);
  ASSERT_TRUE(assignment.has_value());
  ASSERT_EQ(assignment->size(), 3u);
  std::set<int> helpers;
  for (const auto& [packet, helper] : *assignment) {
    const auto& held = code.node(helper);
    ASSERT_NE(std::find(held.begin(), held.end(), packet), held.end());
    helpers.insert(helper);
  }
  EXPECT_EQ(helpers.size(), 3u);
}

TEST(SystemRepairDegreeTest, ReferenceCodes) {
  EXPECT_EQ(system_repair_degree(fixtures::code_7_5()), 3);
  EXPECT_EQ(system_repair_degree(fixtures::code_4_6()), 2);
}

TEST(SystemRepairDegreeTest, CompleteReplication) {
  const FrCode code({{1, 2}, {1, 2}, {1, 2}}, 2);
  EXPECT_EQ(system_repair_degree(code), 1);
}

TEST(SystemRepairDegreeTest, OrphansAreExcludedWithWarning) {
  const FrCode code = fixtures::code_4_5_chi();  // packets 3 and 5 single-copy
  const RepairReport report = analyze_repair(code);
  ASSERT_EQ(report.warnings.size(), 1u);
  // Nodes 2 and 4 hold orphans; the system degree covers nodes 1 and 3.
  EXPECT_FALSE(report.nodes[1].unrepairable.empty());
  EXPECT_FALSE(report.nodes[3].unrepairable.empty());
  const int expected = std::max(report.nodes[0].max_degree,
                                report.nodes[2].max_degree);
  EXPECT_EQ(report.system_degree, expected);
}

TEST(UnrepairablePacketsTest, ChiExampleOrphans) {
  const auto orphans = unrepairable_packets(fixtures::code_4_5_chi());
  EXPECT_EQ(orphans, (std::vector<std::pair<int, int>>{{2, 5}, {4, 3}}));
}

TEST(UnrepairablePacketsTest, ReferenceCodeHasNone) {
  EXPECT_TRUE(unrepairable_packets(fixtures::code_7_5()).empty());
}

TEST(UnrepairablePacketsTest, SingleNode) {
  EXPECT_EQ(unrepairable_packets(FrCode({{1}}, 1)),
            (std::vector<std::pair<int, int>>{{1, 1}}));
}

TEST(UnrepairablePacketsTest, CoLocatedCopiesCountAsOrphans) {
  // Both copies of packet 1 sit on node 1; no other node can supply it.
  const FrCode code({{1, 1, 2}, {2}}, 2);
  EXPECT_EQ(unrepairable_packets(code),
            (std::vector<std::pair<int, int>>{{1, 1}}));
}

TEST(SubsetBoundCheckTest, ReferencePlanPasses) {
  const SingleRingCode built = single_ring(fixtures::plan_8_7());
  const BoundCheckReport report =
      subset_bound_check(built.code, fixtures::plan_8_7());
  EXPECT_TRUE(report.all_pass());
  ASSERT_EQ(report.checks.size(), 4u);
  // alpha = 4 against the ceiling sum 3 + 2 + 2 = 7.
  EXPECT_EQ(report.checks[0].name, "alpha_upper");
  EXPECT_NE(report.checks[0].detail.find("alpha = 4"), std::string::npos);
  EXPECT_NE(report.checks[0].detail.find("= 7"), std::string::npos);
}

TEST(SubsetBoundCheckTest, IntersectionForcesMaximalCapacity) {
  const SubsetJumpPlan plan{1, 2, {{1}, {1}}};
  const SingleRingCode built = single_ring(plan);
  EXPECT_EQ(profiles(built.code).alpha, 4);
  const BoundCheckReport report = subset_bound_check(built.code, plan);
  EXPECT_TRUE(report.all_pass());
}

TEST(SubsetBoundCheckTest, MismatchedCodeIsRejected) {
  EXPECT_THROW(
      subset_bound_check(fixtures::code_7_5(), fixtures::plan_8_7()),
      SpecError);
}

// The ceiling-sum upper bound, the floor lower bound on touched nodes and
// the exclusive-membership ceiling are provable for every plan. The
// intersection rule is not universal (see the counterexample test below),
// so the sweep checks its witnesses instead of demanding a pass.
TEST(SubsetBoundCheckProperty, ProvableBoundsHoldOnRandomPlans) {
  std::mt19937 rng(7401);
  std::uniform_int_distribution<int> small(1, 6);
  for (int round = 0; round < 150; ++round) {
    SubsetJumpPlan plan{small(rng), small(rng), {}};
    const int rho = small(rng);
    std::uniform_int_distribution<int> node(1, plan.n);
    for (int m = 0; m < rho; ++m) {
      std::vector<int> subset;
      const int size = std::uniform_int_distribution<int>(1, plan.n)(rng);
      for (int k = 0; k < size; ++k) subset.push_back(node(rng));
      plan.subsets.push_back(std::move(subset));
    }
    const SingleRingCode built = single_ring(plan);
    const BoundCheckReport report = subset_bound_check(built.code, plan);
    for (const BoundCheck& check : report.checks) {
      if (check.name == "intersection_maximal") continue;
      ASSERT_TRUE(check.pass) << check.name << ": " << check.detail;
    }
  }
}

// A node can sit in every cycle subset and still hold fewer packets than the
// node opening each round-robin pass; the checker reports it with a witness.
TEST(SubsetBoundCheckTest, IntersectionRuleCanFailAndIsReported) {
  const SubsetJumpPlan plan{2, 3, {{1, 2}, {1, 2}}};
  const SingleRingCode built = single_ring(plan);
  EXPECT_EQ(profiles(built.code).alpha_vec, (std::vector<int>{4, 2}));
  const BoundCheckReport report = subset_bound_check(built.code, plan);
  EXPECT_FALSE(report.all_pass());
  for (const BoundCheck& check : report.checks) {
    if (check.name == "intersection_maximal") {
      EXPECT_FALSE(check.pass);
      EXPECT_NE(check.detail.find("node 2"), std::string::npos);
    } else {
      EXPECT_TRUE(check.pass) << check.name;
    }
  }
}

TEST(RepairOracleProperty, MinimalSetsMatchBruteForce) {
  const FrCode reference = fixtures::code_7_5();
  for (int i = 1; i <= reference.node_count(); ++i)
    ASSERT_EQ(minimal_helper_sets(reference, i),
              oracle::minimal_covers(reference, i));

  std::mt19937 rng(7402);
  for (int round = 0; round < 80; ++round) {
    const FrCode code = oracle::random_code(rng);
    for (int i = 1; i <= code.node_count(); ++i) {
      ASSERT_EQ(minimal_helper_sets(code, i), oracle::minimal_covers(code, i))
          << "node " << i;
    }
  }
}

TEST(RepairOracleProperty, MinDegreeIsMinimumCoverSize) {
  std::mt19937 rng(7403);
  for (int round = 0; round < 80; ++round) {
    const FrCode code = oracle::random_code(rng);
    for (int i = 1; i <= code.node_count(); ++i) {
      const auto covers = oracle::minimal_covers(code, i);
      const auto degrees = repair_degree_set(code, i);
      ASSERT_EQ(degrees.front(), static_cast<int>(covers.front().size()));
    }
  }
}

TEST(RepairOracleProperty, SdrExistsIffHallCondition) {
  std::mt19937 rng(7404);
  for (int round = 0; round < 120; ++round) {
    const FrCode code = oracle::random_code(rng, 8, 6);
    for (int i = 1; i <= code.node_count(); ++i) {
      if (code.node(i).size() > 16) continue;
      ASSERT_EQ(sdr_repair_degree(code, i).has_value(),
                oracle::hall_condition(code, i))
          << "node " << i;
    }
  }
}

TEST(RepairOracleProperty, UniformReplicationLeavesNoOrphans) {
  std::mt19937 rng(7405);
  std::uniform_int_distribution<int> theta_pick(2, 7), rho_pick(2, 3);
  for (int round = 0; round < 100; ++round) {
    // Uniform rho >= 2 with every copy on its own node.
    const int theta = theta_pick(rng), rho = rho_pick(rng);
    const int n = std::uniform_int_distribution<int>(rho, rho + 4)(rng);
    std::vector<std::vector<int>> nodes(static_cast<std::size_t>(n));
    std::vector<int> holders(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) holders[static_cast<std::size_t>(i)] = i;
    for (int p = 1; p <= theta; ++p) {
      std::shuffle(holders.begin(), holders.end(), rng);
      for (int c = 0; c < rho; ++c)
        nodes[static_cast<std::size_t>(holders[static_cast<std::size_t>(c)])]
            .push_back(p);
    }
    const FrCode code(std::move(nodes), theta);
    const Profiles p = profiles(code);
    ASSERT_TRUE(p.uniform_replication());
    ASSERT_EQ(p.rho, rho);
    ASSERT_TRUE(unrepairable_packets(code).empty());
  }
}

TEST(RepairScaleTest, LargeCodeFallsBackToGreedy) {
  // 24 nodes, each packet on two neighbours.
  const int n = 24;
  std::vector<std::vector<int>> nodes(n);
  for (int p = 1; p <= n; ++p) {
    nodes[static_cast<std::size_t>(p - 1)].push_back(p);
    nodes[static_cast<std::size_t>(p % n)].push_back(p);
  }
  const FrCode code(std::move(nodes), n);
  const NodeRepair nr = analyze_node(code, 1);
  EXPECT_TRUE(nr.approximate);
  ASSERT_EQ(nr.minimal_helper_sets.size(), 1u);
  // The emitted set still covers everything the node stores.
  std::set<int> held;
  for (int h : nr.minimal_helper_sets.front())
    for (int p : code.node(h)) held.insert(p);
  for (int p : code.node(1)) EXPECT_TRUE(held.count(p));
}
