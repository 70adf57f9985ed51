#include <flower/construction.hpp>

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace flower;

TEST(SubsetPacketCountTest, CeilingAndFloorSplit) {
  EXPECT_EQ(subset_packet_count(7, 3, 1), 3);
  EXPECT_EQ(subset_packet_count(7, 3, 2), 2);
  EXPECT_EQ(subset_packet_count(7, 3, 3), 2);
  for (int t = 1; t <= 3; ++t) EXPECT_EQ(subset_packet_count(6, 3, t), 2);
  EXPECT_THROW(subset_packet_count(7, 3, 0), SpecError);
  EXPECT_THROW(subset_packet_count(7, 3, 4), SpecError);
}

TEST(SingleRingTest, ReferencePlanCellByCell) {
  const SingleRingCode result = single_ring(fixtures::plan_8_7());
  const CycleTrace expected = {
      {{1, 1}, {2, 2}, {3, 4}, {4, 1}, {5, 2}, {6, 4}, {7, 1}},
      {{1, 5}, {2, 6}, {3, 7}, {4, 8}, {5, 5}, {6, 6}, {7, 7}},
      {{1, 2}, {2, 3}, {3, 5}, {4, 6}, {5, 7}, {6, 2}, {7, 3}},
  };
  EXPECT_EQ(result.trace, expected);
  EXPECT_EQ(result.code.node(1), (std::vector<int>{1, 4, 7}));
  EXPECT_EQ(result.code.node(2), (std::vector<int>{2, 5, 1, 6}));
  EXPECT_EQ(result.code.node(8), (std::vector<int>{4}));
  const Profiles p = profiles(result.code);
  EXPECT_EQ(p.alpha_vec, (std::vector<int>{3, 4, 2, 2, 3, 3, 3, 1}));
  EXPECT_EQ(p.alpha, 4);
}

TEST(SingleRingTest, FullRingGivesOnePacketPerNodePerCycle) {
  const SingleRingCode result =
      single_ring({4, 4, {{1, 2, 3, 4}, {1, 2, 3, 4}}});
  const Profiles p = profiles(result.code);
  for (int a : p.alpha_vec) EXPECT_EQ(a, 2);
}

TEST(SingleRingTest, UnevenSplit) {
  const SingleRingCode result = single_ring({3, 4, {{1, 2, 3}}});
  const Profiles p = profiles(result.code);
  EXPECT_EQ(p.alpha_vec, (std::vector<int>{2, 1, 1}));
}

TEST(SingleRingTest, RejectsBadPlans) {
  EXPECT_THROW(single_ring({3, 4, {{}}}), SpecError);
  EXPECT_THROW(single_ring({3, 4, {}}), SpecError);
  EXPECT_THROW(single_ring({3, 4, {{1, 4}}}), SpecError);  // node 4 of 3
}

TEST(SingleRingProperty, EveryCycleCoversAllPacketsOnce) {
  std::mt19937 rng(7301);
  std::uniform_int_distribution<int> small(1, 6);
  for (int round = 0; round < 100; ++round) {
    SubsetJumpPlan plan{small(rng), small(rng), {}};
    const int rho = small(rng);
    std::uniform_int_distribution<int> node(1, plan.n);
    for (int m = 0; m < rho; ++m) {
      std::vector<int> subset;
      const int size = std::uniform_int_distribution<int>(1, plan.n)(rng);
      for (int k = 0; k < size; ++k) subset.push_back(node(rng));
      plan.subsets.push_back(std::move(subset));
    }
    const SingleRingCode result = single_ring(plan);
    ASSERT_EQ(static_cast<int>(result.trace.size()), rho);
    for (const auto& cycle : result.trace) {
      std::vector<int> packets;
      for (const CycleDrop& drop : cycle) packets.push_back(drop.packet);
      std::sort(packets.begin(), packets.end());
      std::vector<int> everything;
      for (int p = 1; p <= plan.theta; ++p) everything.push_back(p);
      ASSERT_EQ(packets, everything);
    }
    // Per-node capacity is the sum of the per-cycle counts the ceiling/floor
    // rule predicts.
    const Profiles prof = profiles(result.code);
    for (int i = 1; i <= plan.n; ++i) {
      int predicted = 0;
      for (const auto& raw : plan.subsets) {
        std::vector<int> subset(raw);
        std::sort(subset.begin(), subset.end());
        subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
        const auto it = std::find(subset.begin(), subset.end(), i);
        if (it == subset.end()) continue;
        const int t = static_cast<int>(it - subset.begin()) + 1;
        predicted += subset_packet_count(plan.theta,
                                         static_cast<int>(subset.size()), t);
      }
      ASSERT_EQ(prof.alpha_vec[static_cast<std::size_t>(i) - 1], predicted);
    }
  }
}

TEST(MultiRingTest, JumpExampleSequence) {
  const JumpFunctions jumps{JumpFn::constant(1),
                            JumpFn::table({{1, 0}})};
  const NodeSequence s = multi_ring_node_seq(3, 4, 2, jumps);
  EXPECT_EQ(s.terms, (std::vector<int>{1, 3, 2, 1, 2, 1, 3, 2}));
  EXPECT_EQ(multi_ring_node_seq(3, 4, 2, jumps, EvalMethod::Closed).terms,
            s.terms);
}

TEST(MultiRingTest, ReferenceConstruction) {
  const NodeSequence s =
      multi_ring_node_seq(5, 6, 2, fixtures::jumps_const_1_0());
  EXPECT_EQ(s.terms, (std::vector<int>{1, 3, 5, 2, 4, 1, 2, 4, 1, 3, 5, 2}));
  const FrCode code = multi_ring(5, 6, 2, fixtures::jumps_const_1_0());
  EXPECT_EQ(code.node(1), (std::vector<int>{1, 6, 3}));
  EXPECT_EQ(code.node(2), (std::vector<int>{4, 1, 6}));
  EXPECT_EQ(code.node(3), (std::vector<int>{2, 4}));
  EXPECT_EQ(code.node(4), (std::vector<int>{5, 2}));
  EXPECT_EQ(code.node(5), (std::vector<int>{3, 5}));
  EXPECT_EQ(profiles(code).alpha_vec, (std::vector<int>{3, 3, 2, 2, 2}));
}

TEST(MultiRingTest, ZeroJumpsWalkTheRing) {
  const JumpFunctions zero{JumpFn::constant(0), JumpFn::constant(0)};
  const NodeSequence s = multi_ring_node_seq(4, 3, 2, zero);
  EXPECT_EQ(s.terms, (std::vector<int>{1, 2, 3, 4, 1, 2}));
  const FrCode square = multi_ring(4, 4, 3, zero);
  for (int a : profiles(square).alpha_vec) EXPECT_EQ(a, 3);
}

TEST(MultiRingTest, MissingTablePointFails) {
  const JumpFunctions gappy{JumpFn::table({{1, 1}}), JumpFn::constant(0)};
  EXPECT_THROW(multi_ring_node_seq(3, 4, 2, gappy), SpecError);
  // External point 1 is required once the second cycle starts.
  const JumpFunctions no_external{JumpFn::constant(1), JumpFn::table({})};
  EXPECT_THROW(multi_ring_node_seq(3, 4, 2, no_external), SpecError);
  EXPECT_NO_THROW(multi_ring_node_seq(3, 4, 1, no_external));
}

TEST(MultiRingTest, RejectsNegativeJumps) {
  EXPECT_THROW(JumpFn::constant(-1), SpecError);
  EXPECT_THROW(JumpFn::table({{1, -2}}), SpecError);
}

TEST(MultiRingProperty, ClosedFormMatchesRecursion) {
  std::mt19937 rng(7302);
  for (int n = 2; n <= 8; ++n) {
    for (int theta = 2; theta <= 8; ++theta) {
      for (int rho = 1; rho <= 3; ++rho) {
        for (int round = 0; round < 10; ++round) {
          std::uniform_int_distribution<int> value(0, 2 * n);
          std::map<long long, int> internal, external;
          for (int i = 1; i <= rho * theta; ++i)
            if (i % theta != 0) internal[i] = value(rng);
          for (int m = 1; m <= rho; ++m) external[m] = value(rng);
          const JumpFunctions jumps{JumpFn::table(std::move(internal)),
                                    JumpFn::table(std::move(external))};
          const NodeSequence rec =
              multi_ring_node_seq(n, theta, rho, jumps, EvalMethod::Recursive);
          const NodeSequence closed =
              multi_ring_node_seq(n, theta, rho, jumps, EvalMethod::Closed);
          ASSERT_EQ(rec.terms, closed.terms)
              << "n=" << n << " theta=" << theta << " rho=" << rho;
        }
      }
    }
  }
}

TEST(MultiRingProperty, UniformReplicationAndCountingIdentity) {
  std::mt19937 rng(7303);
  std::uniform_int_distribution<int> small(2, 8), rho_pick(1, 3),
      value(0, 12);
  for (int round = 0; round < 100; ++round) {
    const int n = small(rng), theta = small(rng), rho = rho_pick(rng);
    const JumpFunctions jumps{JumpFn::constant(value(rng)),
                              JumpFn::constant(value(rng))};
    const FrCode code = multi_ring(n, theta, rho, jumps);
    const Profiles p = profiles(code);
    ASSERT_TRUE(p.uniform_replication());
    ASSERT_EQ(p.rho, rho);
    long long total = 0;
    for (int a : p.alpha_vec) total += a;
    ASSERT_EQ(total, static_cast<long long>(rho) * theta);
  }
}
