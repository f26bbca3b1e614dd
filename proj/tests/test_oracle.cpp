#include "qcut/errors.hpp"
#include "qcut/interaction.hpp"
#include "qcut/oracle.hpp"
#include "qcut/planner.hpp"
#include "qcut/repair.hpp"
#include "qcut/tabu.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

namespace qcut {
namespace {

using test::circuit_of;

TEST(OraclePairCover, Examples) {
  EXPECT_EQ(oracle_pair_cover(circuit_of(2, {})), 0);
  EXPECT_EQ(oracle_pair_cover(circuit_of(2, {{0, 1}, {1, 0}, {0, 1}})), 1);
  EXPECT_EQ(oracle_pair_cover(circuit_of(2, {{0, 1}, {0}, {0, 1}})), 1);
  EXPECT_EQ(oracle_pair_cover(circuit_of(2, {{0, 1}, {0}, {1}, {0, 1}})), 2);
  EXPECT_EQ(oracle_pair_cover(
                circuit_of(2, {{0, 1}, {0}, {1}, {0, 1}, {1}, {0}, {0, 1}})),
            3);
  EXPECT_THROW(oracle_pair_cover(circuit_of(3, {{0, 1}})), NotTwoQubits);
}

TEST(OracleCover, SingleGate) {
  const Circuit c = circuit_of(2, {{0, 1}});
  const Network n = test::path(2, {1, 1}, {1, 1});
  const auto d = all_pairs_distance(n);
  const auto cover =
      oracle_cover(whole(c), Assignment{{0, 1}}, n, d, CoverMode::General);
  ASSERT_TRUE(cover.has_value());
  EXPECT_EQ(cover->cost, 1);
  EXPECT_FALSE(oracle_cover(whole(c), Assignment{{0, 1}}, n, d,
                            CoverMode::General, {}, 1)
                   .has_value());
}

TEST(OracleCover, DistanceCountsPerHop) {
  const Circuit c = circuit_of(2, {{0, 1}});
  const Network n = test::path(3, {1, 1, 1}, {1, 1, 1});
  const auto d = all_pairs_distance(n);
  // Pair mode meets in the middle for 1 + 1, home-only pays the full 2 hops.
  const auto home =
      oracle_cover(whole(c), Assignment{{0, 2}}, n, d, CoverMode::HomeOnly);
  const auto general =
      oracle_cover(whole(c), Assignment{{0, 2}}, n, d, CoverMode::General);
  ASSERT_TRUE(home && general);
  EXPECT_EQ(home->cost, 2);
  EXPECT_EQ(general->cost, 2);
}

TEST(OracleCover, SharedPartnerMovesOnce) {
  const Circuit c = circuit_of(3, {{0, 2}, {1, 2}, {0, 2}, {1, 2}});
  const Network n = test::path(2, {2, 1}, {1, 1});
  const auto d = all_pairs_distance(n);
  const Assignment a{{0, 0, 1}};
  // Moving q2 to p0 once covers all four gates within one execution slot.
  const auto cover = oracle_cover(whole(c), a, n, d, CoverMode::HomeOnly);
  ASSERT_TRUE(cover.has_value());
  EXPECT_TRUE(check_feasible(cover->migrations, n, c.horizon()).feasible());
  EXPECT_TRUE(covers_all(cover->migrations, whole(c), a));
  EXPECT_EQ(cover->cost, 1);
}

TEST(OracleDqcm, FixtureOptimum) {
  const Circuit c = test::cex2();
  const Network n = test::cex2_network();
  const auto sol = oracle_dqcm(c, n);
  EXPECT_EQ(sol.cost, 2);
  EXPECT_TRUE(covers_all(sol.migrations, whole(c), sol.assignment));
  EXPECT_TRUE(check_feasible(sol.migrations, n, c.horizon()).feasible());
  EXPECT_EQ(oracle_dqc(c, n, 0), 2);
  EXPECT_EQ(oracle_dqc(c, n, 1), 2);
}

TEST(OracleDqcm, Errors) {
  const Network small = test::path(2, {1, 1}, {1, 1});
  EXPECT_THROW(oracle_dqcm(circuit_of(3, {{0, 1}}), small), InsufficientStorage);
  const Network big = test::path(4, {2, 2, 2, 2}, {1, 1, 1, 1});
  EXPECT_THROW(oracle_dqcm(circuit_of(2, {{0, 1}}), big), LimitExceeded);
  EXPECT_THROW(oracle_dqc(circuit_of(2, {{0, 1}}), small, 3), InvalidParameters);
  const Network noExec = test::path(2, {1, 1}, {0, 0});
  EXPECT_THROW(oracle_dqcm(circuit_of(2, {{0, 1}}), noExec), Uncoverable);
}

TEST(OracleDqc, NonIncreasingInCuts) {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto inst = test::random_tiny(seed, 4, 3, 9);
    long k0 = 0;
    try {
      k0 = oracle_dqc(inst.circuit, inst.network, 0);
    } catch (const InsufficientStorage&) {
      continue;
    }
    const long k1 = oracle_dqc(inst.circuit, inst.network, 1);
    const long k2 = oracle_dqc(inst.circuit, inst.network, 2);
    EXPECT_EQ(k0, oracle_dqcm(inst.circuit, inst.network).cost);
    EXPECT_LE(k1, k0) << seed;
    EXPECT_LE(k2, k1) << seed;
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

TEST(OracleBounds, HeuristicsNeverBeatOracle) {
  int checked = 0;
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    const auto inst = test::random_tiny(seed, 5, 3, 10);
    const auto d = all_pairs_distance(inst.network);
    SolveParams params;
    params.tabu.seed = seed;
    long opt = 0;
    try {
      opt = oracle_dqcm(inst.circuit, inst.network).cost;
    } catch (const InsufficientStorage&) {
      continue;
    }
    const Plan dq = dqcm_plan(inst.circuit, inst.network, d, params);
    EXPECT_GE(dq.totalCost, opt) << seed;
    const Plan all = overall_plan(inst.circuit, inst.network, d, params);
    if (all.cuts.size() <= 2) {
      EXPECT_GE(all.totalCost, oracle_dqc(inst.circuit, inst.network,
                                          static_cast<int>(all.cuts.size())))
          << seed;
    }
    ++checked;
  }
  EXPECT_GT(checked, 30);
}

TEST(OracleBounds, CoverNeverBeatsExactCover) {
  for (std::uint64_t seed = 200; seed < 260; ++seed) {
    const auto inst = test::random_tiny(seed, 5, 3, 12);
    const auto d = all_pairs_distance(inst.network);
    Assignment a;
    try {
      a = random_assignment(inst.circuit.numQubits(), inst.network, seed);
    } catch (const InsufficientStorage&) {
      continue;
    }
    const auto view = whole(inst.circuit);
    const auto exact = oracle_cover(view, a, inst.network, d, CoverMode::General);
    ASSERT_TRUE(exact.has_value()) << seed;
    const auto heuristic = repair(
        iterative_cover(view, a, inst.network, d), inst.network, view, a);
    long cost = 0;
    for (const auto& m : heuristic) {
      cost += m.cost;
    }
    EXPECT_GE(cost, exact->cost) << seed;
  }
}

} // namespace
} // namespace qcut
