#include "qcut/errors.hpp"
#include "qcut/generators.hpp"
#include "qcut/serialization.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <set>

namespace qcut {
namespace {

TEST(CapacityRange, Examples) {
  EXPECT_EQ(capacity_range(0.6, 1.4, 10), std::make_pair(6, 14));
  EXPECT_EQ(capacity_range(0.3, 0.7, 4), std::make_pair(2, 2));
  EXPECT_EQ(capacity_range(0.3, 0.7, 2), std::make_pair(1, 1));
  // [ceil 0.3, floor 0.7] is empty, so the midpoint 0.5 rounds to 1.
  EXPECT_EQ(capacity_range(0.3, 0.7, 1), std::make_pair(1, 1));
  EXPECT_EQ(capacity_range(0.3, 0.7, 5), std::make_pair(2, 3));
}

TEST(GenNetwork, AlwaysConnectedWithEnoughStorage) {
  for (const double p : {0.3, 0.5, 1.0}) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      NetworkGenParams params;
      params.numNodes = 2 + static_cast<int>(seed % 9);
      params.edgeProbability = p;
      params.numQubits = 5 + static_cast<int>(seed % 40);
      params.seed = seed;
      const Network n = gen_network(params);
      EXPECT_EQ(n.numNodes, params.numNodes);
      EXPECT_NO_THROW(all_pairs_distance(n));
      EXPECT_GE(std::accumulate(n.storage.begin(), n.storage.end(), 0),
                params.numQubits);
      for (const int e : n.execMem) {
        EXPECT_GE(e, 1);
      }
    }
  }
}

TEST(GenNetwork, GivesUpOnSparseGraphs) {
  NetworkGenParams params;
  params.numNodes = 40;
  params.edgeProbability = 0.01;
  EXPECT_THROW(gen_network(params), GenerationExhausted);
}

TEST(GenNetwork, CompleteGraphAtProbabilityOne) {
  NetworkGenParams params;
  params.numNodes = 7;
  params.edgeProbability = 1.0;
  const Network n = gen_network(params);
  EXPECT_EQ(n.edges.size(), 21U);
}

TEST(GenNetwork, CapacitiesFollowRanges) {
  NetworkGenParams params;
  params.numNodes = 5;
  params.numQubits = 50;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    params.seed = seed;
    const Network n = gen_network(params);
    for (int p = 0; p < n.numNodes; ++p) {
      EXPECT_GE(n.storage[p], 6);
      EXPECT_GE(n.execMem[p], 3);
      EXPECT_LE(n.execMem[p], 7);
    }
  }
  params.fixedExecMem = 2;
  const Network fixed = gen_network(params);
  EXPECT_EQ(fixed.execMem, std::vector<int>(5, 2));
}

TEST(GenNetwork, RejectsBadParameters) {
  NetworkGenParams params;
  params.edgeProbability = 0;
  EXPECT_THROW(gen_network(params), InvalidParameters);
  params = {};
  params.numNodes = 0;
  EXPECT_THROW(gen_network(params), InvalidParameters);
  params = {};
  params.storageLow = 2;
  EXPECT_THROW(gen_network(params), InvalidParameters);
}

TEST(GenCircuit, ShapeAndOperands) {
  CircuitGenParams params;
  params.numQubits = 7;
  params.gatesPerQubit = 30;
  params.seed = 5;
  const Circuit c = gen_circuit(params);
  EXPECT_EQ(c.numQubits(), 7);
  EXPECT_EQ(c.numGates(), 210);
  for (const Gate& g : c.gates()) {
    EXPECT_GE(g.first, 0);
    EXPECT_LT(g.first, 7);
    if (g.isBinary()) {
      EXPECT_NE(g.first, g.second);
      EXPECT_GE(g.second, 0);
      EXPECT_LT(g.second, 7);
    }
  }
}

TEST(GenCircuit, BinaryFractionAndOperandSpread) {
  CircuitGenParams params;
  params.numQubits = 100;
  params.gatesPerQubit = 100;
  params.binaryFraction = 0.5;
  params.seed = 11;
  const Circuit c = gen_circuit(params);
  ASSERT_EQ(c.numGates(), 10000);
  int binary = 0;
  std::vector<int> second(100, 0);
  for (const Gate& g : c.gates()) {
    if (g.isBinary()) {
      ++binary;
      ++second[g.second];
    }
  }
  EXPECT_LT(std::abs(binary / 10000.0 - 0.5), 0.02);
  // Roughly 50 hits per qubit; every qubit must be reachable as second operand.
  EXPECT_GT(*std::min_element(second.begin(), second.end()), 15);
  EXPECT_LT(*std::max_element(second.begin(), second.end()), 100);
}

TEST(GenCircuit, ExtremeFractions) {
  CircuitGenParams params;
  params.numQubits = 4;
  params.gatesPerQubit = 10;
  params.binaryFraction = 0;
  const Circuit unary = gen_circuit(params);
  for (const Gate& g : unary.gates()) {
    EXPECT_FALSE(g.isBinary());
  }
  params.binaryFraction = 1;
  const Circuit binary = gen_circuit(params);
  for (const Gate& g : binary.gates()) {
    EXPECT_TRUE(g.isBinary());
  }
  params.numQubits = 1;
  EXPECT_THROW(gen_circuit(params), InvalidParameters);
  params.binaryFraction = 1.5;
  EXPECT_THROW(gen_circuit(params), InvalidParameters);
}

TEST(Generators, SameSeedSameBytes) {
  NetworkGenParams np;
  np.seed = 99;
  CircuitGenParams cp;
  cp.seed = 99;
  EXPECT_EQ(network_to_text(gen_network(np)), network_to_text(gen_network(np)));
  EXPECT_EQ(circuit_to_text(gen_circuit(cp)), circuit_to_text(gen_circuit(cp)));
  CircuitGenParams other = cp;
  other.seed = 100;
  EXPECT_NE(circuit_to_text(gen_circuit(cp)), circuit_to_text(gen_circuit(other)));
}

} // namespace
} // namespace qcut
