#pragma once

#include "qcut/coverage.hpp"

#include <chrono>
#include <limits>
#include <optional>
#include <vector>

namespace qcut {

/// Size caps for the brute-force solvers. Hard ceilings: 6 qubits,
/// 14 gates, 3 nodes.
struct OracleLimits {
  int maxQubits = 6;
  int maxGates = 14;
  int maxNodes = 3;
  int maxMigrations = 16; ///< search depth cap
  std::chrono::milliseconds timeout{60000};
};

/// Minimum number of migrations covering every binary gate of a two-qubit
/// circuit, by subset search over maximal unary-free intervals in order of
/// subset size. Errors: NotTwoQubits, LimitExceeded.
int oracle_pair_cover(const Circuit& pairCircuit, const OracleLimits& limits = {});

struct ExactCover {
  long cost = 0;
  std::vector<Migration> migrations;
};

/// Cheapest memory-feasible cover for a fixed assignment by branch and bound
/// on the earliest uncovered gate. Candidate intervals span every hull of
/// nonlocal gates on the migrated qubit. Returns nullopt when no cover
/// cheaper than `bound` exists. Errors: LimitExceeded.
std::optional<ExactCover> oracle_cover(
    const CircuitView& view, const Assignment& a, const Network& n,
    const DistanceMatrix& d, CoverMode mode, const OracleLimits& limits = {},
    long bound = std::numeric_limits<long>::max());

struct OracleSolution {
  long cost = 0;
  Assignment assignment;
  std::vector<Migration> migrations;
};

/// Optimum over every storage-valid assignment. Errors: LimitExceeded,
/// Uncoverable, InsufficientStorage.
OracleSolution oracle_dqcm(const Circuit& c, const Network& n,
                           CoverMode mode = CoverMode::General,
                           const OracleLimits& limits = {});

/// Optimum over cut sets of at most `maxCuts` candidate instants (<= 2),
/// with per-segment assignments chosen jointly. Errors: LimitExceeded,
/// InvalidParameters, Uncoverable.
long oracle_dqc(const Circuit& c, const Network& n, int maxCuts,
                const OracleLimits& limits = {});

} // namespace qcut
