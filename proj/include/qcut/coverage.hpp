#pragma once

#include "qcut/circuit.hpp"
#include "qcut/network.hpp"
#include "qcut/tabu.hpp"

#include <compare>
#include <vector>

namespace qcut {

/// Linked copy of `qubit` held at `target` over the open interval
/// (start, end). Endpoints are even instants, so the interval covers exactly
/// the gates whose instants lie strictly between them.
struct Migration {
  Qubit qubit = 0;
  Node target = 0;
  Instant start = 0;
  Instant end = 0;
  int cost = 0;

  [[nodiscard]] bool contains(Instant t) const noexcept {
    return start < t && t < end;
  }
  [[nodiscard]] bool isInstantaneous() const noexcept {
    return end - start == 2;
  }
  auto operator<=>(const Migration&) const = default;
};

enum class CoverMode { HomeOnly, General };

struct NonlocalGate {
  int index = 0; ///< position in the circuit's gate list
  Qubit a = 0;
  Qubit b = 0;
  Instant instant = 0;
};

/// Binary gates in the view whose operands live on different nodes.
std::vector<NonlocalGate> nonlocal_gates(const CircuitView& view,
                                         const Assignment& a);

/// One maximal unary-free interval of a qubit, offered to one target node.
struct Candidate {
  Qubit qubit = 0;
  Node target = 0;
  Instant start = 0;
  Instant end = 0;
  int cost = 0;
  std::vector<int> homeGates; ///< nonlocal gates it home-covers on its own
  std::vector<int> pairGates; ///< nonlocal gates it can cover with a partner
};

/// A single candidate, or two candidates of different qubits at the same
/// target that jointly cover `pairGates`.
struct CoverageUnit {
  int first = 0;
  int second = -1;
  std::vector<int> pairGates;
  int cost = 0;

  [[nodiscard]] bool isPair() const noexcept { return second >= 0; }
};

struct CandidateSet {
  CircuitView view;
  std::vector<NonlocalGate> gates;
  std::vector<Candidate> candidates;
  std::vector<CoverageUnit> units;
  std::vector<std::vector<int>> unitsCovering; ///< per gate
};

/// Errors: none. Pair units only appear in General mode and only at nodes
/// with at least two execution-memory slots.
CandidateSet enumerate_candidates(const CircuitView& view, const Assignment& a,
                                  const Network& n, const DistanceMatrix& d,
                                  CoverMode mode = CoverMode::General);

struct Selection {
  std::vector<Migration> migrations;
  std::vector<int> covered; ///< positions in CandidateSet::gates
  long cost = 0;
};

/// Budgeted multiplicative-weights selection. Every pick must fit both the
/// budget and the execution memory (counted afresh per call). Units are
/// scored by
///   newlyCovered / (cost + sum_migrations max_rows weight(p,t) / e_p)
/// and each touched row weight is multiplied by 2^(1/e_p) per occupying
/// migration after a pick.
/// A selected candidate is emitted trimmed to the span of the gates it
/// newly covers.
Selection ag_select(long budget, const std::vector<char>& uncovered,
                    const CandidateSet& cs, const Network& n);

struct AlphaCover {
  Selection selection;
  long budget = 0;
};

/// Smallest budget whose ag_select covers at least alpha of the uncovered
/// gates, found by binary search over [1, |uncovered| * diameter]. Coverage
/// is made monotone in the budget by keeping the best smaller-budget result.
/// Errors: Uncoverable.
AlphaCover cover_alpha(const std::vector<char>& uncovered,
                       const CandidateSet& cs, const Network& n,
                       const DistanceMatrix& d, double alpha = 0.4);

/// Repeats cover_alpha until every nonlocal gate is covered. The union may
/// exceed execution memory; see repair(). Errors: Uncoverable.
std::vector<Migration> iterative_cover(const CircuitView& view,
                                       const Assignment& a, const Network& n,
                                       const DistanceMatrix& d,
                                       CoverMode mode = CoverMode::General,
                                       double alpha = 0.4);

/// Baseline: repeatedly takes the unit covering the most uncovered gates,
/// ignoring execution memory. Errors: Uncoverable.
std::vector<Migration> greedy_cover(const CircuitView& view,
                                    const Assignment& a, const Network& n,
                                    const DistanceMatrix& d,
                                    CoverMode mode = CoverMode::General);

} // namespace qcut
