#pragma once

#include "qcut/circuit.hpp"
#include "qcut/interaction.hpp"
#include "qcut/network.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace qcut {

/// Qubit -> home node, constant within a segment.
struct Assignment {
  std::vector<Node> home;

  [[nodiscard]] int numQubits() const noexcept {
    return static_cast<int>(home.size());
  }
  Node operator[](Qubit q) const { return home[static_cast<std::size_t>(q)]; }
  auto operator<=>(const Assignment&) const = default;
};

struct TabuParams {
  int iterations = 20;
  int tabuListLength = 10;
  std::uint64_t seed = 0;
};

[[nodiscard]] bool storage_valid(const Assignment& a, const Network& n);

/// Sum over unordered pairs of w(q1, q2) * dist(home(q1), home(q2)).
long assignment_cost(const Assignment& a, const InteractionMatrix& w,
                     const DistanceMatrix& d);

/// Single-qubit moves into nodes with spare storage, then swaps of qubits
/// living on different nodes.
std::vector<Assignment> neighbors(const Assignment& a, const Network& n);

/// Shuffles the qubits and fills nodes in index order up to their storage.
Assignment random_assignment(int numQubits, const Network& n,
                             std::uint64_t seed);

/// Tabu search over storage-valid assignments. Neighbour costs are
/// evaluated incrementally; the tabu list holds Zobrist hashes. When every
/// neighbour is tabu the best one is taken anyway. Errors:
/// InsufficientStorage.
Assignment tabu_search(const InteractionMatrix& w, const Network& n,
                       const DistanceMatrix& d, const TabuParams& params,
                       const std::optional<Assignment>& initial = std::nullopt);

} // namespace qcut
