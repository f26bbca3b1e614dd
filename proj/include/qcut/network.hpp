#pragma once

#include "qcut/circuit.hpp"

#include <utility>
#include <vector>

namespace qcut {

/// Heterogeneous quantum network. `storage` bounds resident qubits per node,
/// `execMem` bounds simultaneous linked copies per node.
struct Network {
  int numNodes = 0;
  std::vector<std::pair<Node, Node>> edges;
  std::vector<int> storage;
  std::vector<int> execMem;

  bool operator==(const Network&) const = default;
};

/// Validates ranges, self-loops, duplicate edges and capacity signs.
/// Connectivity is checked by all_pairs_distance. Errors: InvalidNetwork.
Network make_network(int numNodes, std::vector<std::pair<Node, Node>> edges,
                     std::vector<int> storage, std::vector<int> execMem);

/// Hop counts between every pair of nodes.
class DistanceMatrix {
public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * n, 0) {}

  [[nodiscard]] int size() const noexcept { return n_; }
  [[nodiscard]] int operator()(Node u, Node v) const {
    return d_[static_cast<std::size_t>(u) * n_ + v];
  }
  int& at(Node u, Node v) { return d_[static_cast<std::size_t>(u) * n_ + v]; }

private:
  int n_ = 0;
  std::vector<int> d_;
};

/// Breadth-first search from every node. Errors: Disconnected.
DistanceMatrix all_pairs_distance(const Network& n);

int diameter(const DistanceMatrix& d);

/// Errors: InsufficientStorage carrying the deficit.
void check_capacity(const Network& n, int numQubits);

} // namespace qcut
