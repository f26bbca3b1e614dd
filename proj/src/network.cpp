#include "qcut/network.hpp"

#include "qcut/errors.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <string>

namespace qcut {

Network make_network(int numNodes, std::vector<std::pair<Node, Node>> edges,
                     std::vector<int> storage, std::vector<int> execMem) {
  if (numNodes < 1) {
    throw InvalidNetwork("network needs at least one node");
  }
  if (static_cast<int>(storage.size()) != numNodes ||
      static_cast<int>(execMem.size()) != numNodes) {
    throw InvalidNetwork("capacity vectors must have one entry per node");
  }
  for (int i = 0; i < numNodes; ++i) {
    if (storage[i] < 0 || execMem[i] < 0) {
      throw InvalidNetwork("negative capacity at node " + std::to_string(i));
    }
  }
  std::set<std::pair<Node, Node>> seen;
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= numNodes || v >= numNodes) {
      throw InvalidNetwork("edge endpoint out of range");
    }
    if (u == v) {
      throw InvalidNetwork("self-loop at node " + std::to_string(u));
    }
    if (!seen.insert(std::minmax(u, v)).second) {
      throw InvalidNetwork("duplicate edge " + std::to_string(u) + "-" +
                           std::to_string(v));
    }
  }
  return Network{numNodes, std::move(edges), std::move(storage),
                 std::move(execMem)};
}

DistanceMatrix all_pairs_distance(const Network& n) {
  std::vector<std::vector<Node>> adj(static_cast<std::size_t>(n.numNodes));
  for (const auto& [u, v] : n.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  DistanceMatrix d(n.numNodes);
  std::vector<int> dist(static_cast<std::size_t>(n.numNodes));
  for (Node s = 0; s < n.numNodes; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::queue<Node> frontier;
    dist[s] = 0;
    frontier.push(s);
    while (!frontier.empty()) {
      const Node u = frontier.front();
      frontier.pop();
      for (const Node v : adj[u]) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          frontier.push(v);
        }
      }
    }
    for (Node t = 0; t < n.numNodes; ++t) {
      if (dist[t] < 0) {
        throw Disconnected("no path between nodes " + std::to_string(s) +
                           " and " + std::to_string(t));
      }
      d.at(s, t) = dist[t];
    }
  }
  return d;
}

int diameter(const DistanceMatrix& d) {
  int best = 0;
  for (Node u = 0; u < d.size(); ++u) {
    for (Node v = 0; v < d.size(); ++v) {
      best = std::max(best, d(u, v));
    }
  }
  return best;
}

void check_capacity(const Network& n, int numQubits) {
  const int total = std::accumulate(n.storage.begin(), n.storage.end(), 0);
  if (total < numQubits) {
    throw InsufficientStorage(numQubits - total);
  }
}

} // namespace qcut
