#include "qcut/generators.hpp"

#include "qcut/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <random>

namespace qcut {

namespace {

constexpr int kMaxAttempts = 1000;

bool connected(int numNodes, const std::vector<std::pair<Node, Node>>& edges) {
  std::vector<std::vector<Node>> adj(static_cast<std::size_t>(numNodes));
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<char> seen(static_cast<std::size_t>(numNodes), 0);
  std::queue<Node> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    const Node u = frontier.front();
    frontier.pop();
    for (const Node v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        frontier.push(v);
      }
    }
  }
  return reached == numNodes;
}

} // namespace

std::pair<int, int> capacity_range(double lo, double hi, double avg) {
  const auto a = static_cast<int>(std::ceil(lo * avg - 1e-9));
  const auto b = static_cast<int>(std::floor(hi * avg + 1e-9));
  if (a <= b) {
    return {a, b};
  }
  const auto mid = static_cast<int>(std::lround((lo + hi) / 2 * avg));
  return {mid, mid};
}

Network gen_network(const NetworkGenParams& params) {
  if (params.numNodes < 1 || params.numQubits < 0 ||
      !(params.edgeProbability > 0 && params.edgeProbability <= 1) ||
      params.storageLow > params.storageHigh || params.storageLow < 0 ||
      params.execLow > params.execHigh || params.execLow < 0 ||
      (params.fixedExecMem && *params.fixedExecMem < 0)) {
    throw InvalidParameters("invalid network generation parameters");
  }
  std::mt19937_64 rng(params.seed);
  const int np = params.numNodes;

  std::vector<std::pair<Node, Node>> edges;
  bool ok = false;
  for (int attempt = 0; attempt < kMaxAttempts && !ok; ++attempt) {
    edges.clear();
    std::bernoulli_distribution coin(params.edgeProbability);
    for (Node u = 0; u < np; ++u) {
      for (Node v = u + 1; v < np; ++v) {
        if (coin(rng)) {
          edges.emplace_back(u, v);
        }
      }
    }
    ok = connected(np, edges);
  }
  if (!ok) {
    throw GenerationExhausted("no connected graph after " +
                              std::to_string(kMaxAttempts) + " draws");
  }

  const double avg = static_cast<double>(params.numQubits) / np;
  const auto [sLo, sHi] =
      capacity_range(params.storageLow, params.storageHigh, avg);
  std::uniform_int_distribution<int> storageDist(sLo, sHi);
  std::vector<int> storage(static_cast<std::size_t>(np));
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    for (auto& s : storage) {
      s = storageDist(rng);
    }
    if (std::accumulate(storage.begin(), storage.end(), 0) >= params.numQubits) {
      break;
    }
  }
  for (int total = std::accumulate(storage.begin(), storage.end(), 0);
       total < params.numQubits; ++total) {
    ++*std::min_element(storage.begin(), storage.end());
  }

  std::vector<int> exec(static_cast<std::size_t>(np));
  if (params.fixedExecMem) {
    std::fill(exec.begin(), exec.end(), *params.fixedExecMem);
  } else {
    auto [eLo, eHi] = capacity_range(params.execLow, params.execHigh, avg);
    std::uniform_int_distribution<int> execDist(std::max(1, eLo),
                                                std::max(1, eHi));
    for (auto& e : exec) {
      e = execDist(rng);
    }
  }
  return make_network(np, std::move(edges), std::move(storage),
                      std::move(exec));
}

Circuit gen_circuit(const CircuitGenParams& params) {
  if (params.numQubits < 1 || params.gatesPerQubit < 0 ||
      !(params.binaryFraction >= 0 && params.binaryFraction <= 1) ||
      (params.binaryFraction > 0 && params.numQubits < 2)) {
    throw InvalidParameters("invalid circuit generation parameters");
  }
  std::mt19937_64 rng(params.seed);
  std::bernoulli_distribution binary(params.binaryFraction);
  std::uniform_int_distribution<Qubit> any(0, params.numQubits - 1);
  std::uniform_int_distribution<Qubit> other(0, std::max(0, params.numQubits - 2));
  const long total = static_cast<long>(params.numQubits) * params.gatesPerQubit;
  std::vector<Gate> gates;
  gates.reserve(static_cast<std::size_t>(total));
  for (long k = 0; k < total; ++k) {
    const Qubit a = any(rng);
    if (binary(rng)) {
      Qubit b = other(rng);
      if (b >= a) {
        ++b;
      }
      gates.push_back({GateKind::Binary, a, b, 0});
    } else {
      gates.push_back({GateKind::Unary, a, -1, 0});
    }
  }
  return build_circuit(params.numQubits, std::move(gates));
}

} // namespace qcut
