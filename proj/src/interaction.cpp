#include "qcut/interaction.hpp"

#include "qcut/errors.hpp"

#include <algorithm>
#include <utility>

namespace qcut {

int ms_hc_count(const Circuit& pairCircuit) {
  if (pairCircuit.numQubits() != 2) {
    throw NotTwoQubits("MS-HC needs a two-qubit circuit, got " +
                       std::to_string(pairCircuit.numQubits()));
  }
  const Instant horizon = pairCircuit.horizon();
  const auto nextUnary = [&](Qubit q, Instant t) {
    const auto u = pairCircuit.unaryInstants(q);
    const auto it = std::upper_bound(u.begin(), u.end(), t);
    return it == u.end() ? horizon : *it;
  };
  int count = 0;
  Instant coveredUntil = 0; // binary gates before this instant are covered
  for (const Gate& g : pairCircuit.gates()) {
    if (!g.isBinary() || g.instant < coveredUntil) {
      continue;
    }
    coveredUntil = std::max(nextUnary(0, g.instant), nextUnary(1, g.instant));
    ++count;
  }
  return count;
}

namespace {

std::vector<std::pair<Qubit, Qubit>> interacting_pairs(const CircuitView& view) {
  std::vector<std::pair<Qubit, Qubit>> pairs;
  for (const Gate& g : view.gates()) {
    if (g.isBinary()) {
      pairs.push_back(std::minmax(g.first, g.second));
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

} // namespace

InteractionMatrix interaction_matrix(const CircuitView& view, Execution exec) {
  const auto pairs = interacting_pairs(view);
  std::vector<int> counts(pairs.size(), 0);
  const auto n = static_cast<long>(pairs.size());
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (long i = 0; i < n; ++i) {
      const auto [a, b] = pairs[static_cast<std::size_t>(i)];
      counts[static_cast<std::size_t>(i)] =
          ms_hc_count(induced_pair_circuit(view, a, b).circuit);
    }
  } else {
    for (long i = 0; i < n; ++i) {
      const auto [a, b] = pairs[static_cast<std::size_t>(i)];
      counts[static_cast<std::size_t>(i)] =
          ms_hc_count(induced_pair_circuit(view, a, b).circuit);
    }
  }
  InteractionMatrix w(view.numQubits());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    w.set(pairs[i].first, pairs[i].second, counts[i]);
  }
  return w;
}

InteractionMatrix interaction_matrix(const Circuit& c, Execution exec) {
  return interaction_matrix(whole(c), exec);
}

} // namespace qcut
