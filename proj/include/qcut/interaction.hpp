#pragma once

#include "qcut/circuit.hpp"
#include "qcut/execution.hpp"

#include <vector>

namespace qcut {

/// Symmetric matrix of w(q1, q2): the optimal number of migrations covering
/// the binary gates between two qubits placed on different computers.
class InteractionMatrix {
public:
  InteractionMatrix() = default;
  explicit InteractionMatrix(int n)
      : n_(n), w_(static_cast<std::size_t>(n) * n, 0) {}

  [[nodiscard]] int size() const noexcept { return n_; }
  [[nodiscard]] int operator()(Qubit a, Qubit b) const {
    return w_[static_cast<std::size_t>(a) * n_ + b];
  }
  void set(Qubit a, Qubit b, int value) {
    w_[static_cast<std::size_t>(a) * n_ + b] = value;
    w_[static_cast<std::size_t>(b) * n_ + a] = value;
  }
  bool operator==(const InteractionMatrix&) const = default;

private:
  int n_ = 0;
  std::vector<int> w_;
};

/// Furthest-right greedy interval cover on a two-qubit circuit: for the
/// earliest uncovered binary gate take whichever operand's unary-free
/// interval reaches further right (ties: qubit 0). Errors: NotTwoQubits.
int ms_hc_count(const Circuit& pairCircuit);

/// w over every pair sharing a binary gate inside the view.
InteractionMatrix interaction_matrix(const CircuitView& view,
                                     Execution exec = Execution::Parallel);
InteractionMatrix interaction_matrix(const Circuit& c,
                                     Execution exec = Execution::Parallel);

} // namespace qcut
