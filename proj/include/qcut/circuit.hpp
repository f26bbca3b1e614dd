#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace qcut {

using Qubit = std::int32_t;
using Node = std::int32_t;
/// Position on the global timebase. Gates sit on odd instants, teleportation
/// and migration endpoints on even ones.
using Instant = std::int32_t;

enum class GateKind : std::uint8_t { Unary, Binary };

struct Gate {
  GateKind kind = GateKind::Unary;
  Qubit first = 0;
  Qubit second = -1; ///< -1 for unary gates
  Instant instant = 1;

  [[nodiscard]] bool isBinary() const noexcept {
    return kind == GateKind::Binary;
  }
  [[nodiscard]] bool actsOn(Qubit q) const noexcept {
    return first == q || (isBinary() && second == q);
  }
  /// The other operand of a binary gate.
  [[nodiscard]] Qubit partner(Qubit q) const noexcept {
    return first == q ? second : first;
  }
  bool operator==(const Gate&) const = default;
};

struct GateDescriptor {
  GateKind kind;
  std::vector<Qubit> operands;
};

/// Gate k (0-based) occupies instant 2k+1; horizon is 2 * gate count.
/// Immutable once built.
class Circuit {
public:
  Circuit() = default;

  [[nodiscard]] int numQubits() const noexcept { return numQubits_; }
  [[nodiscard]] int numGates() const noexcept {
    return static_cast<int>(gates_.size());
  }
  [[nodiscard]] Instant horizon() const noexcept { return 2 * numGates(); }
  [[nodiscard]] std::span<const Gate> gates() const noexcept { return gates_; }
  [[nodiscard]] const Gate& gateAt(Instant t) const { return gates_[t / 2]; }

  /// Sorted instants of unary gates on q.
  [[nodiscard]] std::span<const Instant> unaryInstants(Qubit q) const {
    return unary_[q];
  }
  /// Sorted indices of the gates (of either kind) acting on q.
  [[nodiscard]] std::span<const int> gatesOn(Qubit q) const {
    return touching_[q];
  }

  bool operator==(const Circuit& o) const {
    return numQubits_ == o.numQubits_ && gates_ == o.gates_;
  }

private:
  friend Circuit build_circuit(int, std::span<const GateDescriptor>);
  friend Circuit build_circuit(int, std::vector<Gate>);

  int numQubits_ = 0;
  std::vector<Gate> gates_;
  std::vector<std::vector<Instant>> unary_;
  std::vector<std::vector<int>> touching_;
};

/// Errors: OperandOutOfRange, DuplicateBinaryOperand.
Circuit build_circuit(int numQubits, std::span<const GateDescriptor> gates);
/// Same, from gates whose instants are ignored and reassigned in order.
Circuit build_circuit(int numQubits, std::vector<Gate> gates);

/// Contiguous slice of a circuit between two even instants. Gate instants
/// keep their global values.
struct CircuitView {
  const Circuit* circuit = nullptr;
  Instant start = 0;
  Instant end = 0;

  [[nodiscard]] std::span<const Gate> gates() const {
    return circuit->gates().subspan(static_cast<std::size_t>(start / 2),
                                    static_cast<std::size_t>((end - start) / 2));
  }
  [[nodiscard]] int numQubits() const { return circuit->numQubits(); }
  [[nodiscard]] bool contains(Instant t) const {
    return start < t && t < end;
  }
};

[[nodiscard]] inline CircuitView whole(const Circuit& c) {
  return {&c, 0, c.horizon()};
}

struct InducedPair {
  Circuit circuit; ///< qubit 0 is the first requested qubit, 1 the second
  std::vector<Instant> originalInstant; ///< retained gate index -> instant
};

/// Keeps the binary gates acting exactly on {q1, q2} and the unary gates on
/// either of them, in order, re-timed from 1. Errors: SameQubit,
/// OperandOutOfRange.
InducedPair induced_pair_circuit(const Circuit& c, Qubit q1, Qubit q2);
InducedPair induced_pair_circuit(const CircuitView& view, Qubit q1, Qubit q2);

/// Splits at the given even cut instants. Errors: OddCut, CutOutOfRange.
std::vector<CircuitView> segment(const Circuit& c, std::span<const Instant> cuts);

/// Even instants that directly precede a binary gate, excluding 0. These are
/// the teleportation points the planners consider.
std::vector<Instant> candidate_cuts(const CircuitView& view);

} // namespace qcut
