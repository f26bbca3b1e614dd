#include "qcut/circuit.hpp"

#include "qcut/errors.hpp"

#include <string>

namespace qcut {

namespace {

void check_operand(int numQubits, Qubit q) {
  if (q < 0 || q >= numQubits) {
    throw OperandOutOfRange("operand " + std::to_string(q) +
                            " out of range for " + std::to_string(numQubits) +
                            " qubits");
  }
}

} // namespace

Circuit build_circuit(int numQubits, std::vector<Gate> gates) {
  if (numQubits < 0) {
    throw OperandOutOfRange("negative qubit count");
  }
  Circuit c;
  c.numQubits_ = numQubits;
  c.unary_.resize(static_cast<std::size_t>(numQubits));
  c.touching_.resize(static_cast<std::size_t>(numQubits));
  for (std::size_t k = 0; k < gates.size(); ++k) {
    Gate& g = gates[k];
    check_operand(numQubits, g.first);
    g.instant = static_cast<Instant>(2 * k + 1);
    if (g.isBinary()) {
      check_operand(numQubits, g.second);
      if (g.first == g.second) {
        throw DuplicateBinaryOperand("binary gate " + std::to_string(k) +
                                     " uses qubit " + std::to_string(g.first) +
                                     " twice");
      }
      c.touching_[g.second].push_back(static_cast<int>(k));
    } else {
      g.second = -1;
      c.unary_[g.first].push_back(g.instant);
    }
    c.touching_[g.first].push_back(static_cast<int>(k));
  }
  c.gates_ = std::move(gates);
  return c;
}

Circuit build_circuit(int numQubits, std::span<const GateDescriptor> gates) {
  std::vector<Gate> out;
  out.reserve(gates.size());
  for (const auto& d : gates) {
    const std::size_t expected = d.kind == GateKind::Binary ? 2 : 1;
    if (d.operands.size() != expected) {
      throw OperandOutOfRange("gate expects " + std::to_string(expected) +
                              " operand(s), got " +
                              std::to_string(d.operands.size()));
    }
    Gate g;
    g.kind = d.kind;
    g.first = d.operands[0];
    g.second = expected == 2 ? d.operands[1] : -1;
    out.push_back(g);
  }
  return build_circuit(numQubits, std::move(out));
}

InducedPair induced_pair_circuit(const CircuitView& view, Qubit q1, Qubit q2) {
  const int n = view.numQubits();
  check_operand(n, q1);
  check_operand(n, q2);
  if (q1 == q2) {
    throw SameQubit("induced pair circuit needs two distinct qubits");
  }
  InducedPair out;
  std::vector<Gate> kept;
  const auto& c = *view.circuit;
  // Merge the two per-qubit gate lists instead of scanning the whole circuit.
  const auto a = c.gatesOn(q1);
  const auto b = c.gatesOn(q2);
  const int lo = view.start / 2;
  const int hi = view.end / 2;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    int k;
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      k = a[i++];
    } else if (i == a.size() || b[j] < a[i]) {
      k = b[j++];
    } else {
      k = a[i++];
      ++j;
    }
    if (k < lo || k >= hi) {
      continue;
    }
    const Gate& g = c.gates()[static_cast<std::size_t>(k)];
    Gate r;
    if (g.isBinary()) {
      const bool exact = (g.first == q1 && g.second == q2) ||
                         (g.first == q2 && g.second == q1);
      if (!exact) {
        continue;
      }
      r.kind = GateKind::Binary;
      r.first = 0;
      r.second = 1;
    } else {
      r.kind = GateKind::Unary;
      r.first = g.first == q1 ? 0 : 1;
    }
    kept.push_back(r);
    out.originalInstant.push_back(g.instant);
  }
  out.circuit = build_circuit(2, std::move(kept));
  return out;
}

InducedPair induced_pair_circuit(const Circuit& c, Qubit q1, Qubit q2) {
  return induced_pair_circuit(whole(c), q1, q2);
}

std::vector<CircuitView> segment(const Circuit& c,
                                 std::span<const Instant> cuts) {
  std::vector<CircuitView> views;
  Instant prev = 0;
  for (const Instant t : cuts) {
    if (t % 2 != 0) {
      throw OddCut("cut at odd instant " + std::to_string(t));
    }
    if (t <= prev || t >= c.horizon()) {
      throw CutOutOfRange("cut " + std::to_string(t) +
                          " is not strictly increasing inside (0, " +
                          std::to_string(c.horizon()) + ")");
    }
    views.push_back({&c, prev, t});
    prev = t;
  }
  views.push_back({&c, prev, c.horizon()});
  return views;
}

std::vector<Instant> candidate_cuts(const CircuitView& view) {
  std::vector<Instant> out;
  for (const Gate& g : view.gates()) {
    const Instant t = g.instant - 1;
    if (g.isBinary() && t > view.start) {
      out.push_back(t);
    }
  }
  return out;
}

} // namespace qcut
