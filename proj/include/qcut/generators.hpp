#pragma once

#include "qcut/circuit.hpp"
#include "qcut/network.hpp"

#include <cstdint>
#include <optional>

namespace qcut {

struct NetworkGenParams {
  int numNodes = 10;
  double edgeProbability = 0.5;
  double storageLow = 0.6; ///< fractions of numQubits / numNodes
  double storageHigh = 1.4;
  double execLow = 0.3;
  double execHigh = 0.7;
  std::optional<int> fixedExecMem; ///< overrides the exec range when set
  int numQubits = 50;
  std::uint64_t seed = 0;
};

struct CircuitGenParams {
  int numQubits = 50;
  int gatesPerQubit = 50;
  double binaryFraction = 0.5;
  std::uint64_t seed = 0;
};

/// Integer range [ceil(lo * avg), floor(hi * avg)], or the integer nearest
/// the middle when that is empty.
std::pair<int, int> capacity_range(double lo, double hi, double avg);

/// Erdős–Rényi graph redrawn until connected, then random capacities with
/// enough total storage. Errors: InvalidParameters, GenerationExhausted.
Network gen_network(const NetworkGenParams& params);

/// Errors: InvalidParameters.
Circuit gen_circuit(const CircuitGenParams& params);

} // namespace qcut
