#pragma once

#include "qcut/generators.hpp"
#include "qcut/planner.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace qcut {

enum class SweepParam {
  NumQubits,
  NumNodes,
  EdgeProbability,
  GatesPerQubit,
  BinaryFraction,
  ExecMem
};

[[nodiscard]] std::string_view to_string(SweepParam p);
/// Errors: InvalidParameters.
SweepParam parse_sweep_param(std::string_view name);

struct SweepConfig {
  SweepParam varying = SweepParam::NumQubits;
  std::vector<double> values{20};
  int numQubits = 20;
  int numNodes = 5;
  double edgeProbability = 0.5;
  int gatesPerQubit = 20;
  double binaryFraction = 0.5;
  std::optional<int> execMem;
  std::vector<Algorithm> algorithms{Algorithm::Dqcm, Algorithm::DqcmGreedy,
                                    Algorithm::Sequence, Algorithm::Split};
  std::vector<std::uint64_t> seeds;
  int scaleFactor = 1; ///< divides qubit and per-qubit gate counts
  int jobs = 1;
  bool timing = false; ///< otherwise runtime_ms is written as 0
  std::optional<std::filesystem::path> planDir;
};

/// Errors: InvalidParameters.
void check_config(const SweepConfig& cfg);

/// Errors: FormatError, InvalidParameters.
SweepConfig sweep_config_from_text(const std::string& text);

struct Instance {
  Circuit circuit;
  Network network;
};

/// The instance of one sweep cell. Shared by every algorithm of the cell.
Instance make_instance(const SweepConfig& cfg, double value, std::uint64_t seed);

struct SweepRow {
  std::string param;
  std::string value;
  std::string algorithm;
  std::uint64_t seed = 0;
  long totalCost = 0;
  long migrationCost = 0;
  long teleportCost = 0;
  int numCuts = 0;
  double runtimeMs = 0;
  bool valid = false;
};

/// One row per (value, algorithm, seed), ordered that way. Cells run on up
/// to cfg.jobs threads. Failing cells yield valid=false rows.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

std::string sweep_csv(const std::vector<SweepRow>& rows);

} // namespace qcut
