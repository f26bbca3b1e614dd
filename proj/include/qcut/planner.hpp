#pragma once

#include "qcut/coverage.hpp"
#include "qcut/execution.hpp"
#include "qcut/network.hpp"
#include "qcut/tabu.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qcut {

struct Teleportation {
  Qubit qubit = 0;
  Node target = 0;
  Instant instant = 0;
  int cost = 0;
  auto operator<=>(const Teleportation&) const = default;
};

/// One segment [start, end] of a plan. After merge_adjacent_migrations a
/// migration may run past `end` into later segments whose home for its
/// qubit is unchanged.
struct SegmentPlan {
  Instant start = 0;
  Instant end = 0;
  Assignment assignment;
  std::vector<Migration> migrations;
  bool operator==(const SegmentPlan&) const = default;
};

struct Plan {
  std::vector<Instant> cuts;
  std::vector<SegmentPlan> segments;
  std::vector<Teleportation> teleports;
  long totalCost = 0;

  [[nodiscard]] long migrationCost() const;
  [[nodiscard]] long teleportCost() const;
  [[nodiscard]] int numMigrations() const;
  bool operator==(const Plan&) const = default;
};

struct SolveParams {
  TabuParams tabu;
  double alpha = 0.4;
  bool greedy = false; ///< greedy_cover instead of iterative_cover
  Execution exec = Execution::Parallel;
};

struct SegmentSolution {
  Assignment assignment;
  std::vector<Migration> migrations;
  long cost = 0;
};

/// Interaction matrix, tabu search (starting from `seed` when given), cover,
/// repair. Errors: Uncoverable, InsufficientStorage, IrreparableCapacity.
SegmentSolution solve_segment(const CircuitView& view, const Network& n,
                              const DistanceMatrix& d, const SolveParams& params,
                              const std::optional<Assignment>& seed = std::nullopt);

struct TeleportStep {
  std::vector<Teleportation> teleports;
  long cost = 0;
};

TeleportStep teleports_between(const Assignment& prev, const Assignment& next,
                               Instant t, const DistanceMatrix& d);

/// Stitches consecutive segment solutions into a plan with teleports and
/// total cost.
Plan assemble_plan(const std::vector<SegmentPlan>& segments,
                   const DistanceMatrix& d);

/// Single segment, no cuts.
Plan dqcm_plan(const Circuit& c, const Network& n, const DistanceMatrix& d,
               const SolveParams& params);

/// Left-to-right cut placement.
Plan sequence_plan(const Circuit& c, const Network& n, const DistanceMatrix& d,
                   const SolveParams& params);

/// Repeatedly adds the best cut anywhere in the circuit while that strictly
/// lowers the total. Candidate evaluations of a round run concurrently when
/// `params.exec` is Parallel; results are identical either way.
Plan split_plan(const Circuit& c, const Network& n, const DistanceMatrix& d,
                const SolveParams& params);

/// Cheaper of sequence_plan and split_plan (ties: split), then merged.
Plan overall_plan(const Circuit& c, const Network& n, const DistanceMatrix& d,
                  const SolveParams& params);

/// Joins a migration ending at a cut with an identical one starting there
/// when the qubit keeps its home and the result stays feasible.
Plan merge_adjacent_migrations(const Plan& p, const Circuit& c,
                               const Network& n);

/// Every violation found, as "<kind>: <detail>". Kinds: malformed, storage
/// invalid, migration invalid, uncovered gate, infeasible, teleport mismatch,
/// cost mismatch. Empty means valid.
std::vector<std::string> validate_plan(const Plan& p, const Circuit& c,
                                       const Network& n);

enum class Algorithm { Dqcm, DqcmGreedy, Sequence, Split, Overall };

[[nodiscard]] std::string_view to_string(Algorithm a);
/// Errors: InvalidParameters.
Algorithm parse_algorithm(std::string_view name);

Plan run_algorithm(Algorithm algo, const Circuit& c, const Network& n,
                   const DistanceMatrix& d, const SolveParams& params);

} // namespace qcut
