#pragma once

#include "qcut/coverage.hpp"

#include <span>
#include <vector>

namespace qcut {

struct ViolationRow {
  Node node = 0;
  Instant instant = 0;
  int occupancy = 0;
  int capacity = 0;
  bool operator==(const ViolationRow&) const = default;
};

/// Rows whose occupancy exceeds execution memory; empty iff feasible.
struct ViolationReport {
  std::vector<ViolationRow> rows;
  [[nodiscard]] bool feasible() const noexcept { return rows.empty(); }
};

/// Exact occupancy sweep. A migration occupies its target at every instant
/// strictly inside (start, end).
ViolationReport check_feasible(std::span<const Migration> ms, const Network& n,
                               Instant horizon);

/// For every nonlocal gate of the view (same order as nonlocal_gates), the
/// indices of the migrations taking part in covering it. Empty entries are
/// uncovered gates.
std::vector<std::vector<int>> coverage_map(std::span<const Migration> ms,
                                           const CircuitView& view,
                                           const Assignment& a);

/// True when every nonlocal gate of the view is covered.
bool covers_all(std::span<const Migration> ms, const CircuitView& view,
                const Assignment& a);

/// Shrinks offending migrations into instantaneous ones until execution
/// memory holds everywhere. Each round converts, among the migrations on a
/// violated row, the one covering the fewest gates (ties: shortest, then
/// lexicographic), emitting [t-1, t+1] only for gates nothing else covers.
/// Coverage of the input is preserved. Errors: IrreparableCapacity.
std::vector<Migration> repair(std::vector<Migration> ms, const Network& n,
                              const CircuitView& view, const Assignment& a);

} // namespace qcut
