#include "qcut/repair.hpp"

#include "qcut/errors.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <tuple>

namespace qcut {

ViolationReport check_feasible(std::span<const Migration> ms, const Network& n,
                               Instant horizon) {
  Instant last = horizon;
  for (const auto& m : ms) {
    last = std::max(last, m.end);
  }
  const auto width = static_cast<std::size_t>(last) + 2;
  std::vector<std::vector<int>> delta(static_cast<std::size_t>(n.numNodes));
  for (const auto& m : ms) {
    auto& dv = delta[m.target];
    if (dv.empty()) {
      dv.assign(width, 0);
    }
    if (m.end - m.start >= 2) {
      ++dv[static_cast<std::size_t>(m.start) + 1];
      --dv[static_cast<std::size_t>(m.end)];
    }
  }
  ViolationReport report;
  for (Node p = 0; p < n.numNodes; ++p) {
    if (delta[p].empty()) {
      continue;
    }
    int occ = 0;
    for (std::size_t t = 0; t < width; ++t) {
      occ += delta[p][t];
      if (occ > n.execMem[p]) {
        report.rows.push_back(
            {p, static_cast<Instant>(t), occ, n.execMem[p]});
      }
    }
  }
  return report;
}

namespace {

/// Coverage bookkeeping for one view and assignment.
class CoverageIndex {
public:
  CoverageIndex(std::span<const Migration> ms, const CircuitView& view,
                const Assignment& a)
      : ms_(ms), a_(a), gates_(nonlocal_gates(view, a)),
        byQubit_(static_cast<std::size_t>(view.numQubits())) {
    for (int i = 0; i < static_cast<int>(ms.size()); ++i) {
      byQubit_[ms[i].qubit].push_back(i);
    }
  }

  [[nodiscard]] const std::vector<NonlocalGate>& gates() const { return gates_; }

  /// Migrations taking part in covering gate g, ignoring `skip`.
  [[nodiscard]] std::vector<int> participants(std::size_t g, int skip = -1) const {
    const auto& gate = gates_[g];
    const Node ha = a_[gate.a];
    const Node hb = a_[gate.b];
    std::vector<int> out;
    const auto at = [&](Qubit q, Node p) {
      std::vector<int> found;
      for (const int i : byQubit_[q]) {
        if (i != skip && ms_[i].target == p && ms_[i].contains(gate.instant)) {
          found.push_back(i);
        }
      }
      return found;
    };
    for (const int i : at(gate.a, hb)) {
      out.push_back(i);
    }
    for (const int i : at(gate.b, ha)) {
      out.push_back(i);
    }
    std::set<Node> pairTargets;
    for (const int i : byQubit_[gate.a]) {
      if (i != skip && ms_[i].target != ha && ms_[i].target != hb &&
          ms_[i].contains(gate.instant)) {
        pairTargets.insert(ms_[i].target);
      }
    }
    for (const Node p : pairTargets) {
      const auto left = at(gate.a, p);
      const auto right = at(gate.b, p);
      if (!right.empty()) {
        out.insert(out.end(), left.begin(), left.end());
        out.insert(out.end(), right.begin(), right.end());
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

private:
  std::span<const Migration> ms_;
  const Assignment& a_;
  std::vector<NonlocalGate> gates_;
  std::vector<std::vector<int>> byQubit_;
};

} // namespace

std::vector<std::vector<int>> coverage_map(std::span<const Migration> ms,
                                           const CircuitView& view,
                                           const Assignment& a) {
  const CoverageIndex index(ms, view, a);
  std::vector<std::vector<int>> out(index.gates().size());
  for (std::size_t g = 0; g < out.size(); ++g) {
    out[g] = index.participants(g);
  }
  return out;
}

bool covers_all(std::span<const Migration> ms, const CircuitView& view,
                const Assignment& a) {
  const auto map = coverage_map(ms, view, a);
  return std::none_of(map.begin(), map.end(),
                      [](const auto& v) { return v.empty(); });
}

std::vector<Migration> repair(std::vector<Migration> ms, const Network& n,
                              const CircuitView& view, const Assignment& a) {
  for (const auto& m : ms) {
    if (n.execMem[m.target] < 1) {
      throw IrreparableCapacity("migration targets node " +
                                std::to_string(m.target) +
                                " which has no execution memory");
    }
  }
  while (true) {
    const auto report = check_feasible(ms, n, view.end);
    if (report.feasible()) {
      return ms;
    }
    std::set<std::pair<Node, Instant>> violated;
    for (const auto& r : report.rows) {
      violated.emplace(r.node, r.instant);
    }
    const CoverageIndex index(ms, view, a);
    const std::size_t numGates = index.gates().size();
    std::vector<std::vector<int>> gatesOf(ms.size());
    for (std::size_t g = 0; g < numGates; ++g) {
      for (const int i : index.participants(g)) {
        gatesOf[i].push_back(static_cast<int>(g));
      }
    }
    const auto exclusive = [&](int i) {
      std::vector<int> out;
      for (const int g : gatesOf[i]) {
        if (index.participants(static_cast<std::size_t>(g), i).empty()) {
          out.push_back(g);
        }
      }
      return out;
    };
    const auto onViolatedRow = [&](const Migration& m) {
      const auto it = violated.lower_bound({m.target, m.start + 1});
      return it != violated.end() && it->first == m.target &&
             it->second < m.end;
    };

    int pick = -1;
    std::vector<int> pickExclusive;
    auto pickKey = std::make_tuple(0UL, 0, 0, 0, 0, 0);
    for (int i = 0; i < static_cast<int>(ms.size()); ++i) {
      const auto& m = ms[static_cast<std::size_t>(i)];
      if (!onViolatedRow(m)) {
        continue;
      }
      auto ex = exclusive(i);
      // An instantaneous migration only changes by disappearing.
      if (m.isInstantaneous() && !ex.empty()) {
        continue;
      }
      const auto key = std::make_tuple(gatesOf[i].size(), m.end - m.start,
                                       m.start, m.qubit, m.target, m.end);
      if (pick < 0 || key < pickKey) {
        pick = i;
        pickKey = key;
        pickExclusive = std::move(ex);
      }
    }
    if (pick < 0) {
      const auto& r = report.rows.front();
      throw IrreparableCapacity(
          "node " + std::to_string(r.node) + " needs " +
          std::to_string(r.occupancy) + " execution slots at instant " +
          std::to_string(r.instant) + " but has " +
          std::to_string(r.capacity));
    }
    const Migration old = ms[static_cast<std::size_t>(pick)];
    ms.erase(ms.begin() + pick);
    for (const int g : pickExclusive) {
      const Instant t = index.gates()[static_cast<std::size_t>(g)].instant;
      ms.push_back({old.qubit, old.target, t - 1, t + 1, old.cost});
    }
  }
}

} // namespace qcut
