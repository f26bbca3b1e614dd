#include "qcut/coverage.hpp"

#include "qcut/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <tuple>

namespace qcut {

std::vector<NonlocalGate> nonlocal_gates(const CircuitView& view,
                                         const Assignment& a) {
  std::vector<NonlocalGate> out;
  const int base = view.start / 2;
  int k = base;
  for (const Gate& g : view.gates()) {
    if (g.isBinary() && a[g.first] != a[g.second]) {
      out.push_back({k, g.first, g.second, g.instant});
    }
    ++k;
  }
  return out;
}

namespace {

/// Maximal unary-free intervals of one qubit inside the view, as even
/// endpoints. Intervals too short to contain a gate are dropped.
std::vector<std::pair<Instant, Instant>> free_intervals(const CircuitView& view,
                                                        Qubit q) {
  std::vector<std::pair<Instant, Instant>> out;
  Instant lo = view.start;
  const auto emit = [&](Instant hi) {
    if (hi - lo >= 2) {
      out.emplace_back(lo, hi);
    }
  };
  for (const Instant u : view.circuit->unaryInstants(q)) {
    if (u <= view.start) {
      continue;
    }
    if (u >= view.end) {
      break;
    }
    emit(u - 1);
    lo = u + 1;
  }
  emit(view.end);
  return out;
}

} // namespace

CandidateSet enumerate_candidates(const CircuitView& view, const Assignment& a,
                                  const Network& n, const DistanceMatrix& d,
                                  CoverMode mode) {
  CandidateSet cs;
  cs.view = view;
  cs.gates = nonlocal_gates(view, a);

  const int nq = view.numQubits();
  const int np = n.numNodes;
  // index[q] : per interval, per node -> candidate id or -1
  std::vector<std::vector<std::pair<Instant, Instant>>> intervals(
      static_cast<std::size_t>(nq));
  std::vector<std::vector<int>> index(static_cast<std::size_t>(nq));
  for (Qubit q = 0; q < nq; ++q) {
    intervals[q] = free_intervals(view, q);
    index[q].assign(intervals[q].size() * static_cast<std::size_t>(np), -1);
    for (std::size_t i = 0; i < intervals[q].size(); ++i) {
      for (Node p = 0; p < np; ++p) {
        if (p == a[q] || n.execMem[p] < 1) {
          continue;
        }
        index[q][i * np + p] = static_cast<int>(cs.candidates.size());
        cs.candidates.push_back({q, p, intervals[q][i].first,
                                 intervals[q][i].second, d(a[q], p), {}, {}});
      }
    }
  }
  const auto lookup = [&](Qubit q, Node p, Instant t) {
    const auto& iv = intervals[q];
    const auto it = std::upper_bound(
        iv.begin(), iv.end(), t,
        [](Instant x, const std::pair<Instant, Instant>& r) { return x < r.first; });
    if (it == iv.begin()) {
      return -1;
    }
    const auto i = static_cast<std::size_t>(std::prev(it) - iv.begin());
    if (!(iv[i].first < t && t < iv[i].second)) {
      return -1;
    }
    return index[q][i * np + p];
  };

  std::map<std::pair<int, int>, std::vector<int>> pairUnits;
  for (int g = 0; g < static_cast<int>(cs.gates.size()); ++g) {
    const auto& gate = cs.gates[static_cast<std::size_t>(g)];
    const Node ha = a[gate.a];
    const Node hb = a[gate.b];
    if (const int c = lookup(gate.a, hb, gate.instant); c >= 0) {
      cs.candidates[c].homeGates.push_back(g);
    }
    if (const int c = lookup(gate.b, ha, gate.instant); c >= 0) {
      cs.candidates[c].homeGates.push_back(g);
    }
    if (mode != CoverMode::General) {
      continue;
    }
    for (Node p = 0; p < np; ++p) {
      if (p == ha || p == hb || n.execMem[p] < 2) {
        continue;
      }
      const int ca = lookup(gate.a, p, gate.instant);
      const int cb = lookup(gate.b, p, gate.instant);
      cs.candidates[ca].pairGates.push_back(g);
      cs.candidates[cb].pairGates.push_back(g);
      pairUnits[std::minmax(ca, cb)].push_back(g);
    }
  }

  cs.unitsCovering.resize(cs.gates.size());
  for (int c = 0; c < static_cast<int>(cs.candidates.size()); ++c) {
    const auto& cand = cs.candidates[static_cast<std::size_t>(c)];
    if (cand.homeGates.empty()) {
      continue;
    }
    for (const int g : cand.homeGates) {
      cs.unitsCovering[g].push_back(static_cast<int>(cs.units.size()));
    }
    cs.units.push_back({c, -1, {}, cand.cost});
  }
  for (auto& [key, gates] : pairUnits) {
    const int u = static_cast<int>(cs.units.size());
    for (const int g : gates) {
      cs.unitsCovering[g].push_back(u);
    }
    for (const int c : {key.first, key.second}) {
      for (const int g : cs.candidates[c].homeGates) {
        cs.unitsCovering[g].push_back(u);
      }
    }
    cs.units.push_back({key.first, key.second, std::move(gates),
                        cs.candidates[key.first].cost +
                            cs.candidates[key.second].cost});
  }
  for (auto& list : cs.unitsCovering) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return cs;
}

namespace {

struct Span {
  Instant lo = std::numeric_limits<Instant>::max();
  Instant hi = std::numeric_limits<Instant>::min();

  void add(Instant t) {
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  [[nodiscard]] bool empty() const { return lo > hi; }
  /// Even-endpoint interval whose interior holds exactly [lo, hi].
  [[nodiscard]] Instant start() const { return lo - 1; }
  [[nodiscard]] Instant end() const { return hi + 1; }
};

/// What a unit would add given the current set of still-needed gates.
struct UnitEffect {
  int newlyCovered = 0;
  Span first;
  Span second;
};

template <typename Free>
UnitEffect evaluate(const CandidateSet& cs, const CoverageUnit& u, Free&& free) {
  UnitEffect e;
  const auto& a = cs.candidates[static_cast<std::size_t>(u.first)];
  for (const int g : a.homeGates) {
    if (free(g)) {
      ++e.newlyCovered;
      e.first.add(cs.gates[g].instant);
    }
  }
  if (!u.isPair()) {
    return e;
  }
  int joint = 0;
  for (const int g : u.pairGates) {
    if (free(g)) {
      ++joint;
      e.first.add(cs.gates[g].instant);
      e.second.add(cs.gates[g].instant);
    }
  }
  if (joint == 0) {
    return UnitEffect{}; // dominated by the single units
  }
  e.newlyCovered += joint;
  const auto& b = cs.candidates[static_cast<std::size_t>(u.second)];
  for (const int g : b.homeGates) {
    if (free(g)) {
      ++e.newlyCovered;
      e.second.add(cs.gates[g].instant);
    }
  }
  return e;
}

template <typename Free, typename Mark>
void apply(const CandidateSet& cs, const CoverageUnit& u, const UnitEffect& e,
           Free&& free, Mark&& mark, Selection& sel) {
  const auto emit = [&](int c, const Span& s) {
    const auto& cand = cs.candidates[static_cast<std::size_t>(c)];
    sel.migrations.push_back(
        {cand.qubit, cand.target, s.start(), s.end(), cand.cost});
    sel.cost += cand.cost;
  };
  const auto take = [&](const std::vector<int>& gates) {
    for (const int g : gates) {
      if (free(g)) {
        mark(g);
        sel.covered.push_back(g);
      }
    }
  };
  take(cs.candidates[static_cast<std::size_t>(u.first)].homeGates);
  emit(u.first, e.first);
  if (u.isPair()) {
    take(u.pairGates);
    take(cs.candidates[static_cast<std::size_t>(u.second)].homeGates);
    emit(u.second, e.second);
  }
}

/// Deterministic order among equally good units.
auto tie_key(const CandidateSet& cs, const CoverageUnit& u, const UnitEffect& e,
             int index) {
  const auto& c = cs.candidates[static_cast<std::size_t>(u.first)];
  return std::make_tuple(u.cost, e.first.start(), c.qubit, c.target, index);
}

/// Occupancy and multiplicative weights over (node, instant) rows of a view.
class RowLedger {
public:
  RowLedger(const CircuitView& view, const Network& n)
      : start_(view.start), len_(view.end - view.start + 1), n_(&n) {
    rows_.resize(static_cast<std::size_t>(n.numNodes));
    for (Node p = 0; p < n.numNodes; ++p) {
      if (n.execMem[p] >= 1) {
        auto& r = rows_[p];
        r.occ.assign(static_cast<std::size_t>(len_), 0);
        r.weight.assign(static_cast<std::size_t>(len_), 1.0);
        rebuild(p);
      }
    }
  }

  /// Largest row weight over the interior of [s, e].
  [[nodiscard]] double weight(Node p, Instant s, Instant e) const {
    const auto& r = rows_[p];
    const std::size_t lo = idx(s + 1);
    const std::size_t hi = idx(e);
    const int k = std::bit_width(hi - lo) - 1;
    return std::max(r.weightMax[k][lo],
                    r.weightMax[k][hi - (std::size_t{1} << k)]);
  }
  [[nodiscard]] int countAtLeast(Node p, Instant s, Instant e, int slack) const {
    const auto& prefix = slack == 0 ? rows_[p].full : rows_[p].near;
    return prefix[idx(e)] - prefix[idx(s + 1)];
  }
  void occupy(Node p, Instant s, Instant e) {
    auto& r = rows_[p];
    const double factor = std::exp2(1.0 / n_->execMem[p]);
    for (Instant t = s + 1; t < e; ++t) {
      ++r.occ[idx(t)];
      r.weight[idx(t)] *= factor;
    }
    rebuild(p);
  }

private:
  struct Rows {
    std::vector<int> occ;
    std::vector<double> weight;
    std::vector<std::vector<double>> weightMax; ///< sparse table
    std::vector<int> full; ///< prefix count of rows at capacity
    std::vector<int> near; ///< prefix count of rows within one of capacity
  };

  [[nodiscard]] std::size_t idx(Instant t) const {
    return static_cast<std::size_t>(t - start_);
  }
  void rebuild(Node p) {
    auto& r = rows_[p];
    const int cap = n_->execMem[p];
    r.weightMax.assign(1, r.weight);
    for (std::size_t w = 2; w <= static_cast<std::size_t>(len_); w *= 2) {
      const auto& prev = r.weightMax.back();
      std::vector<double> next(prev.size() - w / 2);
      for (std::size_t i = 0; i < next.size(); ++i) {
        next[i] = std::max(prev[i], prev[i + w / 2]);
      }
      r.weightMax.push_back(std::move(next));
    }
    r.full.assign(static_cast<std::size_t>(len_) + 1, 0);
    r.near.assign(static_cast<std::size_t>(len_) + 1, 0);
    for (std::size_t i = 0; i < static_cast<std::size_t>(len_); ++i) {
      r.full[i + 1] = r.full[i] + (r.occ[i] >= cap ? 1 : 0);
      r.near[i + 1] = r.near[i] + (r.occ[i] >= cap - 1 ? 1 : 0);
    }
  }

  Instant start_;
  int len_;
  const Network* n_;
  std::vector<Rows> rows_;
};

} // namespace

Selection ag_select(long budget, const std::vector<char>& uncovered,
                    const CandidateSet& cs, const Network& n) {
  Selection sel;
  std::vector<char> need = uncovered;
  const auto free = [&](int g) { return need[static_cast<std::size_t>(g)] != 0; };
  const auto mark = [&](int g) { need[static_cast<std::size_t>(g)] = 0; };
  RowLedger rows(cs.view, n);

  while (true) {
    int bestUnit = -1;
    UnitEffect bestEffect;
    double bestScore = 0.0;
    for (int ui = 0; ui < static_cast<int>(cs.units.size()); ++ui) {
      const auto& u = cs.units[static_cast<std::size_t>(ui)];
      if (sel.cost + u.cost > budget) {
        continue;
      }
      const UnitEffect e = evaluate(cs, u, free);
      if (e.newlyCovered == 0) {
        continue;
      }
      const Node p = cs.candidates[static_cast<std::size_t>(u.first)].target;
      const Span& s1 = e.first;
      if (rows.countAtLeast(p, s1.start(), s1.end(), 0) > 0) {
        continue;
      }
      double load = rows.weight(p, s1.start(), s1.end());
      if (u.isPair()) {
        const Span& s2 = e.second;
        if (rows.countAtLeast(p, s2.start(), s2.end(), 0) > 0) {
          continue;
        }
        const Instant lo = std::max(s1.start(), s2.start());
        const Instant hi = std::min(s1.end(), s2.end());
        if (lo < hi && rows.countAtLeast(p, lo, hi, 1) > 0) {
          continue;
        }
        load += rows.weight(p, s2.start(), s2.end());
      }
      const double score =
          e.newlyCovered / (u.cost + load / n.execMem[p]);
      const bool wins = [&] {
        if (bestUnit < 0) {
          return true;
        }
        const double tol = 1e-12 * std::max(score, bestScore);
        if (score > bestScore + tol) {
          return true;
        }
        if (score < bestScore - tol) {
          return false;
        }
        const auto& bu = cs.units[static_cast<std::size_t>(bestUnit)];
        return tie_key(cs, u, e, ui) < tie_key(cs, bu, bestEffect, bestUnit);
      }();
      if (wins) {
        bestUnit = ui;
        bestEffect = e;
        bestScore = score;
      }
    }
    if (bestUnit < 0) {
      break;
    }
    const auto& u = cs.units[static_cast<std::size_t>(bestUnit)];
    const Node p = cs.candidates[static_cast<std::size_t>(u.first)].target;
    rows.occupy(p, bestEffect.first.start(), bestEffect.first.end());
    if (u.isPair()) {
      rows.occupy(p, bestEffect.second.start(), bestEffect.second.end());
    }
    apply(cs, u, bestEffect, free, mark, sel);
  }
  std::sort(sel.covered.begin(), sel.covered.end());
  return sel;
}

namespace {

void require_coverable(const std::vector<char>& uncovered,
                       const CandidateSet& cs) {
  for (std::size_t g = 0; g < uncovered.size(); ++g) {
    if (uncovered[g] && cs.unitsCovering[g].empty()) {
      const auto& gate = cs.gates[g];
      throw Uncoverable("no migration can cover gate at instant " +
                        std::to_string(gate.instant) + " (qubits " +
                        std::to_string(gate.a) + ", " +
                        std::to_string(gate.b) + ")");
    }
  }
}

} // namespace

AlphaCover cover_alpha(const std::vector<char>& uncovered,
                       const CandidateSet& cs, const Network& n,
                       const DistanceMatrix& d, double alpha) {
  require_coverable(uncovered, cs);
  const long remaining = std::count(uncovered.begin(), uncovered.end(), 1);
  if (remaining == 0) {
    return {};
  }
  const long need = std::max(
      1L, static_cast<long>(std::ceil(alpha * static_cast<double>(remaining) - 1e-9)));
  long maxBudget = remaining * std::max(1, diameter(d));
  for (std::size_t g = 0; g < uncovered.size(); ++g) {
    if (!uncovered[g]) {
      continue;
    }
    // A lone pair-covered gate can cost up to twice the diameter.
    int cheapest = std::numeric_limits<int>::max();
    for (const int u : cs.unitsCovering[g]) {
      cheapest = std::min(cheapest, cs.units[static_cast<std::size_t>(u)].cost);
    }
    maxBudget = std::max(maxBudget, static_cast<long>(cheapest));
  }

  std::map<long, Selection> tried;
  const auto run = [&](long c) -> const Selection& {
    auto it = tried.find(c);
    if (it == tried.end()) {
      it = tried.emplace(c, ag_select(c, uncovered, cs, n)).first;
    }
    return it->second;
  };
  // Smallest tried budget <= c reaching the target, if any.
  const auto reached = [&](long c) -> std::optional<long> {
    for (const auto& [b, s] : tried) {
      if (b > c) {
        break;
      }
      if (static_cast<long>(s.covered.size()) >= need) {
        return b;
      }
    }
    return std::nullopt;
  };

  const Selection& top = run(maxBudget);
  if (static_cast<long>(top.covered.size()) < need) {
    // Memory blocks the target even with an unlimited budget; settle for the
    // best progress available.
    if (top.covered.empty()) {
      throw Uncoverable("execution memory admits no covering migration");
    }
    return {top, maxBudget};
  }
  long lo = 1;
  long hi = maxBudget;
  while (lo < hi) {
    const long mid = lo + (hi - lo) / 2;
    run(mid);
    if (reached(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  const long b = *reached(hi);
  return {tried.at(b), b};
}

std::vector<Migration> iterative_cover(const CircuitView& view,
                                       const Assignment& a, const Network& n,
                                       const DistanceMatrix& d, CoverMode mode,
                                       double alpha) {
  const CandidateSet cs = enumerate_candidates(view, a, n, d, mode);
  std::vector<char> uncovered(cs.gates.size(), 1);
  require_coverable(uncovered, cs);
  std::vector<Migration> out;
  while (std::find(uncovered.begin(), uncovered.end(), 1) != uncovered.end()) {
    const AlphaCover step = cover_alpha(uncovered, cs, n, d, alpha);
    for (const int g : step.selection.covered) {
      uncovered[static_cast<std::size_t>(g)] = 0;
    }
    out.insert(out.end(), step.selection.migrations.begin(),
               step.selection.migrations.end());
  }
  return out;
}

std::vector<Migration> greedy_cover(const CircuitView& view,
                                    const Assignment& a, const Network& n,
                                    const DistanceMatrix& d, CoverMode mode) {
  const CandidateSet cs = enumerate_candidates(view, a, n, d, mode);
  std::vector<char> need(cs.gates.size(), 1);
  require_coverable(need, cs);
  const auto free = [&](int g) { return need[static_cast<std::size_t>(g)] != 0; };
  const auto mark = [&](int g) { need[static_cast<std::size_t>(g)] = 0; };
  Selection sel;
  while (true) {
    int bestUnit = -1;
    UnitEffect bestEffect;
    for (int ui = 0; ui < static_cast<int>(cs.units.size()); ++ui) {
      const auto& u = cs.units[static_cast<std::size_t>(ui)];
      const UnitEffect e = evaluate(cs, u, free);
      if (e.newlyCovered == 0) {
        continue;
      }
      if (bestUnit < 0 || e.newlyCovered > bestEffect.newlyCovered ||
          (e.newlyCovered == bestEffect.newlyCovered &&
           tie_key(cs, u, e, ui) <
               tie_key(cs, cs.units[static_cast<std::size_t>(bestUnit)],
                       bestEffect, bestUnit))) {
        bestUnit = ui;
        bestEffect = e;
      }
    }
    if (bestUnit < 0) {
      break;
    }
    apply(cs, cs.units[static_cast<std::size_t>(bestUnit)], bestEffect, free,
          mark, sel);
  }
  return sel.migrations;
}

} // namespace qcut
