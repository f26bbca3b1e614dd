#include "qcut/oracle.hpp"

#include "qcut/errors.hpp"
#include "qcut/tabu.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace qcut {

namespace {

constexpr long kInf = std::numeric_limits<long>::max();

class Deadline {
public:
  explicit Deadline(std::chrono::milliseconds budget)
      : until_(std::chrono::steady_clock::now() + budget) {}
  void check() {
    if ((++ticks_ & 1023U) == 0 && std::chrono::steady_clock::now() > until_) {
      throw LimitExceeded("oracle timed out");
    }
  }

private:
  std::chrono::steady_clock::time_point until_;
  unsigned ticks_ = 0;
};

void check_limits(const Circuit& c, int numNodes, const OracleLimits& limits) {
  if (limits.maxQubits < 1 || limits.maxQubits > 6 || limits.maxGates < 1 ||
      limits.maxGates > 14 || limits.maxNodes < 1 || limits.maxNodes > 3 ||
      limits.maxMigrations < 1 || limits.timeout.count() < 1) {
    throw InvalidParameters("oracle limits out of range");
  }
  if (c.numQubits() > limits.maxQubits || c.numGates() > limits.maxGates ||
      numNodes > limits.maxNodes) {
    throw LimitExceeded("instance too large for the exact oracle");
  }
}

class CoverSearch {
public:
  CoverSearch(const CircuitView& view, const Assignment& a, const Network& n,
              const DistanceMatrix& d, CoverMode mode, const OracleLimits& limits,
              Deadline& deadline, long bound)
      : view_(view), a_(a), n_(n), d_(d), mode_(mode), limits_(limits),
        deadline_(deadline), gates_(nonlocal_gates(view, a)), best_(bound),
        occ_(static_cast<std::size_t>(n.numNodes),
             std::vector<int>(static_cast<std::size_t>(view.end - view.start + 1), 0)),
        touching_(static_cast<std::size_t>(view.numQubits())) {
    for (const auto& g : gates_) {
      touching_[g.a].push_back(g.instant);
      touching_[g.b].push_back(g.instant);
    }
  }

  std::optional<ExactCover> run() {
    dfs(0);
    if (!found_) {
      return std::nullopt;
    }
    return ExactCover{best_, bestSet_};
  }

private:
  struct Option {
    long cost = 0;
    std::vector<Migration> add;
  };

  [[nodiscard]] bool holds(Qubit q, Node p, Instant t) const {
    return std::any_of(chosen_.begin(), chosen_.end(), [&](const Migration& m) {
      return m.qubit == q && m.target == p && m.contains(t);
    });
  }

  [[nodiscard]] bool covered(const NonlocalGate& g) const {
    const Node ha = a_[g.a];
    const Node hb = a_[g.b];
    if (holds(g.a, hb, g.instant) || holds(g.b, ha, g.instant)) {
      return true;
    }
    if (mode_ == CoverMode::HomeOnly) {
      return false;
    }
    for (Node p = 0; p < n_.numNodes; ++p) {
      if (p != ha && p != hb && holds(g.a, p, g.instant) &&
          holds(g.b, p, g.instant)) {
        return true;
      }
    }
    return false;
  }

  [[nodiscard]] bool unary_between(Qubit q, Instant lo, Instant hi) const {
    for (const Instant u : view_.circuit->unaryInstants(q)) {
      if (u > lo && u < hi) {
        return true;
      }
    }
    return false;
  }

  /// Every interval of q spanning a hull of q's nonlocal gates around t.
  [[nodiscard]] std::vector<std::pair<Instant, Instant>> hulls(Qubit q,
                                                               Instant t) const {
    std::vector<std::pair<Instant, Instant>> out;
    for (const Instant lo : touching_[q]) {
      if (lo > t || unary_between(q, lo, t)) {
        continue;
      }
      for (const Instant hi : touching_[q]) {
        if (hi < t || unary_between(q, t, hi)) {
          continue;
        }
        out.emplace_back(lo - 1, hi + 1);
      }
    }
    return out;
  }

  bool place(const Migration& m) {
    auto& row = occ_[m.target];
    for (Instant t = m.start + 1; t < m.end; ++t) {
      if (row[t - view_.start] + 1 > n_.execMem[m.target]) {
        return false;
      }
    }
    for (Instant t = m.start + 1; t < m.end; ++t) {
      ++row[t - view_.start];
    }
    chosen_.push_back(m);
    return true;
  }

  void unplace() {
    const Migration m = chosen_.back();
    chosen_.pop_back();
    for (Instant t = m.start + 1; t < m.end; ++t) {
      --occ_[m.target][t - view_.start];
    }
  }

  void dfs(long cost) {
    deadline_.check();
    const auto open = std::find_if(gates_.begin(), gates_.end(),
                                   [&](const auto& g) { return !covered(g); });
    if (open == gates_.end()) {
      if (cost < best_) {
        best_ = cost;
        bestSet_ = chosen_;
        found_ = true;
      }
      return;
    }
    if (cost + 1 >= best_ ||
        static_cast<int>(chosen_.size()) >= limits_.maxMigrations) {
      return;
    }
    const auto& g = *open;
    const Node ha = a_[g.a];
    const Node hb = a_[g.b];
    std::vector<Option> options;
    const auto singles = [&](Qubit q, Node p) {
      if (n_.execMem[p] < 1) {
        return;
      }
      for (const auto& [s, e] : hulls(q, g.instant)) {
        options.push_back({d_(a_[q], p), {{q, p, s, e, d_(a_[q], p)}}});
      }
    };
    singles(g.a, hb);
    singles(g.b, ha);
    if (mode_ == CoverMode::General) {
      for (Node p = 0; p < n_.numNodes; ++p) {
        if (p == ha || p == hb || n_.execMem[p] < 1) {
          continue;
        }
        const bool haveA = holds(g.a, p, g.instant);
        const bool haveB = holds(g.b, p, g.instant);
        const auto sideA = haveA ? std::vector<std::pair<Instant, Instant>>{{0, 0}}
                                 : hulls(g.a, g.instant);
        const auto sideB = haveB ? std::vector<std::pair<Instant, Instant>>{{0, 0}}
                                 : hulls(g.b, g.instant);
        for (const auto& ia : sideA) {
          for (const auto& ib : sideB) {
            Option o;
            if (!haveA) {
              o.add.push_back({g.a, p, ia.first, ia.second, d_(ha, p)});
              o.cost += d_(ha, p);
            }
            if (!haveB) {
              o.add.push_back({g.b, p, ib.first, ib.second, d_(hb, p)});
              o.cost += d_(hb, p);
            }
            options.push_back(std::move(o));
          }
        }
      }
    }
    std::stable_sort(options.begin(), options.end(),
                     [](const Option& x, const Option& y) {
                       return x.cost < y.cost;
                     });
    for (const auto& o : options) {
      if (cost + o.cost >= best_) {
        break;
      }
      std::size_t placed = 0;
      while (placed < o.add.size() && place(o.add[placed])) {
        ++placed;
      }
      if (placed == o.add.size()) {
        dfs(cost + o.cost);
      }
      for (std::size_t i = 0; i < placed; ++i) {
        unplace();
      }
    }
  }

  const CircuitView& view_;
  const Assignment& a_;
  const Network& n_;
  const DistanceMatrix& d_;
  CoverMode mode_;
  const OracleLimits& limits_;
  Deadline& deadline_;
  std::vector<NonlocalGate> gates_;
  long best_;
  bool found_ = false;
  std::vector<Migration> bestSet_;
  std::vector<Migration> chosen_;
  std::vector<std::vector<int>> occ_;
  std::vector<std::vector<Instant>> touching_;
};

std::optional<ExactCover> cover_with(const CircuitView& view,
                                     const Assignment& a, const Network& n,
                                     const DistanceMatrix& d, CoverMode mode,
                                     const OracleLimits& limits,
                                     Deadline& deadline, long bound) {
  return CoverSearch(view, a, n, d, mode, limits, deadline, bound).run();
}

std::vector<Assignment> all_assignments(int numQubits, const Network& n) {
  std::vector<Assignment> out;
  Assignment a{std::vector<Node>(static_cast<std::size_t>(numQubits), 0)};
  while (true) {
    if (storage_valid(a, n)) {
      out.push_back(a);
    }
    int q = numQubits - 1;
    while (q >= 0 && a.home[q] == n.numNodes - 1) {
      a.home[q] = 0;
      --q;
    }
    if (q < 0) {
      return out;
    }
    ++a.home[q];
  }
}

} // namespace

int oracle_pair_cover(const Circuit& pairCircuit, const OracleLimits& limits) {
  if (pairCircuit.numQubits() != 2) {
    throw NotTwoQubits("pair cover needs a two-qubit circuit");
  }
  check_limits(pairCircuit, 1, limits);
  std::vector<Instant> binaries;
  for (const Gate& g : pairCircuit.gates()) {
    if (g.isBinary()) {
      binaries.push_back(g.instant);
    }
  }
  const unsigned all = (1U << binaries.size()) - 1U;
  std::vector<unsigned> masks;
  for (Qubit q = 0; q < 2; ++q) {
    Instant lo = 0;
    const auto emit = [&](Instant hi) {
      unsigned m = 0;
      for (std::size_t i = 0; i < binaries.size(); ++i) {
        if (binaries[i] > lo && binaries[i] < hi) {
          m |= 1U << i;
        }
      }
      if (m != 0) {
        masks.push_back(m);
      }
    };
    for (const Instant u : pairCircuit.unaryInstants(q)) {
      emit(u - 1);
      lo = u + 1;
    }
    emit(pairCircuit.horizon());
  }
  const int k = static_cast<int>(masks.size());
  std::function<bool(int, int, unsigned)> pick = [&](int from, int left,
                                                     unsigned acc) {
    if (left == 0) {
      return acc == all;
    }
    for (int i = from; i <= k - left; ++i) {
      if (pick(i + 1, left - 1, acc | masks[i])) {
        return true;
      }
    }
    return false;
  };
  for (int size = 0; size <= k; ++size) {
    if (pick(0, size, 0)) {
      return size;
    }
  }
  throw Uncoverable("binary gates cannot be covered");
}

std::optional<ExactCover> oracle_cover(const CircuitView& view,
                                       const Assignment& a, const Network& n,
                                       const DistanceMatrix& d, CoverMode mode,
                                       const OracleLimits& limits, long bound) {
  check_limits(*view.circuit, n.numNodes, limits);
  Deadline deadline(limits.timeout);
  return cover_with(view, a, n, d, mode, limits, deadline, bound);
}

OracleSolution oracle_dqcm(const Circuit& c, const Network& n, CoverMode mode,
                           const OracleLimits& limits) {
  check_limits(c, n.numNodes, limits);
  check_capacity(n, c.numQubits());
  const DistanceMatrix d = all_pairs_distance(n);
  Deadline deadline(limits.timeout);
  std::optional<OracleSolution> best;
  for (const auto& a : all_assignments(c.numQubits(), n)) {
    const long bound = best ? best->cost : kInf;
    if (auto r = cover_with(whole(c), a, n, d, mode, limits, deadline, bound)) {
      best = OracleSolution{r->cost, a, std::move(r->migrations)};
    }
  }
  if (!best) {
    throw Uncoverable("no assignment admits a feasible cover");
  }
  return *best;
}

long oracle_dqc(const Circuit& c, const Network& n, int maxCuts,
                const OracleLimits& limits) {
  if (maxCuts < 0 || maxCuts > 2) {
    throw InvalidParameters("oracle_dqc supports at most two cuts");
  }
  check_limits(c, n.numNodes, limits);
  check_capacity(n, c.numQubits());
  const DistanceMatrix d = all_pairs_distance(n);
  Deadline deadline(limits.timeout);
  const auto assignments = all_assignments(c.numQubits(), n);
  const std::size_t na = assignments.size();
  std::vector<long> tele(na * na, 0);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < na; ++j) {
      for (Qubit q = 0; q < c.numQubits(); ++q) {
        tele[i * na + j] += d(assignments[i][q], assignments[j][q]);
      }
    }
  }

  std::map<std::pair<Instant, Instant>, std::vector<long>> segCost;
  const auto costs = [&](Instant s, Instant e) -> const std::vector<long>& {
    auto [it, fresh] = segCost.try_emplace({s, e});
    if (fresh) {
      it->second.resize(na, kInf);
      for (std::size_t i = 0; i < na; ++i) {
        if (auto r = cover_with({&c, s, e}, assignments[i], n, d,
                                CoverMode::General, limits, deadline, kInf)) {
          it->second[i] = r->cost;
        }
      }
    }
    return it->second;
  };

  const auto evaluate = [&](const std::vector<Instant>& cuts) {
    std::vector<Instant> bounds{0};
    bounds.insert(bounds.end(), cuts.begin(), cuts.end());
    bounds.push_back(c.horizon());
    std::vector<long> dp = costs(bounds[0], bounds[1]);
    for (std::size_t k = 1; k + 1 < bounds.size(); ++k) {
      const auto& seg = costs(bounds[k], bounds[k + 1]);
      std::vector<long> next(na, kInf);
      for (std::size_t j = 0; j < na; ++j) {
        if (seg[j] == kInf) {
          continue;
        }
        for (std::size_t i = 0; i < na; ++i) {
          if (dp[i] != kInf) {
            next[j] = std::min(next[j], dp[i] + tele[i * na + j] + seg[j]);
          }
        }
      }
      dp = std::move(next);
    }
    return *std::min_element(dp.begin(), dp.end());
  };

  const auto cands = candidate_cuts(whole(c));
  long best = evaluate({});
  if (maxCuts >= 1) {
    for (std::size_t i = 0; i < cands.size(); ++i) {
      best = std::min(best, evaluate({cands[i]}));
      if (maxCuts >= 2) {
        for (std::size_t j = i + 1; j < cands.size(); ++j) {
          best = std::min(best, evaluate({cands[i], cands[j]}));
        }
      }
    }
  }
  if (best == kInf) {
    throw Uncoverable("no cut set admits a feasible cover");
  }
  return best;
}

} // namespace qcut
