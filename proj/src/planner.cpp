#include "qcut/planner.hpp"

#include "qcut/errors.hpp"
#include "qcut/interaction.hpp"
#include "qcut/repair.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <tuple>

namespace qcut {

long Plan::migrationCost() const {
  long s = 0;
  for (const auto& seg : segments) {
    for (const auto& m : seg.migrations) {
      s += m.cost;
    }
  }
  return s;
}

long Plan::teleportCost() const {
  long s = 0;
  for (const auto& t : teleports) {
    s += t.cost;
  }
  return s;
}

int Plan::numMigrations() const {
  int k = 0;
  for (const auto& seg : segments) {
    k += static_cast<int>(seg.migrations.size());
  }
  return k;
}

SegmentSolution solve_segment(const CircuitView& view, const Network& n,
                              const DistanceMatrix& d, const SolveParams& params,
                              const std::optional<Assignment>& seed) {
  const InteractionMatrix w = interaction_matrix(view, params.exec);
  SegmentSolution out;
  out.assignment = tabu_search(w, n, d, params.tabu, seed);
  auto cover = params.greedy
                   ? greedy_cover(view, out.assignment, n, d, CoverMode::General)
                   : iterative_cover(view, out.assignment, n, d,
                                     CoverMode::General, params.alpha);
  out.migrations = repair(std::move(cover), n, view, out.assignment);
  for (const auto& m : out.migrations) {
    out.cost += m.cost;
  }
  return out;
}

TeleportStep teleports_between(const Assignment& prev, const Assignment& next,
                               Instant t, const DistanceMatrix& d) {
  TeleportStep out;
  for (Qubit q = 0; q < prev.numQubits(); ++q) {
    if (prev[q] != next[q]) {
      const int cost = d(prev[q], next[q]);
      out.teleports.push_back({q, next[q], t, cost});
      out.cost += cost;
    }
  }
  return out;
}

Plan assemble_plan(const std::vector<SegmentPlan>& segments,
                   const DistanceMatrix& d) {
  Plan p;
  p.segments = segments;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    for (const auto& m : segments[i].migrations) {
      p.totalCost += m.cost;
    }
    if (i == 0) {
      continue;
    }
    const Instant t = segments[i].start;
    p.cuts.push_back(t);
    auto step = teleports_between(segments[i - 1].assignment,
                                  segments[i].assignment, t, d);
    p.teleports.insert(p.teleports.end(), step.teleports.begin(),
                       step.teleports.end());
    p.totalCost += step.cost;
  }
  return p;
}

namespace {

long teleport_cost(const std::optional<Assignment>& prev, const Assignment& next,
                   const DistanceMatrix& d) {
  if (!prev) {
    return 0;
  }
  long s = 0;
  for (Qubit q = 0; q < next.numQubits(); ++q) {
    s += d((*prev)[q], next[q]);
  }
  return s;
}

/// Memoized solve_segment keyed by span and seed. Thread-safe.
class SolveCache {
public:
  SolveCache(const Circuit& c, const Network& n, const DistanceMatrix& d,
             const SolveParams& params)
      : c_(c), n_(n), d_(d), params_(params) {}

  SegmentSolution get(Instant start, Instant end,
                      const std::optional<Assignment>& seed,
                      Execution exec) {
    Key key{start, end, seed ? seed->home : std::vector<Node>{}};
    {
      const std::lock_guard<std::mutex> lock(mutex_);
      if (const auto it = cache_.find(key); it != cache_.end()) {
        return it->second;
      }
    }
    SolveParams p = params_;
    p.exec = exec;
    SegmentSolution sol = solve_segment({&c_, start, end}, n_, d_, p, seed);
    const std::lock_guard<std::mutex> lock(mutex_);
    return cache_.emplace(std::move(key), std::move(sol)).first->second;
  }

private:
  using Key = std::tuple<Instant, Instant, std::vector<Node>>;
  const Circuit& c_;
  const Network& n_;
  const DistanceMatrix& d_;
  SolveParams params_;
  std::mutex mutex_;
  std::map<Key, SegmentSolution> cache_;
};

SegmentPlan as_segment(Instant start, Instant end, SegmentSolution sol) {
  return {start, end, std::move(sol.assignment), std::move(sol.migrations)};
}

struct Piece {
  Instant start = 0;
  Instant end = 0;
  SegmentSolution sol;
};

std::vector<SegmentPlan> to_segments(const std::vector<Piece>& pieces) {
  std::vector<SegmentPlan> out;
  for (const auto& pc : pieces) {
    out.push_back(as_segment(pc.start, pc.end, pc.sol));
  }
  return out;
}

} // namespace

Plan dqcm_plan(const Circuit& c, const Network& n, const DistanceMatrix& d,
               const SolveParams& params) {
  return assemble_plan(
      {as_segment(0, c.horizon(), solve_segment(whole(c), n, d, params))}, d);
}

Plan sequence_plan(const Circuit& c, const Network& n, const DistanceMatrix& d,
                   const SolveParams& params) {
  SolveCache cache(c, n, d, params);
  const Instant h = c.horizon();
  std::vector<Piece> accepted;
  std::optional<Assignment> prev;
  long prefixCost = 0;
  Instant last = 0;
  SegmentSolution suffix = cache.get(0, h, std::nullopt, params.exec);
  long costWithout = suffix.cost;

  for (const Instant t : candidate_cuts(whole(c))) {
    if (t <= last) {
      continue;
    }
    SegmentSolution left;
    SegmentSolution right;
    try {
      left = cache.get(last, t, prev, params.exec);
      right = cache.get(t, h, left.assignment, params.exec);
    } catch (const Error&) {
      continue;
    }
    const long head = prefixCost + teleport_cost(prev, left.assignment, d) +
                      left.cost;
    const long costWith =
        head + teleport_cost(left.assignment, right.assignment, d) + right.cost;
    if (costWith < costWithout) {
      prefixCost = head;
      prev = left.assignment;
      accepted.push_back({last, t, std::move(left)});
      last = t;
      suffix = std::move(right);
      costWithout = costWith;
    }
  }
  accepted.push_back({last, h, std::move(suffix)});
  return assemble_plan(to_segments(accepted), d);
}

Plan split_plan(const Circuit& c, const Network& n, const DistanceMatrix& d,
                const SolveParams& params) {
  SolveCache cache(c, n, d, params);
  const Instant h = c.horizon();
  std::vector<Piece> pieces{{0, h, cache.get(0, h, std::nullopt, params.exec)}};
  long total = pieces.front().sol.cost;
  const std::vector<Instant> candidates = candidate_cuts(whole(c));

  struct Eval {
    long cost = std::numeric_limits<long>::max();
    SegmentSolution left;
    SegmentSolution right;
  };

  while (true) {
    std::vector<Instant> open;
    std::vector<std::size_t> owner;
    for (const Instant t : candidates) {
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (pieces[i].start < t && t < pieces[i].end) {
          open.push_back(t);
          owner.push_back(i);
          break;
        }
      }
    }
    std::vector<Eval> evals(open.size());
    const auto evaluate = [&](std::size_t k, Execution exec) {
      const std::size_t i = owner[k];
      const Piece& pc = pieces[i];
      std::optional<Assignment> prev;
      if (i > 0) {
        prev = pieces[i - 1].sol.assignment;
      }
      std::optional<Assignment> next;
      if (i + 1 < pieces.size()) {
        next = pieces[i + 1].sol.assignment;
      }
      Eval e;
      try {
        e.left = cache.get(pc.start, open[k], prev, exec);
        e.right = cache.get(open[k], pc.end, e.left.assignment, exec);
      } catch (const Error&) {
        return e;
      }
      const auto toNext = [&](const Assignment& a) {
        return next ? teleport_cost(a, *next, d) : 0L;
      };
      e.cost = total - pc.sol.cost - teleport_cost(prev, pc.sol.assignment, d) -
               toNext(pc.sol.assignment) +
               teleport_cost(prev, e.left.assignment, d) + e.left.cost +
               teleport_cost(e.left.assignment, e.right.assignment, d) +
               e.right.cost + toNext(e.right.assignment);
      return e;
    };

    const auto count = static_cast<long>(open.size());
    if (params.exec == Execution::Parallel) {
      std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
      for (long k = 0; k < count; ++k) {
        try {
          evals[k] = evaluate(static_cast<std::size_t>(k), Execution::Serial);
        } catch (...) {
#pragma omp critical(qcut_split_failure)
          if (!failure) {
            failure = std::current_exception();
          }
        }
      }
      if (failure) {
        std::rethrow_exception(failure);
      }
    } else {
      for (long k = 0; k < count; ++k) {
        evals[k] = evaluate(static_cast<std::size_t>(k), Execution::Serial);
      }
    }

    std::size_t best = open.size();
    for (std::size_t k = 0; k < open.size(); ++k) {
      if (best == open.size() || evals[k].cost < evals[best].cost) {
        best = k;
      }
    }
    if (best == open.size() || evals[best].cost >= total) {
      break;
    }
    const std::size_t i = owner[best];
    const Piece old = pieces[i];
    pieces[i] = {old.start, open[best], std::move(evals[best].left)};
    pieces.insert(pieces.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                  {open[best], old.end, std::move(evals[best].right)});
    total = evals[best].cost;
  }

  Plan kept = assemble_plan(to_segments(pieces), d);
  std::vector<Piece> fresh;
  try {
    std::optional<Assignment> prev;
    for (const auto& pc : pieces) {
      fresh.push_back({pc.start, pc.end,
                       cache.get(pc.start, pc.end, prev, params.exec)});
      prev = fresh.back().sol.assignment;
    }
  } catch (const Error&) {
    return kept;
  }
  Plan resolved = assemble_plan(to_segments(fresh), d);
  return resolved.totalCost < kept.totalCost ? resolved : kept;
}

Plan overall_plan(const Circuit& c, const Network& n, const DistanceMatrix& d,
                  const SolveParams& params) {
  Plan seq = sequence_plan(c, n, d, params);
  Plan spl = split_plan(c, n, d, params);
  return merge_adjacent_migrations(seq.totalCost < spl.totalCost ? seq : spl,
                                   c, n);
}

Plan merge_adjacent_migrations(const Plan& p, const Circuit& c,
                               const Network& n) {
  Plan out = p;
  const auto flat = [&] {
    std::vector<Migration> all;
    for (const auto& seg : out.segments) {
      all.insert(all.end(), seg.migrations.begin(), seg.migrations.end());
    }
    return all;
  };
  for (std::size_t i = 0; i + 1 < out.segments.size(); ++i) {
    const Instant t = out.segments[i].end;
    const Assignment& before = out.segments[i].assignment;
    auto& right = out.segments[i + 1];
    for (std::size_t j = 0; j <= i; ++j) {
      for (auto& m : out.segments[j].migrations) {
        if (m.end != t || before[m.qubit] != right.assignment[m.qubit]) {
          continue;
        }
        const auto it = std::find_if(
            right.migrations.begin(), right.migrations.end(),
            [&](const Migration& r) {
              return r.start == t && r.qubit == m.qubit && r.target == m.target;
            });
        if (it == right.migrations.end()) {
          continue;
        }
        const Migration old = m;
        const Migration absorbed = *it;
        m.end = absorbed.end;
        right.migrations.erase(it);
        if (check_feasible(flat(), n, c.horizon()).feasible()) {
          out.totalCost -= absorbed.cost;
        } else {
          m = old;
          right.migrations.push_back(absorbed);
          std::sort(right.migrations.begin(), right.migrations.end(),
                    [](const Migration& a, const Migration& b) {
                      return std::tie(a.start, a.end, a.qubit, a.target) <
                             std::tie(b.start, b.end, b.qubit, b.target);
                    });
        }
      }
    }
  }
  return out;
}

std::vector<std::string> validate_plan(const Plan& p, const Circuit& c,
                                       const Network& n) {
  std::vector<std::string> bad;
  const auto report = [&](const char* kind, const std::string& detail) {
    bad.push_back(std::string(kind) + ": " + detail);
  };
  const Instant h = c.horizon();
  const int nq = c.numQubits();

  if (p.segments.size() != p.cuts.size() + 1) {
    report("malformed", "segment count does not match cuts");
    return bad;
  }
  for (std::size_t i = 0; i < p.cuts.size(); ++i) {
    const Instant t = p.cuts[i];
    if (t % 2 != 0 || t <= 0 || t >= h || (i > 0 && t <= p.cuts[i - 1])) {
      report("malformed", "bad cut " + std::to_string(t));
      return bad;
    }
  }
  for (std::size_t i = 0; i < p.segments.size(); ++i) {
    const Instant s = i == 0 ? 0 : p.cuts[i - 1];
    const Instant e = i == p.cuts.size() ? h : p.cuts[i];
    if (p.segments[i].start != s || p.segments[i].end != e) {
      report("malformed", "segment " + std::to_string(i) + " has wrong span");
      return bad;
    }
    const auto& a = p.segments[i].assignment;
    if (a.numQubits() != nq) {
      report("malformed", "segment " + std::to_string(i) +
                              " assignment has wrong length");
      return bad;
    }
    if (!storage_valid(a, n)) {
      report("storage invalid", "segment " + std::to_string(i));
    }
  }

  const DistanceMatrix d = all_pairs_distance(n);
  const auto homeAt = [&](Qubit q, Instant t) {
    std::size_t i = 0;
    while (i < p.cuts.size() && p.cuts[i] < t) {
      ++i;
    }
    return p.segments[i].assignment[q];
  };
  const auto inNodes = [&](Node v) { return v >= 0 && v < n.numNodes; };

  std::vector<Migration> valid;
  long expected = 0;
  for (const auto& seg : p.segments) {
    for (const auto& m : seg.migrations) {
      const std::string id = "q" + std::to_string(m.qubit) + "->p" +
                             std::to_string(m.target) + " (" +
                             std::to_string(m.start) + "," +
                             std::to_string(m.end) + ")";
      if (m.qubit < 0 || m.qubit >= nq || !inNodes(m.target) ||
          m.start % 2 != 0 || m.end % 2 != 0 || m.start < 0 || m.end > h ||
          m.end - m.start < 2) {
        report("migration invalid", id);
        continue;
      }
      const Node home = homeAt(m.qubit, m.start + 1);
      bool ok = home != m.target;
      for (Instant t = m.start + 1; ok && t < m.end; t += 2) {
        const Gate& g = c.gateAt(t);
        if (homeAt(m.qubit, t) != home ||
            (!g.isBinary() && g.first == m.qubit)) {
          ok = false;
        }
      }
      if (!ok) {
        report("migration invalid", id);
        continue;
      }
      if (m.cost != d(home, m.target)) {
        report("cost mismatch", "migration " + id);
      }
      expected += d(home, m.target);
      valid.push_back(m);
    }
  }

  for (const Gate& g : c.gates()) {
    if (!g.isBinary()) {
      continue;
    }
    const Node ha = homeAt(g.first, g.instant);
    const Node hb = homeAt(g.second, g.instant);
    if (ha == hb) {
      continue;
    }
    const auto at = [&](Qubit q, Node v) {
      return std::any_of(valid.begin(), valid.end(), [&](const Migration& m) {
        return m.qubit == q && m.target == v && m.contains(g.instant);
      });
    };
    bool covered = at(g.first, hb) || at(g.second, ha);
    for (Node v = 0; !covered && v < n.numNodes; ++v) {
      covered = v != ha && v != hb && at(g.first, v) && at(g.second, v);
    }
    if (!covered) {
      report("uncovered gate", "instant " + std::to_string(g.instant));
    }
  }

  for (Node v = 0; v < n.numNodes; ++v) {
    for (Instant t = 1; t < h; ++t) {
      const auto occ = std::count_if(valid.begin(), valid.end(),
                                     [&](const Migration& m) {
                                       return m.target == v && m.contains(t);
                                     });
      if (occ > n.execMem[v]) {
        report("infeasible", "node " + std::to_string(v) + " instant " +
                                 std::to_string(t));
      }
    }
  }

  std::vector<Teleportation> want;
  for (std::size_t i = 0; i < p.cuts.size(); ++i) {
    const auto& prev = p.segments[i].assignment;
    const auto& next = p.segments[i + 1].assignment;
    for (Qubit q = 0; q < nq; ++q) {
      if (prev[q] != next[q]) {
        want.push_back({q, next[q], p.cuts[i], d(prev[q], next[q])});
        expected += d(prev[q], next[q]);
      }
    }
  }
  auto have = p.teleports;
  std::sort(want.begin(), want.end());
  std::sort(have.begin(), have.end());
  if (want != have) {
    report("teleport mismatch", "teleports differ from assignment changes");
  }
  if (bad.empty() && expected != p.totalCost) {
    report("cost mismatch", "total " + std::to_string(p.totalCost) +
                                " but recomputed " + std::to_string(expected));
  }
  return bad;
}

std::string_view to_string(Algorithm a) {
  switch (a) {
  case Algorithm::Dqcm:
    return "dqcm";
  case Algorithm::DqcmGreedy:
    return "dqcm_greedy";
  case Algorithm::Sequence:
    return "sequence";
  case Algorithm::Split:
    return "split";
  case Algorithm::Overall:
    return "overall";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  for (const auto a : {Algorithm::Dqcm, Algorithm::DqcmGreedy,
                       Algorithm::Sequence, Algorithm::Split,
                       Algorithm::Overall}) {
    if (to_string(a) == name) {
      return a;
    }
  }
  throw InvalidParameters("unknown algorithm '" + std::string(name) + "'");
}

Plan run_algorithm(Algorithm algo, const Circuit& c, const Network& n,
                   const DistanceMatrix& d, const SolveParams& params) {
  switch (algo) {
  case Algorithm::Dqcm:
    return dqcm_plan(c, n, d, params);
  case Algorithm::DqcmGreedy: {
    SolveParams g = params;
    g.greedy = true;
    return dqcm_plan(c, n, d, g);
  }
  case Algorithm::Sequence:
    return sequence_plan(c, n, d, params);
  case Algorithm::Split:
    return split_plan(c, n, d, params);
  case Algorithm::Overall:
    return overall_plan(c, n, d, params);
  }
  throw InvalidParameters("unknown algorithm");
}

} // namespace qcut
