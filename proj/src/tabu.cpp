#include "qcut/tabu.hpp"

#include "qcut/errors.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>

namespace qcut {

bool storage_valid(const Assignment& a, const Network& n) {
  std::vector<int> load(static_cast<std::size_t>(n.numNodes), 0);
  for (const Node p : a.home) {
    if (p < 0 || p >= n.numNodes || ++load[p] > n.storage[p]) {
      return false;
    }
  }
  return true;
}

long assignment_cost(const Assignment& a, const InteractionMatrix& w,
                     const DistanceMatrix& d) {
  long total = 0;
  for (Qubit i = 0; i < a.numQubits(); ++i) {
    for (Qubit j = i + 1; j < a.numQubits(); ++j) {
      total += static_cast<long>(w(i, j)) * d(a[i], a[j]);
    }
  }
  return total;
}

std::vector<Assignment> neighbors(const Assignment& a, const Network& n) {
  std::vector<int> load(static_cast<std::size_t>(n.numNodes), 0);
  for (const Node p : a.home) {
    ++load[p];
  }
  std::vector<Assignment> out;
  for (Qubit q = 0; q < a.numQubits(); ++q) {
    for (Node p = 0; p < n.numNodes; ++p) {
      if (p != a[q] && load[p] < n.storage[p]) {
        out.push_back(a);
        out.back().home[q] = p;
      }
    }
  }
  for (Qubit q1 = 0; q1 < a.numQubits(); ++q1) {
    for (Qubit q2 = q1 + 1; q2 < a.numQubits(); ++q2) {
      if (a[q1] != a[q2]) {
        out.push_back(a);
        std::swap(out.back().home[q1], out.back().home[q2]);
      }
    }
  }
  return out;
}

Assignment random_assignment(int numQubits, const Network& n,
                             std::uint64_t seed) {
  check_capacity(n, numQubits);
  std::vector<Qubit> order(static_cast<std::size_t>(numQubits));
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  Assignment a{std::vector<Node>(static_cast<std::size_t>(numQubits), 0)};
  Node p = 0;
  int used = 0;
  for (const Qubit q : order) {
    while (used >= n.storage[p]) {
      ++p;
      used = 0;
    }
    a.home[q] = p;
    ++used;
  }
  return a;
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Move {
  Qubit q1 = -1;
  Qubit q2 = -1; ///< -1 for a single-qubit move
  Node to = -1;  ///< destination of q1 for moves
  long cost = 0;
  std::uint64_t hash = 0;
};

Assignment apply(const Assignment& a, const Move& m) {
  Assignment out = a;
  if (m.q2 < 0) {
    out.home[m.q1] = m.to;
  } else {
    std::swap(out.home[m.q1], out.home[m.q2]);
  }
  return out;
}

/// True if `lhs` should be preferred over `rhs`.
bool better(const Assignment& a, const Move& lhs, const Move& rhs) {
  if (lhs.cost != rhs.cost) {
    return lhs.cost < rhs.cost;
  }
  return apply(a, lhs).home < apply(a, rhs).home;
}

} // namespace

Assignment tabu_search(const InteractionMatrix& w, const Network& n,
                       const DistanceMatrix& d, const TabuParams& params,
                       const std::optional<Assignment>& initial) {
  if (params.iterations < 1 || params.tabuListLength < 1) {
    throw InvalidParameters("tabu search needs positive iterations and list length");
  }
  const int nq = w.size();
  check_capacity(n, nq);
  Assignment current =
      initial ? *initial : random_assignment(nq, n, params.seed);
  if (current.numQubits() != nq || !storage_valid(current, n)) {
    throw InvalidParameters("initial assignment is not storage-valid");
  }

  const int np = n.numNodes;
  std::vector<std::uint64_t> zobrist(static_cast<std::size_t>(nq) * np);
  for (std::size_t i = 0; i < zobrist.size(); ++i) {
    zobrist[i] = splitmix(0x51ab5eedULL + i);
  }
  const auto z = [&](Qubit q, Node p) {
    return zobrist[static_cast<std::size_t>(q) * np + p];
  };

  std::uint64_t hash = 0;
  for (Qubit q = 0; q < nq; ++q) {
    hash ^= z(q, current[q]);
  }
  long cost = assignment_cost(current, w, d);
  Assignment best = current;
  long bestCost = cost;
  std::deque<std::uint64_t> tabu;

  std::vector<long> contrib(static_cast<std::size_t>(nq) * np);
  std::vector<int> load(static_cast<std::size_t>(np));
  for (int iter = 0; iter < params.iterations; ++iter) {
    // contrib[q][p]: cost of q's pair terms if q sat on p.
    std::fill(load.begin(), load.end(), 0);
    for (Qubit q = 0; q < nq; ++q) {
      ++load[current[q]];
      for (Node p = 0; p < np; ++p) {
        long s = 0;
        for (Qubit r = 0; r < nq; ++r) {
          s += static_cast<long>(w(q, r)) * d(p, current[r]);
        }
        contrib[static_cast<std::size_t>(q) * np + p] = s;
      }
    }
    const auto c = [&](Qubit q, Node p) {
      return contrib[static_cast<std::size_t>(q) * np + p];
    };

    std::optional<Move> free;
    std::optional<Move> forbidden;
    const auto consider = [&](const Move& m) {
      const bool isTabu =
          std::find(tabu.begin(), tabu.end(), m.hash) != tabu.end();
      auto& slot = isTabu ? forbidden : free;
      if (!slot || better(current, m, *slot)) {
        slot = m;
      }
    };
    for (Qubit q = 0; q < nq; ++q) {
      const Node from = current[q];
      for (Node p = 0; p < np; ++p) {
        if (p != from && load[p] < n.storage[p]) {
          consider({q, -1, p, cost + c(q, p) - c(q, from),
                    hash ^ z(q, from) ^ z(q, p)});
        }
      }
    }
    for (Qubit q1 = 0; q1 < nq; ++q1) {
      for (Qubit q2 = q1 + 1; q2 < nq; ++q2) {
        const Node h1 = current[q1];
        const Node h2 = current[q2];
        if (h1 == h2) {
          continue;
        }
        const long delta = c(q1, h2) - c(q1, h1) + c(q2, h1) - c(q2, h2) +
                           2L * w(q1, q2) * d(h1, h2);
        consider({q1, q2, -1, cost + delta,
                  hash ^ z(q1, h1) ^ z(q1, h2) ^ z(q2, h2) ^ z(q2, h1)});
      }
    }
    const std::optional<Move>& chosen = free ? free : forbidden;
    if (!chosen) {
      break; // no neighbours at all
    }
    current = apply(current, *chosen);
    cost = chosen->cost;
    hash = chosen->hash;
    if (cost < bestCost) {
      best = current;
      bestCost = cost;
    }
    tabu.push_back(hash);
    if (static_cast<int>(tabu.size()) > params.tabuListLength) {
      tabu.pop_front();
    }
  }
  return best;
}

} // namespace qcut
