// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "qcut/errors.hpp"
#include "qcut/experiment.hpp"
#include "qcut/generators.hpp"
#include "qcut/interaction.hpp"
#include "qcut/oracle.hpp"
#include "qcut/planner.hpp"
#include "qcut/repair.hpp"
#include "qcut/serialization.hpp"
#include "qcut/tabu.hpp"
#include "test_util.hpp"

#include <omp.h>
#include <sys/wait.h>

#include <array>
#include <bit>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

namespace {

using namespace qcut;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr double kPairSeconds = 10;
constexpr double kApproxSeconds = 60;
constexpr double kTrendSeconds = 30 * 60;
constexpr long kFixtureDqcm = 4;
constexpr long kFixtureDqcmAdmissible = 5;
constexpr long kFixtureWithCuts = 2;
constexpr double kSplitVsDqcm = 0.95;
constexpr double kFractionTolerance = 0.02;

const std::string kCli = QCUT_CLI_PATH;
const fs::path kData = QCUT_TEST_DATA_DIR;

int failures = 0;

void report(int id, bool ok, const std::string& what) {
  std::cout << (ok ? "PASS " : "FAIL ") << id << " " << what << std::endl;
  failures += ok ? 0 : 1;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int precision = 2) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(precision);
  out << v;
  return out.str();
}

struct Run {
  int status = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  Run r;
  FILE* pipe = popen((kCli + " " + args + " 2>/dev/null").c_str(), "r");
  if (pipe == nullptr) {
    return r;
  }
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    r.out.append(buf.data(), got);
  }
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

int ceil_log2(int n) { return n <= 1 ? 0 : std::bit_width(static_cast<unsigned>(n - 1)); }

long cost_of(const std::vector<Migration>& ms) {
  long c = 0;
  for (const auto& m : ms) {
    c += m.cost;
  }
  return c;
}

void pair_cover_equivalence() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1);
  int mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int ng = std::uniform_int_distribution<int>(1, 8)(rng);
    std::vector<std::vector<int>> ops;
    for (int k = 0; k < ng; ++k) {
      switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
      case 0:
        ops.push_back({0});
        break;
      case 1:
        ops.push_back({1});
        break;
      case 2:
        ops.push_back({0, 1});
        break;
      default:
        ops.push_back({1, 0});
      }
    }
    const Circuit c = test::circuit_of(2, ops);
    mismatches += ms_hc_count(c) == oracle_pair_cover(c) ? 0 : 1;
  }
  const double secs = seconds_since(t0);
  report(1, mismatches == 0 && secs < kPairSeconds,
         "pair cover vs oracle: " + std::to_string(mismatches) +
             " mismatches over 200 circuits in " + fmt(secs) + " s");
}

void coverage_approximation() {
  const auto t0 = Clock::now();
  int instances = 0;
  int costViolations = 0;
  int occupancyViolations = 0;
  double worstRatio = 0;
  for (std::uint64_t seed = 1; instances < 100 && seed < 100000; ++seed) {
    const auto inst = test::random_tiny(seed, 5, 3, 12);
    Assignment a;
    try {
      a = random_assignment(inst.circuit.numQubits(), inst.network, seed);
    } catch (const InsufficientStorage&) {
      continue;
    }
    const auto view = whole(inst.circuit);
    const int n = static_cast<int>(nonlocal_gates(view, a).size());
    if (n < 2) {
      continue;
    }
    ++instances;
    const auto d = all_pairs_distance(inst.network);
    const auto cover = iterative_cover(view, a, inst.network, d, CoverMode::HomeOnly);
    const auto exact = oracle_cover(view, a, inst.network, d, CoverMode::HomeOnly);
    if (!exact) {
      ++costViolations;
      continue;
    }
    const int lg = ceil_log2(n);
    const long cost = cost_of(cover);
    worstRatio = std::max(worstRatio, static_cast<double>(cost) / exact->cost);
    costViolations += cost <= (1 + lg) * exact->cost ? 0 : 1;

    std::map<std::pair<Node, Instant>, int> occupancy;
    for (const auto& m : cover) {
      for (Instant t = m.start + 1; t < m.end; ++t) {
        ++occupancy[{m.target, t}];
      }
    }
    for (const auto& [row, occ] : occupancy) {
      if (occ > lg * inst.network.execMem[row.first]) {
        ++occupancyViolations;
        break;
      }
    }
  }
  const double secs = seconds_since(t0);
  report(2,
         instances == 100 && costViolations == 0 && occupancyViolations == 0 &&
             secs < kApproxSeconds,
         "cover approximation over " + std::to_string(instances) +
             " instances: " + std::to_string(costViolations) + " cost and " +
             std::to_string(occupancyViolations) +
             " occupancy violations, worst cost ratio " + fmt(worstRatio) + ", " +
             fmt(secs) + " s");
}

long cli_cost(const std::string& algo) {
  const auto r = run_cli("solve --circuit " + (kData / "cex2_circuit.json").string() +
                         " --network " + (kData / "cex2_network.json").string() +
                         " --algo " + algo + " --seed 1");
  if (r.status != 0 || r.out.rfind("cost=", 0) != 0) {
    return -1;
  }
  return std::stol(r.out.substr(5));
}

void fixture() {
  const long dqcm = cli_cost("dqcm");
  const long seq = cli_cost("sequence");
  const long split = cli_cost("split");
  const long overall = cli_cost("overall");
  const long optimum = oracle_dqcm(test::cex2(), test::cex2_network()).cost;
  const bool ok = dqcm >= 0 && dqcm <= kFixtureDqcmAdmissible &&
                  seq == kFixtureWithCuts && split == kFixtureWithCuts &&
                  overall == kFixtureWithCuts;
  std::string line = "fixture: dqcm=" + std::to_string(dqcm) +
                     " sequence=" + std::to_string(seq) +
                     " split=" + std::to_string(split) +
                     " overall=" + std::to_string(overall) +
                     " (exact no-cut optimum " + std::to_string(optimum) + ")";
  if (dqcm > kFixtureDqcm) {
    line += " [flag: dqcm above " + std::to_string(kFixtureDqcm) + "]";
  }
  report(3, ok, line);
}

void sweeps() {
  SweepConfig cfg;
  cfg.varying = SweepParam::NumQubits;
  cfg.values = {20};
  cfg.jobs = omp_get_max_threads();
  for (std::uint64_t s = 1; s <= 20; ++s) {
    cfg.seeds.push_back(s);
  }
  const auto t0 = Clock::now();
  auto rows = run_sweep(cfg);
  const double trendSecs = seconds_since(t0);

  std::map<std::string, double> mean;
  for (const auto& r : rows) {
    mean[r.algorithm] += static_cast<double>(r.totalCost) / 20;
  }
  const double dq = mean["dqcm"];
  const double gr = mean["dqcm_greedy"];
  const double seq = mean["sequence"];
  const double spl = mean["split"];
  const bool trend = spl <= seq && seq <= dq && dq <= gr &&
                     spl <= kSplitVsDqcm * dq && trendSecs < kTrendSeconds;

  cfg.seeds.clear();
  for (std::uint64_t s = 21; s <= 100; ++s) {
    cfg.seeds.push_back(s);
  }
  const auto more = run_sweep(cfg);
  rows.insert(rows.end(), more.begin(), more.end());
  long invalid = 0;
  for (const auto& r : rows) {
    invalid += r.valid ? 0 : 1;
  }
  report(4, invalid == 0 && rows.size() == 400,
         "validity: " + std::to_string(invalid) + " invalid plans out of " +
             std::to_string(rows.size()));
  report(5, trend,
         "trend over 20 seeds: mean split " + fmt(spl) + ", sequence " + fmt(seq) +
             ", dqcm " + fmt(dq) + ", dqcm_greedy " + fmt(gr) +
             "; saving vs dqcm sequence " + fmt(100 * (1 - seq / dq), 1) +
             "% split " + fmt(100 * (1 - spl / dq), 1) + "%, " + fmt(trendSecs, 0) +
             " s");
}

void repair_totality() {
  std::mt19937_64 rng(6);
  int sets = 0;
  int bad = 0;
  while (sets < 100) {
    const auto inst = test::random_tiny(rng(), 6, 3, 14);
    Assignment a;
    try {
      a = random_assignment(inst.circuit.numQubits(), inst.network, rng());
    } catch (const InsufficientStorage&) {
      continue;
    }
    const auto view = whole(inst.circuit);
    const auto d = all_pairs_distance(inst.network);
    auto ms = iterative_cover(view, a, inst.network, d, CoverMode::HomeOnly);
    if (ms.empty()) {
      continue;
    }
    // Enough copies of each migration to overflow its target.
    const auto base = ms;
    for (const auto& m : base) {
      for (int k = 0; k < inst.network.execMem[m.target]; ++k) {
        ms.push_back(m);
      }
    }
    const auto horizon = inst.circuit.horizon();
    if (check_feasible(ms, inst.network, horizon).feasible()) {
      continue;
    }
    ++sets;
    try {
      const auto out = repair(ms, inst.network, view, a);
      const bool ok = check_feasible(out, inst.network, horizon).feasible() &&
                      covers_all(out, view, a) &&
                      repair(out, inst.network, view, a) == out;
      bad += ok ? 0 : 1;
    } catch (const Error&) {
      ++bad;
    }
  }
  report(6, bad == 0,
         "repair: " + std::to_string(bad) + " failures over " + std::to_string(sets) +
             " injected violation sets");
}

void generator_statistics(const fs::path& dir) {
  int disconnected = 0;
  int networks = 0;
  for (const double p : {0.3, 0.5, 0.7}) {
    for (int nodes = 2; nodes <= 10; ++nodes) {
      for (std::uint64_t seed = 0; seed < 40; ++seed) {
        NetworkGenParams params;
        params.numNodes = nodes;
        params.edgeProbability = p;
        params.numQubits = 20;
        params.seed = seed;
        ++networks;
        try {
          all_pairs_distance(gen_network(params));
        } catch (const Error&) {
          ++disconnected;
        }
      }
    }
  }

  CircuitGenParams cp;
  cp.numQubits = 100;
  cp.gatesPerQubit = 100;
  cp.binaryFraction = 0.5;
  cp.seed = 7;
  const Circuit c = gen_circuit(cp);
  long binary = 0;
  for (const Gate& g : c.gates()) {
    binary += g.isBinary() ? 1 : 0;
  }
  const double fraction = static_cast<double>(binary) / c.numGates();

  const std::string args = "generate --qubits 20 --nodes 5 --seed 42";
  const auto a = run_cli(args + " --circuit " + (dir / "c1.json").string() +
                         " --network " + (dir / "n1.json").string());
  const auto b = run_cli(args + " --circuit " + (dir / "c2.json").string() +
                         " --network " + (dir / "n2.json").string());
  const bool identical = a.status == 0 && b.status == 0 &&
                         read_file(dir / "c1.json") == read_file(dir / "c2.json") &&
                         read_file(dir / "n1.json") == read_file(dir / "n2.json");

  report(7,
         disconnected == 0 && c.numGates() == 10000 &&
             std::abs(fraction - 0.5) < kFractionTolerance && identical,
         "generators: " + std::to_string(disconnected) + " of " +
             std::to_string(networks) + " networks disconnected, binary fraction " +
             fmt(fraction, 4) + " over " + std::to_string(c.numGates()) +
             " gates, same-seed files " + (identical ? "identical" : "differ"));
}

void sweep_determinism(const fs::path& dir) {
  write_file(dir / "sweep.json", R"({
  "varying": "num_nodes",
  "values": [3, 5],
  "num_qubits": 10,
  "gates_per_qubit": 10,
  "seeds": [1, 2, 3],
  "algorithms": ["dqcm", "dqcm_greedy", "sequence", "split", "overall"],
  "jobs": 2
}
)");
  const std::string args = "sweep --config " + (dir / "sweep.json").string() + " --out ";
  const auto a = run_cli(args + (dir / "a.csv").string());
  const auto b = run_cli(args + (dir / "b.csv").string());
  const bool ok = a.status == 0 && b.status == 0 &&
                  read_file(dir / "a.csv") == read_file(dir / "b.csv");
  report(8, ok, std::string("sweep rerun CSV ") + (ok ? "byte-identical" : "differs"));
}

} // namespace

int main() {
  const fs::path dir = fs::temp_directory_path() / "qcut_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  try {
    pair_cover_equivalence();
    coverage_approximation();
    fixture();
    sweeps();
    repair_totality();
    generator_statistics(dir);
    sweep_determinism(dir);
  } catch (const std::exception& e) {
    std::cout << "FAIL aborted: " << e.what() << std::endl;
    ++failures;
  }
  fs::remove_all(dir);
  return failures == 0 ? 0 : 1;
}
