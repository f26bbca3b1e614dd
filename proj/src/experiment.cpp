#include "qcut/experiment.hpp"

#include "qcut/errors.hpp"
#include "qcut/serialization.hpp"

#include <chrono>
#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>

namespace qcut {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : s) {
    h = (h ^ ch) * 0x100000001b3ULL;
  }
  return h;
}

std::string format_value(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

bool integral(SweepParam p) {
  return p != SweepParam::EdgeProbability && p != SweepParam::BinaryFraction;
}

} // namespace

std::string_view to_string(SweepParam p) {
  switch (p) {
  case SweepParam::NumQubits:
    return "num_qubits";
  case SweepParam::NumNodes:
    return "num_nodes";
  case SweepParam::EdgeProbability:
    return "edge_probability";
  case SweepParam::GatesPerQubit:
    return "gates_per_qubit";
  case SweepParam::BinaryFraction:
    return "binary_fraction";
  case SweepParam::ExecMem:
    return "exec_mem";
  }
  return "?";
}

SweepParam parse_sweep_param(std::string_view name) {
  for (const auto p :
       {SweepParam::NumQubits, SweepParam::NumNodes, SweepParam::EdgeProbability,
        SweepParam::GatesPerQubit, SweepParam::BinaryFraction,
        SweepParam::ExecMem}) {
    if (to_string(p) == name) {
      return p;
    }
  }
  throw InvalidParameters("unknown sweep parameter '" + std::string(name) + "'");
}

void check_config(const SweepConfig& cfg) {
  if (cfg.values.empty()) {
    throw InvalidParameters("sweep needs at least one value");
  }
  if (cfg.seeds.empty()) {
    throw InvalidParameters("sweep needs at least one seed");
  }
  if (cfg.algorithms.empty()) {
    throw InvalidParameters("sweep needs at least one algorithm");
  }
  if (cfg.scaleFactor < 1 || cfg.jobs < 1) {
    throw InvalidParameters("scale_factor and jobs must be positive");
  }
  for (const double v : cfg.values) {
    if (integral(cfg.varying) && v != std::floor(v)) {
      throw InvalidParameters(std::string(to_string(cfg.varying)) +
                              " takes integer values");
    }
  }
}

SweepConfig sweep_config_from_text(const std::string& text) {
  using Json = nlohmann::json;
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed sweep config: ") + e.what());
  }
  SweepConfig cfg;
  try {
    if (j.contains("varying")) {
      cfg.varying = parse_sweep_param(j.at("varying").get<std::string>());
    }
    const auto take = [&](const char* key, auto& field) {
      if (j.contains(key)) {
        field = j.at(key).get<std::decay_t<decltype(field)>>();
      }
    };
    take("values", cfg.values);
    take("num_qubits", cfg.numQubits);
    take("num_nodes", cfg.numNodes);
    take("edge_probability", cfg.edgeProbability);
    take("gates_per_qubit", cfg.gatesPerQubit);
    take("binary_fraction", cfg.binaryFraction);
    take("seeds", cfg.seeds);
    take("scale_factor", cfg.scaleFactor);
    take("jobs", cfg.jobs);
    take("timing", cfg.timing);
    if (j.contains("exec_mem") && !j.at("exec_mem").is_null()) {
      cfg.execMem = j.at("exec_mem").get<int>();
    }
    if (j.contains("algorithms")) {
      cfg.algorithms.clear();
      for (const auto& a : j.at("algorithms")) {
        cfg.algorithms.push_back(parse_algorithm(a.get<std::string>()));
      }
    }
    if (j.contains("plan_dir")) {
      cfg.planDir = j.at("plan_dir").get<std::string>();
    }
  } catch (const Json::exception& e) {
    throw FormatError(std::string("bad sweep config: ") + e.what());
  }
  check_config(cfg);
  return cfg;
}

Instance make_instance(const SweepConfig& cfg, double value, std::uint64_t seed) {
  int nq = cfg.numQubits;
  int np = cfg.numNodes;
  double p = cfg.edgeProbability;
  int gpq = cfg.gatesPerQubit;
  double f = cfg.binaryFraction;
  std::optional<int> exec = cfg.execMem;
  const int iv = static_cast<int>(std::lround(value));
  switch (cfg.varying) {
  case SweepParam::NumQubits:
    nq = iv;
    break;
  case SweepParam::NumNodes:
    np = iv;
    break;
  case SweepParam::EdgeProbability:
    p = value;
    break;
  case SweepParam::GatesPerQubit:
    gpq = iv;
    break;
  case SweepParam::BinaryFraction:
    f = value;
    break;
  case SweepParam::ExecMem:
    exec = iv;
    break;
  }
  nq = std::max(2, nq / cfg.scaleFactor);
  gpq = std::max(1, gpq / cfg.scaleFactor);
  const std::uint64_t base = mix(seed ^ fnv1a(format_value(value)));
  NetworkGenParams np_params;
  np_params.numNodes = np;
  np_params.edgeProbability = p;
  np_params.numQubits = nq;
  np_params.fixedExecMem = exec;
  np_params.seed = mix(base + 1);
  CircuitGenParams cp;
  cp.numQubits = nq;
  cp.gatesPerQubit = gpq;
  cp.binaryFraction = f;
  cp.seed = mix(base + 2);
  return {gen_circuit(cp), gen_network(np_params)};
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  check_config(cfg);
  struct Cell {
    std::size_t value;
    std::size_t algo;
    std::size_t seed;
  };
  std::vector<Cell> cells;
  for (std::size_t v = 0; v < cfg.values.size(); ++v) {
    for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
      for (std::size_t s = 0; s < cfg.seeds.size(); ++s) {
        cells.push_back({v, a, s});
      }
    }
  }
  std::vector<SweepRow> rows(cells.size());
  if (cfg.planDir) {
    std::filesystem::create_directories(*cfg.planDir);
  }

  const auto runCell = [&](const Cell& cell) {
    const double value = cfg.values[cell.value];
    const Algorithm algo = cfg.algorithms[cell.algo];
    const std::uint64_t seed = cfg.seeds[cell.seed];
    SweepRow row;
    row.param = to_string(cfg.varying);
    row.value = format_value(value);
    row.algorithm = to_string(algo);
    row.seed = seed;
    try {
      const Instance inst = make_instance(cfg, value, seed);
      const DistanceMatrix d = all_pairs_distance(inst.network);
      SolveParams params;
      params.tabu.seed = mix(seed + 3);
      params.exec = Execution::Serial;
      const auto t0 = std::chrono::steady_clock::now();
      const Plan plan = run_algorithm(algo, inst.circuit, inst.network, d, params);
      const auto t1 = std::chrono::steady_clock::now();
      row.totalCost = plan.totalCost;
      row.migrationCost = plan.migrationCost();
      row.teleportCost = plan.teleportCost();
      row.numCuts = static_cast<int>(plan.cuts.size());
      if (cfg.timing) {
        row.runtimeMs =
            std::chrono::duration<double, std::milli>(t1 - t0).count();
      }
      row.valid = validate_plan(plan, inst.circuit, inst.network).empty();
      if (cfg.planDir) {
        const std::string stem =
            row.param + "_" + row.value + "_" + std::to_string(seed);
        if (cell.algo == 0) {
          write_file(*cfg.planDir / (stem + "_circuit.json"),
                     circuit_to_text(inst.circuit));
          write_file(*cfg.planDir / (stem + "_network.json"),
                     network_to_text(inst.network));
        }
        write_file(*cfg.planDir / (stem + "_" + row.algorithm + "_plan.json"),
                   plan_to_text(plan));
      }
    } catch (const std::exception&) {
      row.valid = false;
    }
    return row;
  };

  const auto count = static_cast<long>(cells.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(cfg.jobs)
  for (long i = 0; i < count; ++i) {
    rows[static_cast<std::size_t>(i)] = runCell(cells[static_cast<std::size_t>(i)]);
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "param,value,algorithm,seed,total_cost,migration_cost,teleport_cost,"
         "num_cuts,runtime_ms,valid\n";
  for (const auto& r : rows) {
    out << r.param << ',' << r.value << ',' << r.algorithm << ',' << r.seed
        << ',' << r.totalCost << ',' << r.migrationCost << ','
        << r.teleportCost << ',' << r.numCuts << ',' << r.runtimeMs << ','
        << (r.valid ? "true" : "false") << '\n';
  }
  return out.str();
}

} // namespace qcut
