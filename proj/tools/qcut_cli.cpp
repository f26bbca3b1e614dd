#include "qcut/errors.hpp"
#include "qcut/experiment.hpp"
#include "qcut/generators.hpp"
#include "qcut/oracle.hpp"
#include "qcut/planner.hpp"
#include "qcut/serialization.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>

namespace {

enum Exit { kOk = 0, kBadInput = 2, kInfeasible = 3, kInvariant = 4 };

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag,
                           std::ostream& log) {
  if (flag) {
    return *flag;
  }
  if (const char* env = std::getenv("QCUT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw qcut::InvalidParameters("QCUT_SEED is not an unsigned integer");
    }
  }
  std::random_device rd;
  const std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  log << "seed=" << seed << "\n";
  return seed;
}

int classify(const qcut::Error& e) {
  if (dynamic_cast<const qcut::InsufficientStorage*>(&e) ||
      dynamic_cast<const qcut::Disconnected*>(&e) ||
      dynamic_cast<const qcut::Uncoverable*>(&e) ||
      dynamic_cast<const qcut::IrreparableCapacity*>(&e) ||
      dynamic_cast<const qcut::GenerationExhausted*>(&e)) {
    return kInfeasible;
  }
  if (dynamic_cast<const qcut::NotTwoQubits*>(&e) ||
      dynamic_cast<const qcut::SameQubit*>(&e) ||
      dynamic_cast<const qcut::OddCut*>(&e) ||
      dynamic_cast<const qcut::CutOutOfRange*>(&e)) {
    return kInvariant;
  }
  return kBadInput;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Teleportation and migration planner for distributed quantum "
               "circuits"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Write a random circuit and network");
  int genQubits = 20;
  int genNodes = 5;
  int genGates = 20;
  double genFraction = 0.5;
  double genEdge = 0.5;
  std::optional<int> genExec;
  std::optional<std::uint64_t> genSeed;
  std::string genCircuit = "circuit.json";
  std::string genNetwork = "network.json";
  gen->add_option("--qubits", genQubits, "Number of qubits");
  gen->add_option("--nodes", genNodes, "Number of computers");
  gen->add_option("--gates-per-qubit", genGates, "Gates per qubit");
  gen->add_option("--binary-fraction", genFraction, "Fraction of CZ gates");
  gen->add_option("--edge-probability", genEdge, "Erdős–Rényi edge probability");
  gen->add_option("--exec-mem", genExec, "Fixed execution memory per node");
  gen->add_option("--seed", genSeed, "Random seed");
  gen->add_option("--circuit", genCircuit, "Circuit output path");
  gen->add_option("--network", genNetwork, "Network output path");

  // solve
  auto* solve = app.add_subcommand("solve", "Plan an instance");
  std::string solveCircuit;
  std::string solveNetwork;
  std::string solveAlgo = "overall";
  std::optional<std::uint64_t> solveSeed;
  std::string solveOut;
  bool solveSerial = false;
  solve->add_option("--circuit", solveCircuit, "Circuit file")->required();
  solve->add_option("--network", solveNetwork, "Network file")->required();
  solve->add_option("--algo", solveAlgo,
                    "dqcm, dqcm_greedy, sequence, split or overall");
  solve->add_option("--seed", solveSeed, "Tabu search seed");
  solve->add_option("--out", solveOut, "Plan output path");
  solve->add_flag("--serial", solveSerial, "Disable OpenMP kernels");

  // validate
  auto* validate = app.add_subcommand("validate", "Check a plan");
  std::string valCircuit;
  std::string valNetwork;
  std::string valPlan;
  validate->add_option("--circuit", valCircuit, "Circuit file")->required();
  validate->add_option("--network", valNetwork, "Network file")->required();
  validate->add_option("--plan", valPlan, "Plan file")->required();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep to CSV");
  std::string sweepConfig;
  std::string sweepParam;
  std::vector<double> sweepValues;
  std::vector<std::string> sweepAlgos;
  std::vector<std::uint64_t> sweepSeeds;
  std::optional<int> sweepNumSeeds;
  std::optional<int> sweepJobs;
  std::optional<int> sweepScale;
  bool sweepTiming = false;
  std::string sweepOut;
  std::string sweepPlanDir;
  sweep->add_option("--config", sweepConfig, "JSON sweep configuration");
  sweep->add_option("--param", sweepParam, "Varied parameter");
  sweep->add_option("--values", sweepValues, "Values of the varied parameter");
  sweep->add_option("--algos", sweepAlgos, "Algorithms to run");
  sweep->add_option("--seeds", sweepSeeds, "Explicit seeds");
  sweep->add_option("--num-seeds", sweepNumSeeds, "Use seeds 1..N");
  sweep->add_option("--jobs", sweepJobs, "Concurrent cells");
  sweep->add_option("--scale", sweepScale, "Divisor for qubit and gate counts");
  sweep->add_flag("--timing", sweepTiming, "Record wall-clock runtimes");
  sweep->add_option("--out", sweepOut, "CSV path (default stdout)");
  sweep->add_option("--plan-dir", sweepPlanDir, "Write instances and plans here");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exact optimum of a tiny instance");
  std::string orCircuit;
  std::string orNetwork;
  int orCuts = 0;
  oracle->add_option("--circuit", orCircuit, "Circuit file")->required();
  oracle->add_option("--network", orNetwork, "Network file")->required();
  oracle->add_option("--max-cuts", orCuts, "Also solve with up to this many cuts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (gen->parsed()) {
      qcut::NetworkGenParams np;
      np.numNodes = genNodes;
      np.edgeProbability = genEdge;
      np.numQubits = genQubits;
      np.fixedExecMem = genExec;
      qcut::CircuitGenParams cp;
      cp.numQubits = genQubits;
      cp.gatesPerQubit = genGates;
      cp.binaryFraction = genFraction;
      const std::uint64_t seed = resolve_seed(genSeed, std::cout);
      np.seed = seed;
      cp.seed = seed + 1;
      const auto circuit = qcut::gen_circuit(cp);
      const auto network = qcut::gen_network(np);
      qcut::write_file(genCircuit, qcut::circuit_to_text(circuit));
      qcut::write_file(genNetwork, qcut::network_to_text(network));
      return kOk;
    }

    if (solve->parsed()) {
      const auto circuit = qcut::circuit_from_text(qcut::read_file(solveCircuit));
      const auto network = qcut::network_from_text(qcut::read_file(solveNetwork));
      const auto algo = qcut::parse_algorithm(solveAlgo);
      qcut::SolveParams params;
      params.tabu.seed = resolve_seed(solveSeed, std::cerr);
      params.exec = solveSerial ? qcut::Execution::Serial
                                : qcut::Execution::Parallel;
      const auto d = qcut::all_pairs_distance(network);
      const auto plan = qcut::run_algorithm(algo, circuit, network, d, params);
      const auto issues = qcut::validate_plan(plan, circuit, network);
      for (const auto& s : issues) {
        std::cerr << s << "\n";
      }
      if (!solveOut.empty()) {
        qcut::write_file(solveOut, qcut::plan_to_text(plan));
      }
      std::cout << "cost=" << plan.totalCost
                << " migrations=" << plan.numMigrations()
                << " teleports=" << plan.teleports.size() << "\n";
      return issues.empty() ? kOk : kInvariant;
    }

    if (validate->parsed()) {
      const auto circuit = qcut::circuit_from_text(qcut::read_file(valCircuit));
      const auto network = qcut::network_from_text(qcut::read_file(valNetwork));
      const auto plan = qcut::plan_from_text(qcut::read_file(valPlan));
      const auto issues = qcut::validate_plan(plan, circuit, network);
      for (const auto& s : issues) {
        std::cout << s << "\n";
      }
      if (issues.empty()) {
        std::cout << "ok cost=" << plan.totalCost << "\n";
        return kOk;
      }
      return kInvariant;
    }

    if (sweep->parsed()) {
      qcut::SweepConfig cfg;
      if (!sweepConfig.empty()) {
        cfg = qcut::sweep_config_from_text(qcut::read_file(sweepConfig));
      }
      if (!sweepParam.empty()) {
        cfg.varying = qcut::parse_sweep_param(sweepParam);
      }
      if (!sweepValues.empty()) {
        cfg.values = sweepValues;
      }
      if (!sweepAlgos.empty()) {
        cfg.algorithms.clear();
        for (const auto& a : sweepAlgos) {
          cfg.algorithms.push_back(qcut::parse_algorithm(a));
        }
      }
      if (!sweepSeeds.empty()) {
        cfg.seeds = sweepSeeds;
      } else if (sweepNumSeeds) {
        cfg.seeds.clear();
        for (int s = 1; s <= *sweepNumSeeds; ++s) {
          cfg.seeds.push_back(static_cast<std::uint64_t>(s));
        }
      }
      if (sweepJobs) {
        cfg.jobs = *sweepJobs;
      }
      if (sweepScale) {
        cfg.scaleFactor = *sweepScale;
      }
      cfg.timing = cfg.timing || sweepTiming;
      if (!sweepPlanDir.empty()) {
        cfg.planDir = sweepPlanDir;
      }
      const std::string csv = qcut::sweep_csv(qcut::run_sweep(cfg));
      if (sweepOut.empty()) {
        std::cout << csv;
      } else {
        qcut::write_file(sweepOut, csv);
      }
      return kOk;
    }

    if (oracle->parsed()) {
      const auto circuit = qcut::circuit_from_text(qcut::read_file(orCircuit));
      const auto network = qcut::network_from_text(qcut::read_file(orNetwork));
      const auto best = qcut::oracle_dqcm(circuit, network);
      std::cout << "dqcm=" << best.cost << "\n";
      if (orCuts > 0) {
        std::cout << "dqc=" << qcut::oracle_dqc(circuit, network, orCuts) << "\n";
      }
      return kOk;
    }
  } catch (const qcut::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return classify(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvariant;
  }
  return kBadInput;
}
