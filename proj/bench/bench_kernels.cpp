#include "qcut/generators.hpp"
#include "qcut/interaction.hpp"
#include "qcut/planner.hpp"

#include <benchmark/benchmark.h>

#include <map>

namespace {

struct Fixture {
  qcut::Circuit circuit;
  qcut::Network network;
  qcut::DistanceMatrix dist;
};

const Fixture& fixture(int qubits) {
  static std::map<int, Fixture> cache;
  auto it = cache.find(qubits);
  if (it == cache.end()) {
    qcut::CircuitGenParams cp;
    cp.numQubits = qubits;
    cp.gatesPerQubit = 20;
    cp.seed = 11;
    qcut::NetworkGenParams np;
    np.numNodes = 5;
    np.numQubits = qubits;
    np.seed = 12;
    Fixture f{qcut::gen_circuit(cp), qcut::gen_network(np), {}};
    f.dist = qcut::all_pairs_distance(f.network);
    it = cache.emplace(qubits, std::move(f)).first;
  }
  return it->second;
}

void BM_Interaction(benchmark::State& state, qcut::Execution exec) {
  const auto& f = fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qcut::interaction_matrix(f.circuit, exec));
  }
}

void BM_Split(benchmark::State& state, qcut::Execution exec) {
  const auto& f = fixture(static_cast<int>(state.range(0)));
  qcut::SolveParams params;
  params.tabu.seed = 5;
  params.exec = exec;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qcut::split_plan(f.circuit, f.network, f.dist, params));
  }
}

} // namespace

BENCHMARK_CAPTURE(BM_Interaction, serial, qcut::Execution::Serial)
    ->Arg(20)->Arg(50);
BENCHMARK_CAPTURE(BM_Interaction, parallel, qcut::Execution::Parallel)
    ->Arg(20)->Arg(50);
BENCHMARK_CAPTURE(BM_Split, serial, qcut::Execution::Serial)
    ->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Split, parallel, qcut::Execution::Parallel)
    ->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
