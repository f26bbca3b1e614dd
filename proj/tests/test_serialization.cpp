#include "qcut/errors.hpp"
#include "qcut/planner.hpp"
#include "qcut/serialization.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <filesystem>

namespace qcut {
namespace {

const std::filesystem::path kData = QCUT_TEST_DATA_DIR;

TEST(Serialization, FixtureFilesMatch) {
  EXPECT_EQ(circuit_from_text(read_file(kData / "cex2_circuit.json")), test::cex2());
  EXPECT_EQ(network_from_text(read_file(kData / "cex2_network.json")),
            test::cex2_network());
}

TEST(Serialization, RoundTrips) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto inst = test::desk_instance(seed, 8, 3, 8);
    const std::string ct = circuit_to_text(inst.circuit);
    EXPECT_EQ(circuit_from_text(ct), inst.circuit);
    EXPECT_EQ(circuit_to_text(circuit_from_text(ct)), ct);
    const std::string nt = network_to_text(inst.network);
    EXPECT_EQ(network_from_text(nt), inst.network);

    SolveParams params;
    params.tabu.seed = seed;
    const Plan plan = overall_plan(inst.circuit, inst.network,
                                   all_pairs_distance(inst.network), params);
    const std::string pt = plan_to_text(plan);
    EXPECT_EQ(plan_from_text(pt), plan);
    EXPECT_EQ(pt.back(), '\n');
  }
}

TEST(Serialization, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "qcut_ser_test.json";
  write_file(path, "abc\n");
  EXPECT_EQ(read_file(path), "abc\n");
  std::filesystem::remove(path);
  EXPECT_THROW(read_file(path), FormatError);
}

TEST(Serialization, RejectsBadInput) {
  EXPECT_THROW(circuit_from_text("{"), FormatError);
  EXPECT_THROW(circuit_from_text(R"({"num_qubits": 2})"), FormatError);
  EXPECT_THROW(
      circuit_from_text(R"({"num_qubits": 2, "gates": [{"kind": "x", "operands": [0]}]})"),
      FormatError);
  EXPECT_THROW(
      circuit_from_text(R"({"num_qubits": 2, "gates": [{"kind": "cz", "operands": [0, 0]}]})"),
      DuplicateBinaryOperand);
  EXPECT_THROW(
      circuit_from_text(R"({"num_qubits": 2, "gates": [{"kind": "u", "operands": [2]}]})"),
      OperandOutOfRange);
  EXPECT_THROW(network_from_text(
                   R"({"num_nodes": 2, "edges": [[0]], "storage": [1, 1], "exec_mem": [1, 1]})"),
               FormatError);
  EXPECT_THROW(network_from_text(
                   R"({"num_nodes": 2, "edges": [[0, 0]], "storage": [1, 1], "exec_mem": [1, 1]})"),
               InvalidNetwork);
  EXPECT_THROW(plan_from_text(R"({"cuts": []})"), FormatError);
}

} // namespace
} // namespace qcut
