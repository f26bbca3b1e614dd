#include "qcut/serialization.hpp"

#include "qcut/errors.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace qcut {

using Json = nlohmann::ordered_json;

namespace {

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// Runs `f`, turning JSON access errors into FormatError.
template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw FormatError(std::string("bad ") + what + ": " + e.what());
  }
}

} // namespace

std::string circuit_to_text(const Circuit& c) {
  Json gates = Json::array();
  for (const Gate& g : c.gates()) {
    if (g.isBinary()) {
      gates.push_back({{"kind", "cz"}, {"operands", {g.first, g.second}}});
    } else {
      gates.push_back({{"kind", "u"}, {"operands", {g.first}}});
    }
  }
  return dump({{"num_qubits", c.numQubits()}, {"gates", gates}});
}

Circuit circuit_from_text(const std::string& text) {
  const Json j = parse(text);
  auto [nq, descs] = guarded("circuit", [&] {
    std::vector<GateDescriptor> out;
    for (const auto& g : j.at("gates")) {
      const auto kind = g.at("kind").get<std::string>();
      if (kind != "u" && kind != "cz") {
        throw FormatError("unknown gate kind '" + kind + "'");
      }
      out.push_back({kind == "cz" ? GateKind::Binary : GateKind::Unary,
                     g.at("operands").get<std::vector<Qubit>>()});
    }
    return std::make_pair(j.at("num_qubits").get<int>(), std::move(out));
  });
  return build_circuit(nq, descs);
}

std::string network_to_text(const Network& n) {
  Json edges = Json::array();
  for (const auto& [u, v] : n.edges) {
    edges.push_back({u, v});
  }
  return dump({{"num_nodes", n.numNodes},
               {"edges", edges},
               {"storage", n.storage},
               {"exec_mem", n.execMem}});
}

Network network_from_text(const std::string& text) {
  const Json j = parse(text);
  return guarded("network", [&] {
    std::vector<std::pair<Node, Node>> edges;
    for (const auto& e : j.at("edges")) {
      if (e.size() != 2) {
        throw FormatError("edge must have two endpoints");
      }
      edges.emplace_back(e.at(0).get<Node>(), e.at(1).get<Node>());
    }
    return make_network(j.at("num_nodes").get<int>(), std::move(edges),
                        j.at("storage").get<std::vector<int>>(),
                        j.at("exec_mem").get<std::vector<int>>());
  });
}

std::string plan_to_text(const Plan& p) {
  Json segments = Json::array();
  for (const auto& s : p.segments) {
    Json ms = Json::array();
    for (const auto& m : s.migrations) {
      ms.push_back({{"qubit", m.qubit},
                    {"target", m.target},
                    {"t_s", m.start},
                    {"t_e", m.end},
                    {"cost", m.cost}});
    }
    segments.push_back({{"start", s.start},
                        {"end", s.end},
                        {"assignment", s.assignment.home},
                        {"migrations", ms}});
  }
  Json teleports = Json::array();
  for (const auto& t : p.teleports) {
    teleports.push_back({{"qubit", t.qubit},
                         {"target", t.target},
                         {"instant", t.instant},
                         {"cost", t.cost}});
  }
  return dump({{"cuts", p.cuts},
               {"segments", segments},
               {"teleports", teleports},
               {"total_cost", p.totalCost}});
}

Plan plan_from_text(const std::string& text) {
  const Json j = parse(text);
  return guarded("plan", [&] {
    Plan p;
    p.cuts = j.at("cuts").get<std::vector<Instant>>();
    for (const auto& s : j.at("segments")) {
      SegmentPlan seg;
      seg.start = s.at("start").get<Instant>();
      seg.end = s.at("end").get<Instant>();
      seg.assignment.home = s.at("assignment").get<std::vector<Node>>();
      for (const auto& m : s.at("migrations")) {
        seg.migrations.push_back({m.at("qubit").get<Qubit>(),
                                  m.at("target").get<Node>(),
                                  m.at("t_s").get<Instant>(),
                                  m.at("t_e").get<Instant>(),
                                  m.at("cost").get<int>()});
      }
      p.segments.push_back(std::move(seg));
    }
    for (const auto& t : j.at("teleports")) {
      p.teleports.push_back({t.at("qubit").get<Qubit>(),
                             t.at("target").get<Node>(),
                             t.at("instant").get<Instant>(),
                             t.at("cost").get<int>()});
    }
    p.totalCost = j.at("total_cost").get<long>();
    return p;
  });
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FormatError("cannot read " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    throw FormatError("cannot write " + path.string());
  }
}

} // namespace qcut
