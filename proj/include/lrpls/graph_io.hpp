#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "graph.hpp"

namespace lrpls {

using json = nlohmann::json;

inline json to_json(const ConfiguredGraph& g) {
  json nodes = json::array();
  for (const auto& r : g.nodes()) {
    json node = {{"id", r.id}};
    if (r.weight != 1) node["weight"] = r.weight;
    if (!r.data.empty()) node["data"] = r.data;
    if (!r.prd.empty()) node["prd"] = r.prd;
    if (!r.constrained) node["constrained"] = false;
    if (r.output) node["output"] = *r.output;
    nodes.push_back(std::move(node));
  }
  json edges = json::array();
  for (const auto& e : g.edges()) {
    if (e.constrained) {
      edges.push_back(json::array({g.id(e.u), g.id(e.v)}));
    } else {
      edges.push_back({{"u", g.id(e.u)}, {"v", g.id(e.v)}, {"constrained", false}});
    }
  }
  return {{"directed", g.directed()}, {"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

inline ConfiguredGraph from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("graph file must hold a JSON object");
  bool directed = j.value("directed", false);
  std::vector<NodeRecord> nodes;
  for (const auto& jn : j.at("nodes")) {
    NodeRecord r;
    if (jn.is_number_integer()) {
      r.id = jn.get<NodeId>();
    } else {
      r.id = jn.at("id").get<NodeId>();
      r.weight = jn.value("weight", std::int64_t{1});
      r.data = jn.value("data", std::string{});
      r.prd = jn.value("prd", std::string{});
      r.constrained = jn.value("constrained", true);
      if (jn.contains("output") && !jn.at("output").is_null()) r.output = jn.at("output").get<std::int64_t>();
    }
    nodes.push_back(std::move(r));
  }
  std::vector<EdgeSpec> edges;
  for (const auto& je : j.at("edges")) {
    EdgeSpec e;
    if (je.is_array()) {
      if (je.size() != 2) throw std::invalid_argument("edge arrays must have two endpoints");
      e.u = je[0].get<NodeId>();
      e.v = je[1].get<NodeId>();
    } else {
      e.u = je.at("u").get<NodeId>();
      e.v = je.at("v").get<NodeId>();
      e.constrained = je.value("constrained", true);
    }
    edges.push_back(e);
  }
  return ConfiguredGraph(directed, std::move(nodes), edges);
}

/// Rebuild with edges sorted by endpoint ids; ports follow the sorted order.
inline ConfiguredGraph canonicalize(const ConfiguredGraph& g) {
  std::vector<EdgeSpec> specs;
  for (const auto& e : g.edges()) {
    NodeId a = g.id(e.u), b = g.id(e.v);
    if (!g.directed() && a > b) std::swap(a, b);
    specs.push_back({a, b, e.constrained, std::nullopt, std::nullopt});
  }
  std::sort(specs.begin(), specs.end(), [](const EdgeSpec& x, const EdgeSpec& y) {
    return std::pair(x.u, x.v) < std::pair(y.u, y.v);
  });
  return ConfiguredGraph(g.directed(), g.nodes(), specs);
}

inline std::string to_text(const ConfiguredGraph& g) { return to_json(g).dump(1) + "\n"; }

inline ConfiguredGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument("malformed graph file " + path + ": " + e.what());
  }
  return from_json(j);
}

inline void write_graph_file(const std::string& path, const ConfiguredGraph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_text(g);
}

}  // namespace lrpls
