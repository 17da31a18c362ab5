#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "forests.hpp"
#include "graph.hpp"

namespace lrpls {

/// A graph family closed under node-induced subgraphs and disjoint union.
/// `distance` is the least number of edges whose removal lands in the
/// family (exact, small graphs only); absent when no exact oracle exists.
struct CgfFamily {
  std::string name;
  bool directed = false;
  std::function<bool(const ConfiguredGraph&)> member;
  std::function<std::int64_t(const ConfiguredGraph&)> distance;
};

inline bool is_dag(const ConfiguredGraph& g) {
  if (!g.directed()) return g.m() == 0;
  std::vector<int> indeg(g.n(), 0);
  for (const auto& e : g.edges()) ++indeg[e.v];
  std::vector<int> ready;
  for (int v = 0; v < g.n(); ++v) {
    if (indeg[v] == 0) ready.push_back(v);
  }
  int seen = 0;
  while (!ready.empty()) {
    int x = ready.back();
    ready.pop_back();
    ++seen;
    for (const auto& a : g.neighbors(x)) {
      const auto& e = g.edge(a.edge);
      if (e.u == x && --indeg[e.v] == 0) ready.push_back(e.v);
    }
  }
  return seen == g.n();
}

/// Proper k-colouring, or nullopt. Two colours by BFS, more by
/// saturation-ordered backtracking.
inline std::optional<std::vector<int>> k_coloring(const ConfiguredGraph& g, int k) {
  std::vector<int> color(g.n(), -1);
  if (k <= 2) {
    for (int s = 0; s < g.n(); ++s) {
      if (color[s] != -1) continue;
      color[s] = 0;
      std::vector<int> stack{s};
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (const auto& a : g.neighbors(x)) {
          if (a.nbr == x || k == 1) return std::nullopt;
          if (color[a.nbr] == color[x]) return std::nullopt;
          if (color[a.nbr] == -1) {
            color[a.nbr] = 1 - color[x];
            stack.push_back(a.nbr);
          }
        }
      }
    }
    return color;
  }
  // used[v][c]: neighbours of v currently coloured c
  std::vector<std::vector<int>> used(g.n(), std::vector<int>(k, 0));
  std::vector<int> sat(g.n(), 0);
  auto pick = [&] {
    int best = -1;
    for (int v = 0; v < g.n(); ++v) {
      if (color[v] != -1) continue;
      if (best == -1 || sat[v] > sat[best] || (sat[v] == sat[best] && g.degree(v) > g.degree(best))) best = v;
    }
    return best;
  };
  auto paint = [&](int v, int c, int delta) {
    for (const auto& a : g.neighbors(v)) {
      auto& u = used[a.nbr][c];
      if (delta > 0 && u++ == 0) ++sat[a.nbr];
      if (delta < 0 && --u == 0) --sat[a.nbr];
    }
  };
  std::function<bool()> place = [&] {
    int v = pick();
    if (v == -1) return true;
    for (int c = 0; c < k; ++c) {
      if (used[v][c]) continue;
      color[v] = c;
      paint(v, c, 1);
      if (place()) return true;
      paint(v, c, -1);
      color[v] = -1;
    }
    return false;
  };
  if (!place()) return std::nullopt;
  return color;
}

/// Longest-path depth of each node in a DAG (sources at 0).
inline std::vector<std::int64_t> dag_levels(const ConfiguredGraph& g) {
  std::vector<int> indeg(g.n(), 0);
  for (const auto& e : g.edges()) ++indeg[e.v];
  std::vector<std::int64_t> level(g.n(), 0);
  std::vector<int> ready;
  for (int v = 0; v < g.n(); ++v) {
    if (indeg[v] == 0) ready.push_back(v);
  }
  while (!ready.empty()) {
    int x = ready.back();
    ready.pop_back();
    for (const auto& a : g.neighbors(x)) {
      const auto& e = g.edge(a.edge);
      if (e.u != x) continue;
      level[e.v] = std::max(level[e.v], level[x] + 1);
      if (--indeg[e.v] == 0) ready.push_back(e.v);
    }
  }
  return level;
}

inline bool is_planar(const ConfiguredGraph& g) {
  using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  BGraph b(g.n());
  for (const auto& e : g.edges()) boost::add_edge(e.u, e.v, b);
  return boost::boyer_myrvold_planarity_test(b);
}

namespace detail {

inline void require_small(const ConfiguredGraph& g, int cap, const char* what) {
  if (g.n() > cap) throw std::invalid_argument(std::string(what) + " distance oracle is capped at n <= " + std::to_string(cap));
}

}  // namespace detail

inline std::int64_t forest_distance(const ConfiguredGraph& g) { return g.m() - g.n() + component_count(g); }

/// m minus the max cut, by enumerating sides (node 0 fixed).
inline std::int64_t bipartite_distance(const ConfiguredGraph& g) {
  detail::require_small(g, 20, "2-colour");
  if (g.n() == 0) return 0;
  std::int64_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << (g.n() - 1)); ++mask) {
    std::uint32_t side = mask << 1;
    std::int64_t cut = 0;
    for (const auto& e : g.edges()) cut += ((side >> e.u) & 1) != ((side >> e.v) & 1);
    best = std::max(best, cut);
  }
  return g.m() - best;
}

/// Minimum feedback arc set size by DP over node orderings.
inline std::int64_t dag_distance(const ConfiguredGraph& g) {
  if (!g.directed()) return g.m();
  detail::require_small(g, 20, "DAG");
  int n = g.n();
  std::vector<std::uint32_t> in_mask(n, 0);
  for (const auto& e : g.edges()) in_mask[e.v] |= 1u << e.u;
  std::vector<int> best(1u << n, -1);
  best[0] = 0;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    if (best[s] < 0) continue;
    for (int v = 0; v < n; ++v) {
      if ((s >> v) & 1) continue;
      int gain = __builtin_popcount(in_mask[v] & s);
      auto& slot = best[s | (1u << v)];
      slot = std::max(slot, best[s] + gain);
    }
  }
  return g.m() - best[(1u << n) - 1];
}

inline CgfFamily forest_family() {
  return {"forest", false, [](const ConfiguredGraph& g) { return is_forest(g); }, forest_distance};
}

inline CgfFamily kcolor_family(int k) {
  CgfFamily f{k == 2 ? "2color" : "kcolor:" + std::to_string(k), false,
              [k](const ConfiguredGraph& g) { return k_coloring(g, k).has_value(); }, {}};
  if (k == 2) f.distance = bipartite_distance;
  return f;
}

inline CgfFamily dag_family() {
  return {"dag", true, [](const ConfiguredGraph& g) { return is_dag(g); }, dag_distance};
}

inline CgfFamily arboricity_family(int c) {
  return {"arboricity-" + std::to_string(c), false,
          [c](const ConfiguredGraph& g) { return forest_union_rank(g, c) == g.m(); },
          [c](const ConfiguredGraph& g) -> std::int64_t { return g.m() - forest_union_rank(g, c); }};
}

inline CgfFamily planar_family() {
  return {"planar", false, [](const ConfiguredGraph& g) { return is_planar(g); }, {}};
}

inline CgfFamily family_by_name(const std::string& name) {
  if (name == "forest") return forest_family();
  if (name == "2color") return kcolor_family(2);
  if (name == "dag") return dag_family();
  if (name == "planar") return planar_family();
  if (name.rfind("arboricity-", 0) == 0) return arboricity_family(std::stoi(name.substr(11)));
  if (name.rfind("kcolor:", 0) == 0) return kcolor_family(std::stoi(name.substr(7)));
  throw std::invalid_argument("unknown family '" + name + "'");
}

}  // namespace lrpls
