#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "families.hpp"
#include "forests.hpp"
#include "graph.hpp"
#include "problem.hpp"
#include "solvers.hpp"

namespace lrpls {

// Deterministic instance generators. Node ids are 0..n-1 unless stated.

namespace detail {

inline std::vector<NodeRecord> plain_nodes(int n) {
  std::vector<NodeRecord> nodes(n);
  for (int i = 0; i < n; ++i) nodes[i].id = i;
  return nodes;
}

inline ConfiguredGraph from_pairs(int n, const std::vector<std::pair<int, int>>& pairs, bool directed = false) {
  std::vector<EdgeSpec> specs;
  specs.reserve(pairs.size());
  for (auto [u, v] : pairs) specs.push_back({u, v, true, std::nullopt, std::nullopt});
  return ConfiguredGraph(directed, plain_nodes(n), specs);
}

}  // namespace detail

inline ConfiguredGraph path_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return detail::from_pairs(n, e);
}

inline ConfiguredGraph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("a cycle needs at least 3 nodes");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return detail::from_pairs(n, e);
}

/// K_{1,n-1} with the center at id 0.
inline ConfiguredGraph star_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i < n; ++i) e.emplace_back(0, i);
  return detail::from_pairs(n, e);
}

inline ConfiguredGraph complete_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  }
  return detail::from_pairs(n, e);
}

inline ConfiguredGraph complete_bipartite(int a, int b) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
  }
  return detail::from_pairs(a + b, e);
}

/// G(n, p) by geometric skipping, so sparse graphs cost O(n + m).
inline ConfiguredGraph gnp_graph(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<int, int>> e;
  if (p >= 1.0) return complete_graph(n);
  if (p > 0.0) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double lq = std::log(1.0 - p);
    long long v = 1, w = -1;
    while (v < n) {
      double r = unit(rng);
      w += 1 + static_cast<long long>(std::floor(std::log(1.0 - r) / lq));
      while (w >= v && v < n) {
        w -= v;
        ++v;
      }
      if (v < n) e.emplace_back(static_cast<int>(w), static_cast<int>(v));
    }
  }
  return detail::from_pairs(n, e);
}

/// Uniform random labelled tree (random Pruefer sequence).
inline ConfiguredGraph random_tree(int n, std::uint64_t seed) {
  std::vector<std::pair<int, int>> e;
  if (n <= 1) return detail::from_pairs(n, e);
  if (n == 2) return detail::from_pairs(2, {{0, 1}});
  std::mt19937_64 rng(seed);
  std::vector<int> code(n - 2), degree(n, 1);
  for (auto& c : code) {
    c = static_cast<int>(rng() % n);
    ++degree[c];
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> leaves;
  for (int v = 0; v < n; ++v) {
    if (degree[v] == 1) leaves.push(v);
  }
  for (int c : code) {
    int leaf = leaves.top();
    leaves.pop();
    e.emplace_back(leaf, c);
    if (--degree[c] == 1) leaves.push(c);
  }
  int a = leaves.top();
  leaves.pop();
  e.emplace_back(a, leaves.top());
  return detail::from_pairs(n, e);
}

/// Random forest: a random tree with each edge kept with probability `keep`.
inline ConfiguredGraph random_forest(int n, double keep, std::uint64_t seed) {
  auto t = random_tree(n, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::bernoulli_distribution coin(keep);
  std::vector<std::pair<int, int>> e;
  for (const auto& ed : t.edges()) {
    if (coin(rng)) e.emplace_back(ed.u, ed.v);
  }
  return detail::from_pairs(n, e);
}

/// Random bipartite graph: sides {0..a-1} and {a..a+b-1}, edge probability p.
inline ConfiguredGraph random_bipartite(int a, int b, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) {
      if (coin(rng)) e.emplace_back(i, a + j);
    }
  }
  return detail::from_pairs(a + b, e);
}

/// Sparse bipartite graph with about `deg` average degree: a random tree
/// 2-coloured, plus random cross edges.
inline ConfiguredGraph sparse_bipartite(int n, double deg, std::uint64_t seed) {
  auto t = random_tree(n, seed);
  std::vector<int> side(n, -1);
  side[0] = 0;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (const auto& a : t.neighbors(x)) {
      if (side[a.nbr] < 0) {
        side[a.nbr] = 1 - side[x];
        stack.push_back(a.nbr);
      }
    }
  }
  std::vector<int> left, right;
  for (int v = 0; v < n; ++v) (side[v] ? right : left).push_back(v);
  std::vector<std::pair<int, int>> e;
  std::unordered_set<std::uint64_t> seen;
  auto key = [](int u, int v) { return (static_cast<std::uint64_t>(std::min(u, v)) << 32) | std::max(u, v); };
  for (const auto& ed : t.edges()) {
    e.emplace_back(ed.u, ed.v);
    seen.insert(key(ed.u, ed.v));
  }
  std::mt19937_64 rng(seed + 17);
  long long extra = std::max<long long>(0, static_cast<long long>(deg * n / 2.0) - (n - 1));
  for (long long k = 0; k < extra && !left.empty() && !right.empty(); ++k) {
    int u = left[rng() % left.size()], v = right[rng() % right.size()];
    if (seen.insert(key(u, v)).second) e.emplace_back(u, v);
  }
  return detail::from_pairs(n, e);
}

/// Orients every edge from lower to higher id under a random permutation.
inline ConfiguredGraph random_dag(int n, double p, std::uint64_t seed) {
  auto g = gnp_graph(n, p, seed);
  std::vector<int> rank(n);
  std::iota(rank.begin(), rank.end(), 0);
  std::mt19937_64 rng(seed + 1);
  std::shuffle(rank.begin(), rank.end(), rng);
  std::vector<std::pair<int, int>> e;
  for (const auto& ed : g.edges()) {
    if (rank[ed.u] < rank[ed.v]) e.emplace_back(ed.u, ed.v);
    else e.emplace_back(ed.v, ed.u);
  }
  return detail::from_pairs(n, e, true);
}

/// Random orientation of an undirected graph.
inline ConfiguredGraph random_orientation(const ConfiguredGraph& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<int, int>> e;
  for (const auto& ed : g.edges()) {
    if (rng() & 1) e.emplace_back(ed.u, ed.v);
    else e.emplace_back(ed.v, ed.u);
  }
  return detail::from_pairs(g.n(), e, true);
}

/// Union of c random spanning trees (duplicates dropped): arboricity <= c.
inline ConfiguredGraph random_low_arboricity(int n, int c, std::uint64_t seed) {
  std::vector<std::pair<int, int>> e;
  std::unordered_set<std::uint64_t> seen;
  for (int k = 0; k < c; ++k) {
    auto t = random_tree(n, seed + 1000003ULL * k);
    for (const auto& ed : t.edges()) {
      auto key = (static_cast<std::uint64_t>(std::min(ed.u, ed.v)) << 32) | std::max(ed.u, ed.v);
      if (seen.insert(key).second) e.emplace_back(ed.u, ed.v);
    }
  }
  return detail::from_pairs(n, e);
}

/// Random weights in 1..max_w.
inline ConfiguredGraph with_random_weights(const ConfiguredGraph& g, std::int64_t max_w, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return g.map_nodes([&](NodeRecord& r, int) { r.weight = 1 + static_cast<std::int64_t>(rng() % max_w); });
}

/// Marks each edge unconstrained with probability p.
inline ConfiguredGraph with_random_unconstrained_edges(const ConfiguredGraph& g, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<bool> flags;
  for (const auto& e : g.edges()) flags.push_back(e.constrained && !coin(rng));
  return g.with_edge_flags(flags);
}

/// Marks each node unconstrained with probability p.
inline ConfiguredGraph with_random_unconstrained_nodes(const ConfiguredGraph& g, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  return g.map_nodes([&](NodeRecord& r, int) { r.constrained = r.constrained && !coin(rng); });
}

/// Shuffles node ids within 0..span-1 (span >= n), keeping the edge structure.
inline ConfiguredGraph with_random_ids(const ConfiguredGraph& g, std::int64_t span, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::int64_t> pool(span);
  std::iota(pool.begin(), pool.end(), 0);
  std::shuffle(pool.begin(), pool.end(), rng);
  std::vector<NodeRecord> nodes = g.nodes();
  for (int i = 0; i < g.n(); ++i) nodes[i].id = pool[i];
  auto specs = g.edge_specs();
  for (auto& s : specs) {
    s.u = pool[g.index_of(s.u)];
    s.v = pool[g.index_of(s.v)];
  }
  return ConfiguredGraph(g.directed(), nodes, specs);
}

/// Attaches an exact optimum as the instance output.
inline ConfiguredGraph with_optimum(const CanonicalOptDGP& p, const ConfiguredGraph& g) {
  auto prepared = p.name == "maxis" ? with_maxis_eligibility(g) : g;
  return prepared.with_outputs(exact_opt(p, prepared).output);
}

}  // namespace lrpls
