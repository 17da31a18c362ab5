#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "graph.hpp"

namespace lrpls {

/// Edge sets of c edge-disjoint forests, grown by matroid-partition
/// augmenting paths. part[e] is the forest of edge e, or -1 if it fits in none.
class ForestPartition {
 public:
  ForestPartition(int n, std::vector<std::pair<int, int>> edges, int c)
      : n_(n), edges_(std::move(edges)), c_(c), part_(edges_.size(), -1) {
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e) insert(e);
  }

  const std::vector<int>& part() const { return part_; }

  int rank() const {
    int k = 0;
    for (int p : part_) k += p >= 0;
    return k;
  }

 private:
  // edges of forest f on the path between a and b, or nullopt if none
  std::optional<std::vector<int>> forest_path(int f, int a, int b) const {
    std::vector<std::vector<std::pair<int, int>>> adj(n_);
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
      if (part_[e] != f) continue;
      adj[edges_[e].first].push_back({edges_[e].second, e});
      adj[edges_[e].second].push_back({edges_[e].first, e});
    }
    std::vector<int> via(n_, -2);
    std::deque<int> queue{a};
    via[a] = -1;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (auto [y, e] : adj[x]) {
        if (via[y] != -2) continue;
        via[y] = e;
        queue.push_back(y);
      }
    }
    if (via[b] == -2) return std::nullopt;
    std::vector<int> path;
    for (int x = b; x != a;) {
      int e = via[x];
      path.push_back(e);
      x = edges_[e].first == x ? edges_[e].second : edges_[e].first;
    }
    return path;
  }

  void insert(int start) {
    int m = static_cast<int>(edges_.size());
    std::vector<int> prev(m, -2);
    std::deque<int> queue{start};
    prev[start] = -1;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (int f = 0; f < c_; ++f) {
        if (part_[x] == f) continue;
        auto path = forest_path(f, edges_[x].first, edges_[x].second);
        if (!path) {
          // x fits into f; shift the chain back to start
          int cur = x, target = f;
          while (cur != -1) {
            int old = part_[cur];
            part_[cur] = target;
            target = old;
            cur = prev[cur];
          }
          return;
        }
        for (int y : *path) {
          if (prev[y] != -2) continue;
          prev[y] = x;
          queue.push_back(y);
        }
      }
    }
  }

  int n_;
  std::vector<std::pair<int, int>> edges_;
  int c_;
  std::vector<int> part_;
};

inline std::vector<std::pair<int, int>> edge_pairs(const ConfiguredGraph& g) {
  std::vector<std::pair<int, int>> out;
  for (const auto& e : g.edges()) out.emplace_back(e.u, e.v);
  return out;
}

/// Largest number of edges coverable by c forests.
inline int forest_union_rank(const ConfiguredGraph& g, int c) {
  return ForestPartition(g.n(), edge_pairs(g), c).rank();
}

inline int component_count(const ConfiguredGraph& g) { return static_cast<int>(components(g).size()); }

inline bool is_forest(const ConfiguredGraph& g) { return g.m() == g.n() - component_count(g); }

}  // namespace lrpls
