#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "bits.hpp"
#include "graph.hpp"

namespace lrpls {

/// Spanning-tree certificate with subtree sums of two node values.
struct ComparisonLabel {
  NodeId root = 0;
  std::optional<NodeId> parent;
  std::int64_t dist = 0;
  std::int64_t sum_a = 0;
  std::int64_t sum_b = 0;

  friend bool operator==(const ComparisonLabel&, const ComparisonLabel&) = default;
};

inline void write_comparison(BitWriter& w, const ComparisonLabel& c) {
  w.put_uint(static_cast<std::uint64_t>(c.root));
  w.put_opt(c.parent);
  w.put_uint(static_cast<std::uint64_t>(c.dist));
  w.put_int(c.sum_a);
  w.put_int(c.sum_b);
}

inline ComparisonLabel read_comparison(BitReader& r) {
  ComparisonLabel c;
  c.root = static_cast<NodeId>(r.get_uint());
  c.parent = r.get_opt();
  c.dist = static_cast<std::int64_t>(r.get_uint());
  c.sum_a = r.get_int();
  c.sum_b = r.get_int();
  return c;
}

enum class CompareMode { at_least, equal };

/// BFS tree of g restricted to `scope`, rooted at `root`, with exact subtree
/// sums. The result is indexed by node index; entries outside the scope are
/// left default. Throws if the scope is disconnected. `use_edge` restricts
/// the tree to some edges.
inline std::vector<ComparisonLabel> build_comparison(const ConfiguredGraph& g, const NodeSet& scope, int root,
                                                     const std::function<std::int64_t(int)>& a,
                                                     const std::function<std::int64_t(int)>& b,
                                                     std::optional<NodeId> root_id = std::nullopt,
                                                     const std::function<bool(const Edge&)>& use_edge = {}) {
  std::vector<char> in(g.n(), 0);
  for (int x : scope) in[x] = 1;
  if (!in[root]) throw std::invalid_argument("comparison root must lie in the scope");
  std::vector<ComparisonLabel> out(g.n());
  std::vector<int> parent(g.n(), -1), order{root};
  std::vector<char> seen(g.n(), 0);
  seen[root] = 1;
  NodeId rid = root_id.value_or(g.id(root));
  out[root] = {rid, std::nullopt, 0, 0, 0};
  for (std::size_t k = 0; k < order.size(); ++k) {
    int x = order[k];
    for (const auto& adj : g.neighbors(x)) {
      int y = adj.nbr;
      if (!in[y] || seen[y]) continue;
      if (use_edge && !use_edge(g.edge(adj.edge))) continue;
      seen[y] = 1;
      parent[y] = x;
      out[y] = {rid, g.id(x), out[x].dist + 1, 0, 0};
      order.push_back(y);
    }
  }
  if (order.size() != scope.size()) throw std::invalid_argument("comparison scope is disconnected");
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int x = *it;
    std::int64_t va = a(x), vb = b(x);
    if (__builtin_add_overflow(out[x].sum_a, va, &out[x].sum_a) ||
        __builtin_add_overflow(out[x].sum_b, vb, &out[x].sum_b)) {
      throw std::overflow_error("comparison sums overflow");
    }
    if (parent[x] >= 0) {
      auto& p = out[parent[x]];
      if (__builtin_add_overflow(p.sum_a, out[x].sum_a, &p.sum_a) ||
          __builtin_add_overflow(p.sum_b, out[x].sum_b, &p.sum_b)) {
        throw std::overflow_error("comparison sums overflow");
      }
    }
  }
  return out;
}

/// A neighbour that belongs to the same scope, with its label for that scope.
struct ScopeNeighbor {
  NodeId id;
  const ComparisonLabel* label;
};

/// Local check of the comparison certificate at one node.
inline bool verify_comparison(NodeId self, NodeId scope_id, const ComparisonLabel& own,
                              std::span<const ScopeNeighbor> nbrs, std::int64_t a, std::int64_t b,
                              CompareMode mode = CompareMode::at_least) {
  if (own.root != scope_id) return false;
  bool is_root = self == scope_id;
  if (is_root) {
    if (own.parent || own.dist != 0) return false;
  } else {
    if (!own.parent || own.dist < 1) return false;
  }
  bool parent_found = is_root;
  std::int64_t sa = a, sb = b;
  for (const auto& nb : nbrs) {
    const auto& l = *nb.label;
    if (l.root != own.root) return false;
    if (own.parent && *own.parent == nb.id) {
      if (l.dist != own.dist - 1) return false;
      parent_found = true;
    }
    if (l.parent && *l.parent == self) {
      if (__builtin_add_overflow(sa, l.sum_a, &sa) || __builtin_add_overflow(sb, l.sum_b, &sb)) return false;
    }
  }
  if (!parent_found) return false;
  if (sa != own.sum_a || sb != own.sum_b) return false;
  if (is_root) {
    return mode == CompareMode::equal ? own.sum_a == own.sum_b : own.sum_a >= own.sum_b;
  }
  return true;
}

}  // namespace lrpls
