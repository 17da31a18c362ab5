#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "problem.hpp"

namespace lrpls {

/// Plain undirected graph on 0..n-1 used by the combinatorial solvers.
struct SimpleGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> adj;

  explicit SimpleGraph(int nodes = 0) : n(nodes), adj(nodes) {}
  void add(int u, int v) {
    edges.emplace_back(u, v);
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
};

/// Edges a cover/independent set must respect: constrained edges that still
/// have at least one non-tautological endpoint.
inline bool effective_edge(const ConfiguredGraph& g, const Edge& e) {
  return e.constrained && !(g.node(e.u).taut() && g.node(e.v).taut());
}

inline SimpleGraph effective_graph(const ConfiguredGraph& g) {
  SimpleGraph h(g.n());
  for (const auto& e : g.edges()) {
    if (effective_edge(g, e)) h.add(e.u, e.v);
  }
  return h;
}

/// Proper 2-colouring of each component, or nullopt if some component has an odd cycle.
inline std::optional<std::vector<int>> two_coloring(const SimpleGraph& h) {
  std::vector<int> color(h.n, -1);
  for (int s = 0; s < h.n; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (int y : h.adj[x]) {
        if (color[y] < 0) {
          color[y] = 1 - color[x];
          queue.push_back(y);
        } else if (color[y] == color[x]) {
          return std::nullopt;
        }
      }
    }
  }
  return color;
}

/// Maximum matching of a bipartite graph (Kuhn); mate[v] = partner or -1.
inline std::vector<int> bipartite_matching(const SimpleGraph& h, const std::vector<int>& side) {
  std::vector<int> mate(h.n, -1);
  std::vector<int> seen(h.n, -1);
  std::function<bool(int, int)> augment = [&](int x, int round) -> bool {
    for (int y : h.adj[x]) {
      if (seen[y] == round) continue;
      seen[y] = round;
      if (mate[y] < 0 || augment(mate[y], round)) {
        mate[y] = x;
        mate[x] = y;
        return true;
      }
    }
    return false;
  };
  int round = 0;
  for (int x = 0; x < h.n; ++x) {
    if (side[x] != 0 || mate[x] >= 0) continue;
    // try cheap greedy first
    for (int y : h.adj[x]) {
      if (mate[y] < 0) {
        mate[x] = y;
        mate[y] = x;
        break;
      }
    }
  }
  for (int x = 0; x < h.n; ++x) {
    if (side[x] != 0 || mate[x] >= 0) continue;
    augment(x, round++);
  }
  return mate;
}

/// Dinic max flow, used for weighted bipartite vertex cover.
class MaxFlow {
 public:
  explicit MaxFlow(int n) : graph_(n), level_(n), it_(n) {}

  void add(int u, int v, std::int64_t cap) {
    graph_[u].push_back({v, static_cast<int>(graph_[v].size()), cap});
    graph_[v].push_back({u, static_cast<int>(graph_[u].size()) - 1, 0});
  }

  std::int64_t run(int s, int t) {
    std::int64_t flow = 0;
    while (bfs(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (auto f = dfs(s, t, std::numeric_limits<std::int64_t>::max())) flow += f;
    }
    return flow;
  }

  /// Nodes reachable from s in the residual graph after run().
  std::vector<char> reachable(int s) const {
    std::vector<char> seen(graph_.size(), 0);
    std::deque<int> queue{s};
    seen[s] = 1;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (const auto& e : graph_[x]) {
        if (e.cap > 0 && !seen[e.to]) {
          seen[e.to] = 1;
          queue.push_back(e.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    int to;
    int rev;
    std::int64_t cap;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::deque<int> queue{s};
    level_[s] = 0;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (const auto& e : graph_[x]) {
        if (e.cap > 0 && level_[e.to] < 0) {
          level_[e.to] = level_[x] + 1;
          queue.push_back(e.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  std::int64_t dfs(int x, int t, std::int64_t f) {
    if (x == t) return f;
    for (int& i = it_[x]; i < static_cast<int>(graph_[x].size()); ++i) {
      auto& e = graph_[x][i];
      if (e.cap <= 0 || level_[e.to] != level_[x] + 1) continue;
      if (auto got = dfs(e.to, t, std::min(f, e.cap))) {
        e.cap -= got;
        graph_[e.to][e.rev].cap += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<std::vector<Arc>> graph_;
  std::vector<int> level_;
  std::vector<int> it_;
};

struct CoverResult {
  std::int64_t value = 0;
  std::vector<char> chosen;
};

namespace detail {

inline CoverResult vc_bipartite(const SimpleGraph& h, const std::vector<int>& side, const std::vector<std::int64_t>& w,
                                const std::vector<int>& nodes) {
  int s = h.n, t = h.n + 1;
  MaxFlow flow(h.n + 2);
  const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
  for (int x : nodes) {
    if (side[x] == 0) {
      flow.add(s, x, w[x]);
      for (int y : h.adj[x]) flow.add(x, y, inf);
    } else {
      flow.add(x, t, w[x]);
    }
  }
  CoverResult res;
  res.value = flow.run(s, t);
  res.chosen.assign(h.n, 0);
  auto reach = flow.reachable(s);
  for (int x : nodes) {
    if (h.adj[x].empty()) continue;
    res.chosen[x] = side[x] == 0 ? !reach[x] : reach[x];
  }
  return res;
}

/// Branch and bound for weighted vertex cover on one component.
class VcBranchAndBound {
 public:
  VcBranchAndBound(const SimpleGraph& h, const std::vector<std::int64_t>& w, const std::vector<int>& nodes)
      : h_(h), w_(w), nodes_(nodes), state_(h.n, 0) {}

  CoverResult solve() {
    best_ = 0;
    best_state_.assign(h_.n, 0);
    for (int x : nodes_) {
      if (!h_.adj[x].empty()) {
        best_ += w_[x];
        best_state_[x] = 1;
      }
    }
    recurse(0);
    CoverResult res;
    res.value = best_;
    res.chosen.assign(h_.n, 0);
    for (int x : nodes_) res.chosen[x] = best_state_[x] == 1;
    return res;
  }

 private:
  // state: 0 undecided, 1 in cover, 2 out of cover
  void recurse(std::int64_t cost) {
    if (cost >= best_) return;
    int pick = -1, pick_deg = 0;
    for (int x : nodes_) {
      if (state_[x] != 0) continue;
      int deg = 0;
      for (int y : h_.adj[x]) deg += state_[y] == 0;
      if (deg > pick_deg) {
        pick_deg = deg;
        pick = x;
      }
    }
    if (pick < 0) {
      best_ = cost;
      best_state_ = state_;
      return;
    }
    if (cost + packing_bound() >= best_) return;
    // branch: pick out of cover, all undecided neighbours in
    {
      std::vector<int> forced;
      std::int64_t extra = 0;
      for (int y : h_.adj[pick]) {
        if (state_[y] == 0) {
          forced.push_back(y);
          extra += w_[y];
        }
      }
      state_[pick] = 2;
      for (int y : forced) state_[y] = 1;
      recurse(cost + extra);
      for (int y : forced) state_[y] = 0;
      state_[pick] = 0;
    }
    state_[pick] = 1;
    recurse(cost + w_[pick]);
    state_[pick] = 0;
  }

  std::int64_t packing_bound() {
    residual_.assign(h_.n, 0);
    for (int x : nodes_) residual_[x] = w_[x];
    std::int64_t total = 0;
    for (int x : nodes_) {
      if (state_[x] != 0) continue;
      for (int y : h_.adj[x]) {
        if (y < x || state_[y] != 0) continue;
        auto y_e = std::min(residual_[x], residual_[y]);
        residual_[x] -= y_e;
        residual_[y] -= y_e;
        total += y_e;
      }
    }
    return total;
  }

  const SimpleGraph& h_;
  const std::vector<std::int64_t>& w_;
  const std::vector<int>& nodes_;
  std::vector<int> state_;
  std::vector<int> best_state_;
  std::vector<std::int64_t> residual_;
  std::int64_t best_ = 0;
};

}  // namespace detail

/// Exact minimum weight vertex cover of h. Bipartite components use a min
/// cut; the others fall back to branch and bound.
inline CoverResult min_weight_vertex_cover(const SimpleGraph& h, const std::vector<std::int64_t>& w) {
  CoverResult res;
  res.chosen.assign(h.n, 0);
  std::vector<int> comp(h.n, -1);
  for (int s = 0; s < h.n; ++s) {
    if (comp[s] >= 0 || h.adj[s].empty()) continue;
    std::vector<int> nodes{s};
    comp[s] = s;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      for (int y : h.adj[nodes[k]]) {
        if (comp[y] < 0) {
          comp[y] = s;
          nodes.push_back(y);
        }
      }
    }
    std::sort(nodes.begin(), nodes.end());
    std::vector<int> side(h.n, -1);
    bool bip = true;
    side[s] = 0;
    std::deque<int> queue{s};
    while (!queue.empty() && bip) {
      int x = queue.front();
      queue.pop_front();
      for (int y : h.adj[x]) {
        if (side[y] < 0) {
          side[y] = 1 - side[x];
          queue.push_back(y);
        } else if (side[y] == side[x]) {
          bip = false;
        }
      }
    }
    CoverResult part = bip ? detail::vc_bipartite(h, side, w, nodes) : detail::VcBranchAndBound(h, w, nodes).solve();
    res.value += part.value;
    for (int x : nodes) res.chosen[x] = part.chosen[x];
  }
  return res;
}

namespace detail {

/// Weighted dominating set by branch and bound: `must` marks nodes that
/// need domination, every node may be picked at cost w.
class DsBranchAndBound {
 public:
  DsBranchAndBound(const SimpleGraph& h, const std::vector<std::int64_t>& w, const std::vector<char>& must,
                   const std::vector<int>& nodes)
      : h_(h), w_(w), must_(must), nodes_(nodes), picked_(h.n, 0), cover_(h.n, 0) {}

  CoverResult solve() {
    best_ = std::numeric_limits<std::int64_t>::max();
    // trivial upper bound: pick every node that needs domination
    std::int64_t ub = 0;
    best_state_.assign(h_.n, 0);
    for (int x : nodes_) {
      if (must_[x]) {
        ub += w_[x];
        best_state_[x] = 1;
      }
    }
    best_ = ub;
    recurse(0);
    CoverResult res;
    res.value = best_;
    res.chosen.assign(h_.n, 0);
    for (int x : nodes_) res.chosen[x] = best_state_[x];
    return res;
  }

 private:
  void pick(int x, int delta) {
    picked_[x] += delta;
    cover_[x] += delta;
    for (int y : h_.adj[x]) cover_[y] += delta;
  }

  std::int64_t cheapest_for(int e) const {
    std::int64_t c = w_[e];
    for (int y : h_.adj[e]) c = std::min(c, w_[y]);
    return c;
  }

  void recurse(std::int64_t cost) {
    if (cost >= best_) return;
    int target = -1;
    std::size_t options = std::numeric_limits<std::size_t>::max();
    for (int x : nodes_) {
      if (!must_[x] || cover_[x] > 0) continue;
      if (h_.adj[x].size() + 1 < options) {
        options = h_.adj[x].size() + 1;
        target = x;
      }
    }
    if (target < 0) {
      best_ = cost;
      best_state_.assign(picked_.begin(), picked_.end());
      return;
    }
    // lower bound from uncovered elements with disjoint closed neighbourhoods
    std::int64_t lb = 0;
    std::vector<char> blocked(h_.n, 0);
    for (int x : nodes_) {
      if (!must_[x] || cover_[x] > 0) continue;
      bool clash = blocked[x];
      for (int y : h_.adj[x]) clash = clash || blocked[y];
      if (clash) continue;
      lb += cheapest_for(x);
      // block the second neighbourhood so candidate sets stay disjoint
      blocked[x] = 1;
      for (int y : h_.adj[x]) {
        blocked[y] = 1;
        for (int z : h_.adj[y]) blocked[z] = 1;
      }
    }
    if (cost + lb >= best_) return;
    std::vector<int> candidates{target};
    for (int y : h_.adj[target]) candidates.push_back(y);
    std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
      return std::pair(w_[a], a) < std::pair(w_[b], b);
    });
    std::vector<int> excluded;
    for (int c : candidates) {
      if (excluded_[c]) continue;
      pick(c, 1);
      recurse(cost + w_[c]);
      pick(c, -1);
      // later branches never pick c again for this target
      excluded_[c] = 1;
      excluded.push_back(c);
    }
    for (int c : excluded) excluded_[c] = 0;
  }

  const SimpleGraph& h_;
  const std::vector<std::int64_t>& w_;
  const std::vector<char>& must_;
  const std::vector<int>& nodes_;
  std::vector<int> picked_;
  std::vector<int> cover_;
  std::vector<char> excluded_ = std::vector<char>(h_.n, 0);
  std::vector<int> best_state_;
  std::int64_t best_ = 0;
};

/// Tree DP for weighted domination on a tree component.
inline CoverResult ds_tree(const SimpleGraph& h, const std::vector<std::int64_t>& w, const std::vector<char>& must,
                           const std::vector<int>& nodes) {
  const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 8;
  int root = nodes.front();
  std::vector<int> parent(h.n, -1), order{root};
  std::vector<char> seen(h.n, 0);
  seen[root] = 1;
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (int y : h.adj[order[k]]) {
      if (!seen[y]) {
        seen[y] = 1;
        parent[y] = order[k];
        order.push_back(y);
      }
    }
  }
  // 0: picked; 1: not picked, dominated by a child; 2: not picked, not dominated from below
  std::vector<std::array<std::int64_t, 3>> dp(h.n);
  auto settle = [&](int c) { return std::min({dp[c][0], dp[c][1], must[c] ? inf : dp[c][2]}); };
  auto any = [&](int c) { return std::min({dp[c][0], dp[c][1], dp[c][2]}); };
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int x = *it;
    std::int64_t picked = w[x], free_sum = 0, gain = inf;
    for (int c : h.adj[x]) {
      if (c == parent[x]) continue;
      picked += any(c);
      free_sum += settle(c);
      gain = std::min(gain, dp[c][0] - settle(c));
    }
    dp[x] = {picked, gain == inf ? inf : free_sum + gain, free_sum};
  }
  CoverResult res;
  res.chosen.assign(h.n, 0);
  std::vector<int> mode(h.n, 0);
  auto argmin = [&](int c, bool any_state) {
    std::int64_t best = inf + 1;
    int m = 0;
    for (int s = 0; s < 3; ++s) {
      if (s == 2 && !any_state && must[c]) continue;
      if (dp[c][s] < best) {
        best = dp[c][s];
        m = s;
      }
    }
    return m;
  };
  mode[root] = argmin(root, false);
  res.value = dp[root][mode[root]];
  for (int x : order) {
    int forced = -1;
    if (mode[x] == 1) {
      std::int64_t gain = inf;
      for (int c : h.adj[x]) {
        if (c != parent[x] && dp[c][0] - settle(c) < gain) {
          gain = dp[c][0] - settle(c);
          forced = c;
        }
      }
    }
    res.chosen[x] = mode[x] == 0;
    for (int c : h.adj[x]) {
      if (c == parent[x]) continue;
      mode[c] = c == forced ? 0 : argmin(c, mode[x] == 0);
    }
  }
  return res;
}

}  // namespace detail

/// Exact minimum weight set of nodes dominating every node marked `must`.
inline CoverResult min_weight_dominating_set(const SimpleGraph& h, const std::vector<std::int64_t>& w,
                                             const std::vector<char>& must) {
  CoverResult res;
  res.chosen.assign(h.n, 0);
  std::vector<int> comp(h.n, -1);
  for (int s = 0; s < h.n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> nodes{s};
    comp[s] = s;
    std::size_t degree_sum = 0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      degree_sum += h.adj[nodes[k]].size();
      for (int y : h.adj[nodes[k]]) {
        if (comp[y] < 0) {
          comp[y] = s;
          nodes.push_back(y);
        }
      }
    }
    bool needed = std::any_of(nodes.begin(), nodes.end(), [&](int x) { return must[x]; });
    if (!needed) continue;
    std::sort(nodes.begin(), nodes.end());
    bool tree = degree_sum / 2 + 1 == nodes.size();
    CoverResult part = tree ? detail::ds_tree(h, w, must, nodes) : detail::DsBranchAndBound(h, w, must, nodes).solve();
    res.value += part.value;
    for (int x : nodes) res.chosen[x] = part.chosen[x];
  }
  return res;
}

struct OptResult {
  std::int64_t value = 0;
  std::vector<std::int64_t> output;
};

/// Exact optimum using the problem-specific solvers.
inline OptResult exact_opt(const CanonicalOptDGP& p, const ConfiguredGraph& g) {
  OptResult r;
  r.output.assign(g.n(), 0);
  if (p.name == "mwvc" || p.name == "mvc") {
    auto h = effective_graph(g);
    std::vector<std::int64_t> w(g.n());
    for (int v = 0; v < g.n(); ++v) w[v] = p.weight(g.node(v));
    auto c = min_weight_vertex_cover(h, w);
    for (int v = 0; v < g.n(); ++v) r.output[v] = c.chosen[v];
    r.value = c.value;
    return r;
  }
  if (p.name == "maxis") {
    // eligible nodes: flagged or tautological; complement of a min cover of
    // the effective edges among them
    std::vector<char> eligible(g.n());
    for (int v = 0; v < g.n(); ++v) eligible[v] = g.node(v).constrained || g.node(v).taut();
    SimpleGraph h(g.n());
    for (const auto& e : g.edges()) {
      if (effective_edge(g, e) && eligible[e.u] && eligible[e.v]) h.add(e.u, e.v);
    }
    auto c = min_weight_vertex_cover(h, std::vector<std::int64_t>(g.n(), 1));
    for (int v = 0; v < g.n(); ++v) {
      r.output[v] = eligible[v] && !c.chosen[v];
      r.value += r.output[v];
    }
    return r;
  }
  if (p.name == "mwds") {
    SimpleGraph h(g.n());
    for (const auto& e : g.edges()) h.add(e.u, e.v);
    std::vector<std::int64_t> w(g.n());
    std::vector<char> must(g.n());
    for (int v = 0; v < g.n(); ++v) {
      w[v] = p.weight(g.node(v));
      must[v] = g.node(v).constrained && !g.node(v).taut();
    }
    auto c = min_weight_dominating_set(h, w, must);
    for (int v = 0; v < g.n(); ++v) r.output[v] = c.chosen[v];
    r.value = c.value;
    return r;
  }
  throw std::invalid_argument("no exact solver for problem " + p.name);
}

/// w_min(U): the cheapest multiplicities on U that satisfy the predicates at
/// inner(U). Returned vector is aligned with U.
inline OptResult solve_wmin(const CanonicalOptDGP& p, const ConfiguredGraph& g, const NodeSet& u) {
  auto sub = induced_subgraph(g, u);
  auto in = membership(g, inner(g, u));
  NodeSet taut;
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (!in[u[k]]) taut.push_back(static_cast<int>(k));
  }
  return exact_opt(p, tautologize(sub, taut));
}

/// w_max(U) for packing problems whose predicates are trivially true at
/// zero-multiplicity nodes, which holds for MaxIS. Aligned with U.
inline OptResult solve_wmax(const CanonicalOptDGP& p, const ConfiguredGraph& g, const NodeSet& u) {
  return exact_opt(p, induced_subgraph(g, u));
}

}  // namespace lrpls
