#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace lrpls {

using NodeId = std::int64_t;

inline constexpr const char* kTautology = "taut";

/// Per-node part of the configuration. An empty `prd` selects the problem's
/// default predicate; "taut" selects the always-true predicate.
struct NodeRecord {
  NodeId id = 0;
  std::int64_t weight = 1;
  std::string data;
  std::string prd;
  bool constrained = true;
  std::optional<std::int64_t> output;

  bool taut() const { return prd == kTautology; }
  friend bool operator==(const NodeRecord&, const NodeRecord&) = default;
};

/// Edge as given to the constructor. Ports are optional; missing ports are
/// assigned in order of appearance.
struct EdgeSpec {
  NodeId u = 0;
  NodeId v = 0;
  bool constrained = true;
  std::optional<int> port_u;
  std::optional<int> port_v;
};

struct Edge {
  int u = 0;  // tail when the graph is directed
  int v = 0;
  bool constrained = true;
};

struct Adj {
  int nbr;
  int port;
  int edge;
};

/// Identified configured graph. Nodes are stored in ascending id order, so
/// node indices double as id ranks. Immutable once built.
class ConfiguredGraph {
 public:
  ConfiguredGraph() = default;

  ConfiguredGraph(bool directed, std::vector<NodeRecord> nodes, const std::vector<EdgeSpec>& edges)
      : directed_(directed), nodes_(std::move(nodes)) {
    std::sort(nodes_.begin(), nodes_.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const auto& rec = nodes_[i];
      if (rec.id < 0) throw std::invalid_argument("node ids must be non-negative");
      if (i > 0 && nodes_[i - 1].id == rec.id) {
        throw std::invalid_argument("duplicate node id " + std::to_string(rec.id));
      }
      if (rec.weight < 1) throw std::invalid_argument("node weights must be positive");
      index_.emplace(rec.id, static_cast<int>(i));
    }
    adj_.assign(nodes_.size(), {});
    std::unordered_map<std::uint64_t, int> seen;
    for (const auto& spec : edges) {
      int a = index_of(spec.u);
      int b = index_of(spec.v);
      if (a == b) throw std::invalid_argument("self loops are not supported");
      auto key = pair_key(a, b);
      if (!seen.emplace(key, static_cast<int>(edges_.size())).second) {
        throw std::invalid_argument("duplicate edge " + std::to_string(spec.u) + "-" + std::to_string(spec.v));
      }
      int e = static_cast<int>(edges_.size());
      edges_.push_back({a, b, spec.constrained});
      adj_[a].push_back({b, spec.port_u.value_or(static_cast<int>(adj_[a].size())), e});
      adj_[b].push_back({a, spec.port_v.value_or(static_cast<int>(adj_[b].size())), e});
    }
    for (auto& list : adj_) {
      std::sort(list.begin(), list.end(), [](const Adj& x, const Adj& y) { return x.port < y.port; });
      for (std::size_t k = 1; k < list.size(); ++k) {
        if (list[k - 1].port == list[k].port) throw std::invalid_argument("duplicate port name");
      }
    }
    edge_index_ = std::move(seen);
  }

  bool directed() const { return directed_; }
  int n() const { return static_cast<int>(nodes_.size()); }
  int m() const { return static_cast<int>(edges_.size()); }

  const NodeRecord& node(int i) const { return nodes_[i]; }
  const std::vector<NodeRecord>& nodes() const { return nodes_; }
  NodeId id(int i) const { return nodes_[i].id; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[e]; }
  std::span<const Adj> neighbors(int i) const { return adj_[i]; }
  int degree(int i) const { return static_cast<int>(adj_[i].size()); }

  int max_degree() const {
    int d = 0;
    for (const auto& list : adj_) d = std::max(d, static_cast<int>(list.size()));
    return d;
  }

  bool has_id(NodeId id) const { return index_.count(id) != 0; }

  int index_of(NodeId id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::out_of_range("unknown node id " + std::to_string(id));
    return it->second;
  }

  /// Edge index between two node indices, or -1.
  int edge_between(int a, int b) const {
    auto it = edge_index_.find(pair_key(a, b));
    return it == edge_index_.end() ? -1 : it->second;
  }

  /// Copy with node records rewritten; topology and ports are shared.
  ConfiguredGraph map_nodes(const std::function<void(NodeRecord&, int)>& fn) const {
    ConfiguredGraph copy = *this;
    for (int i = 0; i < n(); ++i) {
      NodeId before = copy.nodes_[i].id;
      fn(copy.nodes_[i], i);
      if (copy.nodes_[i].id != before) throw std::invalid_argument("map_nodes must not change ids");
      if (copy.nodes_[i].weight < 1) throw std::invalid_argument("node weights must be positive");
    }
    return copy;
  }

  ConfiguredGraph with_outputs(const std::vector<std::int64_t>& out) const {
    if (static_cast<int>(out.size()) != n()) throw std::invalid_argument("output vector size mismatch");
    return map_nodes([&](NodeRecord& r, int i) { r.output = out[i]; });
  }

  ConfiguredGraph with_edge_flags(const std::vector<bool>& constrained) const {
    ConfiguredGraph copy = *this;
    for (int e = 0; e < m(); ++e) copy.edges_[e].constrained = constrained[e];
    return copy;
  }

  /// Outputs as a dense vector; missing outputs are an error.
  std::vector<std::int64_t> outputs() const {
    std::vector<std::int64_t> out(n());
    for (int i = 0; i < n(); ++i) {
      if (!nodes_[i].output) throw std::invalid_argument("node " + std::to_string(id(i)) + " has no output");
      out[i] = *nodes_[i].output;
    }
    return out;
  }

  bool has_outputs() const {
    return std::all_of(nodes_.begin(), nodes_.end(), [](const auto& r) { return r.output.has_value(); });
  }

  /// Specs that rebuild this graph exactly, ports included.
  std::vector<EdgeSpec> edge_specs() const {
    std::vector<EdgeSpec> specs(edges_.size());
    for (int e = 0; e < m(); ++e) {
      specs[e] = {id(edges_[e].u), id(edges_[e].v), edges_[e].constrained, std::nullopt, std::nullopt};
    }
    for (int i = 0; i < n(); ++i) {
      for (const auto& a : adj_[i]) {
        if (edges_[a.edge].u == i) specs[a.edge].port_u = a.port;
        else specs[a.edge].port_v = a.port;
      }
    }
    return specs;
  }

 private:
  static std::uint64_t pair_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
  }

  bool directed_ = false;
  std::vector<NodeRecord> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Adj>> adj_;
  std::unordered_map<NodeId, int> index_;
  std::unordered_map<std::uint64_t, int> edge_index_;
};

/// Sorted list of node indices of a host graph. Since indices follow id order
/// the iteration order is ascending id.
using NodeSet = std::vector<int>;

inline std::vector<char> membership(const ConfiguredGraph& g, const NodeSet& u) {
  std::vector<char> in(g.n(), 0);
  for (int x : u) in[x] = 1;
  return in;
}

inline NodeSet from_mask(const std::vector<char>& mask) {
  NodeSet out;
  for (int i = 0; i < static_cast<int>(mask.size()); ++i) {
    if (mask[i]) out.push_back(i);
  }
  return out;
}

inline std::vector<NodeId> ids_of(const ConfiguredGraph& g, const NodeSet& u) {
  std::vector<NodeId> out;
  out.reserve(u.size());
  for (int x : u) out.push_back(g.id(x));
  return out;
}

/// Hop distances from `src`; -1 for unreachable nodes. Stops at `limit`.
inline std::vector<int> bfs_distances(const ConfiguredGraph& g, int src, int limit = -1) {
  std::vector<int> dist(g.n(), -1);
  std::deque<int> queue{src};
  dist[src] = 0;
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    if (limit >= 0 && dist[x] >= limit) continue;
    for (const auto& a : g.neighbors(x)) {
      if (dist[a.nbr] < 0) {
        dist[a.nbr] = dist[x] + 1;
        queue.push_back(a.nbr);
      }
    }
  }
  return dist;
}

inline NodeSet ball(const ConfiguredGraph& g, NodeId v, int r) {
  if (r < 0) throw std::invalid_argument("ball radius must be non-negative");
  auto dist = bfs_distances(g, g.index_of(v), r);
  NodeSet out;
  for (int i = 0; i < g.n(); ++i) {
    if (dist[i] >= 0) out.push_back(i);
  }
  return out;
}

inline NodeSet inner(const ConfiguredGraph& g, const NodeSet& u) {
  auto in = membership(g, u);
  NodeSet out;
  for (int x : u) {
    bool all = true;
    for (const auto& a : g.neighbors(x)) all = all && in[a.nbr];
    if (all) out.push_back(x);
  }
  return out;
}

inline NodeSet inner2(const ConfiguredGraph& g, const NodeSet& u) { return inner(g, inner(g, u)); }

inline NodeSet rim(const ConfiguredGraph& g, const NodeSet& u) {
  auto core = membership(g, inner2(g, u));
  NodeSet out;
  for (int x : u) {
    if (!core[x]) out.push_back(x);
  }
  return out;
}

/// Nodes outside `u` within distance two of it, measured in the host graph.
inline NodeSet n2(const ConfiguredGraph& g, const NodeSet& u) {
  auto in = membership(g, u);
  std::vector<char> hit(g.n(), 0);
  for (int x : u) {
    for (const auto& a : g.neighbors(x)) {
      hit[a.nbr] = 1;
      for (const auto& b : g.neighbors(a.nbr)) hit[b.nbr] = 1;
    }
  }
  NodeSet out;
  for (int i = 0; i < g.n(); ++i) {
    if (hit[i] && !in[i]) out.push_back(i);
  }
  return out;
}

/// Configured subgraph induced by `u`. Retained neighbours keep their port
/// names, so ports need not be contiguous afterwards.
inline ConfiguredGraph induced_subgraph(const ConfiguredGraph& g, const NodeSet& u) {
  auto in = membership(g, u);
  std::vector<NodeRecord> nodes;
  nodes.reserve(u.size());
  for (int x : u) nodes.push_back(g.node(x));
  std::vector<EdgeSpec> specs;
  std::vector<int> port_u(g.m(), -1), port_v(g.m(), -1);
  for (int x : u) {
    for (const auto& a : g.neighbors(x)) {
      if (g.edge(a.edge).u == x) port_u[a.edge] = a.port;
      else port_v[a.edge] = a.port;
    }
  }
  for (int e = 0; e < g.m(); ++e) {
    const auto& ed = g.edge(e);
    if (in[ed.u] && in[ed.v]) {
      specs.push_back({g.id(ed.u), g.id(ed.v), ed.constrained, port_u[e], port_v[e]});
    }
  }
  return ConfiguredGraph(g.directed(), std::move(nodes), specs);
}

/// Connected components as lists of node indices, ordered by smallest member.
inline std::vector<NodeSet> components(const ConfiguredGraph& g,
                                       const std::function<bool(const Edge&)>& use_edge = {}) {
  std::vector<int> comp(g.n(), -1);
  std::vector<NodeSet> out;
  for (int s = 0; s < g.n(); ++s) {
    if (comp[s] >= 0) continue;
    NodeSet members{s};
    comp[s] = static_cast<int>(out.size());
    for (std::size_t k = 0; k < members.size(); ++k) {
      for (const auto& a : g.neighbors(members[k])) {
        if (comp[a.nbr] >= 0) continue;
        if (use_edge && !use_edge(g.edge(a.edge))) continue;
        comp[a.nbr] = comp[s];
        members.push_back(a.nbr);
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

/// Eccentricity-based diameter of g restricted to `u`; -1 if disconnected.
inline int induced_diameter(const ConfiguredGraph& g, const NodeSet& u) {
  if (u.empty()) return 0;
  auto in = membership(g, u);
  int diam = 0;
  std::vector<int> dist(g.n(), -1);
  for (int s : u) {
    std::fill(dist.begin(), dist.end(), -1);
    std::deque<int> queue{s};
    dist[s] = 0;
    int seen = 1;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (const auto& a : g.neighbors(x)) {
        if (in[a.nbr] && dist[a.nbr] < 0) {
          dist[a.nbr] = dist[x] + 1;
          diam = std::max(diam, dist[a.nbr]);
          ++seen;
          queue.push_back(a.nbr);
        }
      }
    }
    if (seen != static_cast<int>(u.size())) return -1;
  }
  return diam;
}

/// What one port looks like from inside a node's local configuration.
struct PortView {
  int port = 0;
  NodeId neighbor = 0;
  bool constrained = true;
  int direction = 0;  // +1 outgoing, -1 incoming, 0 undirected
};

/// The local configuration s(v): everything the verifier may read about v.
struct LocalConfig {
  NodeId id = 0;
  std::int64_t weight = 1;
  std::string data;
  std::string prd;
  bool constrained = true;
  std::optional<std::int64_t> output;
  std::vector<PortView> ports;

  bool taut() const { return prd == kTautology; }
  int degree() const { return static_cast<int>(ports.size()); }
};

inline LocalConfig local_config(const ConfiguredGraph& g, int i) {
  const auto& r = g.node(i);
  LocalConfig c{r.id, r.weight, r.data, r.prd, r.constrained, r.output, {}};
  c.ports.reserve(g.degree(i));
  for (const auto& a : g.neighbors(i)) {
    const auto& e = g.edge(a.edge);
    int dir = 0;
    if (g.directed()) dir = e.u == i ? 1 : -1;
    c.ports.push_back({a.port, g.id(a.nbr), e.constrained, dir});
  }
  return c;
}

}  // namespace lrpls
