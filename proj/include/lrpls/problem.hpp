#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"

namespace lrpls {

enum class OptMode { min, max };

/// A canonical covering (min) or packing (max) optimisation problem given by
/// per-node predicates over multiplicities in {0..k}.
struct CanonicalOptDGP {
  using Body = std::function<bool(const LocalConfig&, std::int64_t, std::span<const std::int64_t>)>;

  std::string name;
  OptMode mode = OptMode::min;
  std::int64_t k = 1;
  bool weighted = true;
  Body body;  // the predicate proper, called only for non-tautological nodes

  bool predicate(const LocalConfig& c, std::int64_t own, std::span<const std::int64_t> nbrs) const {
    if (own < 0 || own > k) return false;
    for (auto x : nbrs) {
      if (x < 0 || x > k) return false;
    }
    if (c.taut()) return true;
    return body(c, own, nbrs);
  }

  std::int64_t weight(const NodeRecord& r) const { return weighted ? r.weight : 1; }
  std::int64_t weight(const LocalConfig& c) const { return weighted ? c.weight : 1; }

  std::int64_t objective(const ConfiguredGraph& g, const std::vector<std::int64_t>& o) const {
    std::int64_t total = 0;
    for (int v = 0; v < g.n(); ++v) total += weight(g.node(v)) * o[v];
    return total;
  }

  /// w(U, g) for multiplicities given on all of V.
  std::int64_t weight_of(const ConfiguredGraph& g, const NodeSet& u, const std::vector<std::int64_t>& o) const {
    std::int64_t total = 0;
    for (int v : u) total += weight(g.node(v)) * o[v];
    return total;
  }

  bool holds_at(const ConfiguredGraph& g, int v, const std::vector<std::int64_t>& o) const {
    auto c = local_config(g, v);
    std::vector<std::int64_t> xs;
    xs.reserve(g.degree(v));
    for (const auto& a : g.neighbors(v)) xs.push_back(o[a.nbr]);
    return predicate(c, o[v], xs);
  }

  bool feasible(const ConfiguredGraph& g, const std::vector<std::int64_t>& o) const {
    if (static_cast<int>(o.size()) != g.n()) return false;
    for (int v = 0; v < g.n(); ++v) {
      if (!holds_at(g, v, o)) return false;
    }
    return true;
  }

  /// True when predicates hold at every node of `where` (used for "respects").
  bool holds_on(const ConfiguredGraph& g, const NodeSet& where, const std::vector<std::int64_t>& o) const {
    for (int v : where) {
      if (!holds_at(g, v, o)) return false;
    }
    return true;
  }
};

/// Minimum weight vertex cover of the constrained edges.
inline CanonicalOptDGP mwvc_problem() {
  return {"mwvc", OptMode::min, 1, true, [](const LocalConfig& c, std::int64_t own, std::span<const std::int64_t> xs) {
            if (own >= 1) return true;
            for (std::size_t p = 0; p < xs.size(); ++p) {
              if (c.ports[p].constrained && xs[p] < 1) return false;
            }
            return true;
          }};
}

/// Unweighted vertex cover (weights are ignored).
inline CanonicalOptDGP mvc_problem() {
  auto p = mwvc_problem();
  p.name = "mvc";
  p.weighted = false;
  return p;
}

/// Maximum independent set of the constrained edges. The node flag
/// `constrained` marks nodes that may join the set (those incident on a
/// constrained edge of the original instance).
inline CanonicalOptDGP maxis_problem() {
  return {"maxis", OptMode::max, 1, false, [](const LocalConfig& c, std::int64_t own, std::span<const std::int64_t> xs) {
            if (own == 0) return true;
            if (!c.constrained) return false;
            for (std::size_t p = 0; p < xs.size(); ++p) {
              if (c.ports[p].constrained && xs[p] >= 1) return false;
            }
            return true;
          }};
}

/// Minimum weight dominating set of the constrained nodes.
inline CanonicalOptDGP mwds_problem() {
  return {"mwds", OptMode::min, 1, true, [](const LocalConfig& c, std::int64_t own, std::span<const std::int64_t> xs) {
            if (!c.constrained || own >= 1) return true;
            for (auto x : xs) {
              if (x >= 1) return true;
            }
            return false;
          }};
}

inline CanonicalOptDGP problem_by_name(const std::string& name) {
  if (name == "mwvc") return mwvc_problem();
  if (name == "mvc") return mvc_problem();
  if (name == "maxis" || name == "maxis-bipartite") return maxis_problem();
  if (name == "mwds") return mwds_problem();
  throw std::invalid_argument("unknown problem '" + name + "'");
}

/// Mark `taut_nodes` as tautological (used for the cluster sub-instances).
inline ConfiguredGraph tautologize(const ConfiguredGraph& g, const NodeSet& taut_nodes) {
  auto mask = membership(g, taut_nodes);
  return g.map_nodes([&](NodeRecord& r, int i) {
    if (mask[i]) r.prd = kTautology;
  });
}

/// Marks a node eligible for the independent set iff it touches a
/// constrained edge; generators use this to set up MaxIS inputs.
inline ConfiguredGraph with_maxis_eligibility(const ConfiguredGraph& g) {
  std::vector<char> touch(g.n(), 0);
  for (const auto& e : g.edges()) {
    if (e.constrained) touch[e.u] = touch[e.v] = 1;
  }
  return g.map_nodes([&](NodeRecord& r, int i) { r.constrained = touch[i]; });
}

}  // namespace lrpls
