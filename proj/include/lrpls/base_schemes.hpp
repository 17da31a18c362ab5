#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bits.hpp"
#include "comparison.hpp"
#include "families.hpp"
#include "forests.hpp"
#include "graph.hpp"
#include "problem.hpp"
#include "scheme.hpp"
#include "solvers.hpp"

namespace lrpls {

namespace detail {

inline std::int64_t own_output(const LocalConfig& c) {
  if (!c.output) throw DecodeError("instance has no output at node " + std::to_string(c.id));
  return *c.output;
}

/// Comparison labels for every scope (connected piece) of g, rooted at the
/// smallest id of each scope.
inline std::vector<ComparisonLabel> comparisons_by_component(const ConfiguredGraph& g,
                                                             const std::function<bool(const Edge&)>& in_scope,
                                                             const std::function<std::int64_t(int)>& a,
                                                             const std::function<std::int64_t(int)>& b) {
  std::vector<ComparisonLabel> out(g.n());
  for (const auto& comp : components(g, in_scope)) {
    auto part = build_comparison(g, comp, comp.front(), a, b, std::nullopt, in_scope);
    for (int x : comp) out[x] = part[x];
  }
  return out;
}

/// The comparison check at a node whose scope is given by neighbour flags.
template <class Label>
bool check_scope_comparison(const LocalConfig& c, const ComparisonLabel& own, const std::vector<Label>& nbrs,
                            const std::vector<char>& in_scope, std::int64_t a, std::int64_t b, CompareMode mode) {
  std::vector<ScopeNeighbor> scope;
  for (std::size_t p = 0; p < nbrs.size(); ++p) {
    if (in_scope[p]) scope.push_back({c.ports[p].neighbor, &nbrs[p].cmp});
  }
  return verify_comparison(c.id, own.root, own, scope, a, b, mode);
}

/// Weighted-problem predicate check over the o fields of a node and its neighbours.
template <class Label>
bool predicate_holds(const CanonicalOptDGP& p, const LocalConfig& c, const Label& own, const std::vector<Label>& nbrs) {
  std::vector<std::int64_t> xs;
  xs.reserve(nbrs.size());
  for (const auto& l : nbrs) xs.push_back(l.o);
  return p.predicate(c, own.o, xs);
}

inline bool edge_effective(bool own_taut, bool nbr_taut, bool constrained) { return constrained && !(own_taut && nbr_taut); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Vertex cover, 2-approximate: a maximal integral edge packing as dual.

struct VcLabel {
  std::int64_t o = 0;
  bool taut = false;
  std::optional<NodeId> partner;  // the packed edge this node owns
  std::int64_t packed = 0;        // 2 * y of that edge
  ComparisonLabel cmp;
};

inline BitString encode(const VcLabel& l) {
  BitWriter w;
  w.put_uint(l.o);
  w.put_bool(l.taut);
  w.put_opt(l.partner);
  w.put_uint(l.packed);
  write_comparison(w, l.cmp);
  return w.take();
}

inline VcLabel read_vc(BitReader& r) {
  VcLabel l;
  l.o = static_cast<std::int64_t>(r.get_uint());
  l.taut = r.get_bool();
  l.partner = r.get_opt();
  l.packed = static_cast<std::int64_t>(r.get_uint());
  l.cmp = read_comparison(r);
  return l;
}

inline VcLabel decode_vc(const BitString& b) { return decode_with(b, read_vc); }
inline std::optional<VcLabel> try_decode_vc(const BitString& b) { return try_decode_with(b, read_vc); }

inline SchemePair mwvc_apls2(const CanonicalOptDGP& problem = mwvc_problem()) {
  SchemePair s;
  s.name = problem.name == "mwvc" ? "mwvc-apls2" : "mwvc-apls2:" + problem.name;
  s.alpha = [](const ConfiguredGraph&) { return 2.0; };
  s.prover = [problem](GraphAccess& access) {
    const auto& g = access.global();
    auto o = g.outputs();
    std::vector<std::int64_t> residual(g.n());
    for (int v = 0; v < g.n(); ++v) residual[v] = problem.weight(g.node(v));
    std::vector<VcLabel> labels(g.n());
    for (int v = 0; v < g.n(); ++v) {
      labels[v].o = o[v];
      labels[v].taut = g.node(v).taut();
    }
    for (const auto& e : g.edges()) {
      if (!effective_edge(g, e)) continue;
      auto y = std::min(residual[e.u], residual[e.v]);
      if (y == 0) continue;
      residual[e.u] -= y;
      residual[e.v] -= y;
      int owner = residual[e.u] == 0 ? e.u : e.v;
      int other = owner == e.u ? e.v : e.u;
      labels[owner].partner = g.id(other);
      labels[owner].packed = 2 * y;
    }
    auto cmps = detail::comparisons_by_component(
        g, [&](const Edge& e) { return effective_edge(g, e); }, [&](int x) { return labels[x].packed; },
        [&](int x) { return problem.weight(g.node(x)) * o[x]; });
    std::vector<BitString> out(g.n());
    for (int v = 0; v < g.n(); ++v) {
      labels[v].cmp = cmps[v];
      out[v] = encode(labels[v]);
    }
    return out;
  };
  s.verifier = [problem](const LocalConfig& c, const BitString& mine, NeighborLabels nb) {
    VcLabel own;
    std::vector<VcLabel> nbrs;
    if (!detail::try_decode_all(mine, nb, try_decode_vc, own, nbrs)) return false;
    if (own.o != detail::own_output(c) || own.taut != c.taut()) return false;
    if (!detail::predicate_holds(problem, c, own, nbrs)) return false;
    std::int64_t w = problem.weight(c);
    std::int64_t load = 0;
    bool partner_ok = !own.partner;
    std::vector<char> scope(nbrs.size());
    for (std::size_t p = 0; p < nbrs.size(); ++p) {
      bool eff = detail::edge_effective(own.taut, nbrs[p].taut, c.ports[p].constrained);
      scope[p] = eff;
      if (own.partner && *own.partner == c.ports[p].neighbor) partner_ok = eff;
      if (nbrs[p].partner && *nbrs[p].partner == c.id) {
        if (!eff) return false;
        load += nbrs[p].packed;
      }
    }
    if (!partner_ok) return false;
    if (!own.partner && own.packed != 0) return false;
    if (own.packed % 2 != 0) return false;
    load += own.packed;
    if (load > 2 * w) return false;
    return detail::check_scope_comparison(c, own.cmp, nbrs, scope, own.packed, w * own.o, CompareMode::at_least);
  };
  return s;
}

// ---------------------------------------------------------------------------
// Unweighted vertex cover on bipartite graphs: a matching of equal size.

struct MatchLabel {
  std::int64_t o = 0;
  bool taut = false;
  std::optional<NodeId> mate;
  ComparisonLabel cmp;
};

inline BitString encode(const MatchLabel& l) {
  BitWriter w;
  w.put_uint(l.o);
  w.put_bool(l.taut);
  w.put_opt(l.mate);
  write_comparison(w, l.cmp);
  return w.take();
}

inline MatchLabel read_match(BitReader& r) {
  MatchLabel l;
  l.o = static_cast<std::int64_t>(r.get_uint());
  l.taut = r.get_bool();
  l.mate = r.get_opt();
  l.cmp = read_comparison(r);
  return l;
}

inline MatchLabel decode_match(const BitString& b) { return decode_with(b, read_match); }
inline std::optional<MatchLabel> try_decode_match(const BitString& b) { return try_decode_with(b, read_match); }

/// Maximum matching on the effective edges; exact on bipartite graphs,
/// greedy otherwise (such inputs are outside the scheme's universe).
inline std::vector<int> effective_matching(const ConfiguredGraph& g) {
  auto h = effective_graph(g);
  if (auto side = two_coloring(h)) return bipartite_matching(h, *side);
  std::vector<int> mate(g.n(), -1);
  for (auto [u, v] : h.edges) {
    if (mate[u] < 0 && mate[v] < 0) {
      mate[u] = v;
      mate[v] = u;
    }
  }
  return mate;
}

inline bool effective_bipartite(const ConfiguredGraph& g) { return two_coloring(effective_graph(g)).has_value(); }

inline SchemePair mvc_bipartite_pls() {
  SchemePair s;
  s.name = "mvc-bipartite";
  s.in_universe = effective_bipartite;
  s.prover = [](GraphAccess& access) {
    const auto& g = access.global();
    auto o = g.outputs();
    auto mate = effective_matching(g);
    std::vector<MatchLabel> labels(g.n());
    for (int v = 0; v < g.n(); ++v) {
      labels[v].o = o[v];
      labels[v].taut = g.node(v).taut();
      if (mate[v] >= 0) labels[v].mate = g.id(mate[v]);
    }
    auto cmps = detail::comparisons_by_component(
        g, [&](const Edge& e) { return effective_edge(g, e); },
        [&](int x) -> std::int64_t { return mate[x] >= 0 && x < mate[x]; }, [&](int x) { return o[x]; });
    std::vector<BitString> out(g.n());
    for (int v = 0; v < g.n(); ++v) {
      labels[v].cmp = cmps[v];
      out[v] = encode(labels[v]);
    }
    return out;
  };
  s.verifier = [problem = mvc_problem()](const LocalConfig& c, const BitString& mine, NeighborLabels nb) {
    MatchLabel own;
    std::vector<MatchLabel> nbrs;
    if (!detail::try_decode_all(mine, nb, try_decode_match, own, nbrs)) return false;
    if (own.o != detail::own_output(c) || own.taut != c.taut()) return false;
    if (!detail::predicate_holds(problem, c, own, nbrs)) return false;
    bool mate_ok = !own.mate;
    std::vector<char> scope(nbrs.size());
    for (std::size_t p = 0; p < nbrs.size(); ++p) {
      bool eff = detail::edge_effective(own.taut, nbrs[p].taut, c.ports[p].constrained);
      scope[p] = eff;
      NodeId u = c.ports[p].neighbor;
      if (own.mate && *own.mate == u) mate_ok = eff && nbrs[p].mate == c.id;
      // a neighbour naming us must be our mate
      if (nbrs[p].mate == c.id && own.mate != u) return false;
    }
    if (!mate_ok) return false;
    std::int64_t owns = own.mate && c.id < *own.mate;
    return detail::check_scope_comparison(c, own.cmp, nbrs, scope, owns, own.o, CompareMode::equal);
  };
  return s;
}

// ---------------------------------------------------------------------------
// Independent set, Delta-approximate: a maximal independent set and Delta.

inline bool maxis_eligible(const LocalConfig& c) { return c.constrained || c.taut(); }
inline bool maxis_eligible(const NodeRecord& r) { return r.constrained || r.taut(); }

/// The graph the independent-set schemes reason about: eligible nodes and
/// effective edges between them.
inline bool maxis_edge(const ConfiguredGraph& g, const Edge& e) {
  return effective_edge(g, e) && maxis_eligible(g.node(e.u)) && maxis_eligible(g.node(e.v));
}

struct MisLabel {
  std::int64_t o = 0;
  bool taut = false;
  bool eligible = false;
  bool in_mis = false;
  std::int64_t delta = 0;
  ComparisonLabel cmp;
};

inline BitString encode(const MisLabel& l) {
  BitWriter w;
  w.put_uint(l.o);
  w.put_bool(l.taut);
  w.put_bool(l.eligible);
  w.put_bool(l.in_mis);
  w.put_uint(l.delta);
  write_comparison(w, l.cmp);
  return w.take();
}

inline MisLabel read_mis(BitReader& r) {
  MisLabel l;
  l.o = static_cast<std::int64_t>(r.get_uint());
  l.taut = r.get_bool();
  l.eligible = r.get_bool();
  l.in_mis = r.get_bool();
  l.delta = static_cast<std::int64_t>(r.get_uint());
  l.cmp = read_comparison(r);
  return l;
}

inline MisLabel decode_mis(const BitString& b) { return decode_with(b, read_mis); }
inline std::optional<MisLabel> try_decode_mis(const BitString& b) { return try_decode_with(b, read_mis); }

inline SchemePair maxis_apls_delta() {
  SchemePair s;
  s.name = "maxis-apls-delta";
  s.alpha = [](const ConfiguredGraph& g) { return std::max(1.0, static_cast<double>(g.max_degree())); };
  s.prover = [](GraphAccess& access) {
    const auto& g = access.global();
    auto o = g.outputs();
    std::vector<MisLabel> labels(g.n());
    std::vector<char> in(g.n(), 0);
    for (int v = 0; v < g.n(); ++v) in[v] = o[v] >= 1;
    // extend o greedily to a maximal independent set
    for (int v = 0; v < g.n(); ++v) {
      if (in[v] || !maxis_eligible(g.node(v))) continue;
      bool free = true;
      for (const auto& a : g.neighbors(v)) {
        if (in[a.nbr] && maxis_edge(g, g.edge(a.edge))) free = false;
      }
      if (free) in[v] = 1;
    }
    for (int v = 0; v < g.n(); ++v) {
      labels[v] = {o[v], g.node(v).taut(), maxis_eligible(g.node(v)), in[v] != 0, g.max_degree(), {}};
    }
    auto cmps = detail::comparisons_by_component(
        g, [&](const Edge& e) { return maxis_edge(g, e); }, [&](int x) { return o[x]; },
        [&](int x) -> std::int64_t { return in[x]; });
    std::vector<BitString> out(g.n());
    for (int v = 0; v < g.n(); ++v) {
      labels[v].cmp = cmps[v];
      out[v] = encode(labels[v]);
    }
    return out;
  };
  s.verifier = [problem = maxis_problem()](const LocalConfig& c, const BitString& mine, NeighborLabels nb) {
    MisLabel own;
    std::vector<MisLabel> nbrs;
    if (!detail::try_decode_all(mine, nb, try_decode_mis, own, nbrs)) return false;
    if (own.o != detail::own_output(c) || own.taut != c.taut() || own.eligible != maxis_eligible(c)) return false;
    if (!detail::predicate_holds(problem, c, own, nbrs)) return false;
    if (own.delta < c.degree()) return false;
    if (own.in_mis && !own.eligible) return false;
    std::vector<char> scope(nbrs.size());
    bool dominated = own.in_mis || !own.eligible;
    for (std::size_t p = 0; p < nbrs.size(); ++p) {
      if (nbrs[p].delta != own.delta) return false;
      bool edge = detail::edge_effective(own.taut, nbrs[p].taut, c.ports[p].constrained) && own.eligible &&
                  nbrs[p].eligible;
      scope[p] = edge;
      if (!edge) continue;
      if (own.in_mis && nbrs[p].in_mis) return false;
      dominated = dominated || nbrs[p].in_mis;
    }
    if (!dominated) return false;
    return detail::check_scope_comparison(c, own.cmp, nbrs, scope, own.o, own.in_mis ? 1 : 0, CompareMode::at_least);
  };
  return s;
}

// ---------------------------------------------------------------------------
// Independent set on bipartite graphs: a minimum edge cover of equal size.

struct EdgeCoverLabel {
  std::int64_t o = 0;
  bool taut = false;
  bool eligible = false;
  std::optional<NodeId> partner;  // cover edge owned by this node
  bool self = false;              // covers itself (no incident edge)
  ComparisonLabel cmp;
};

inline BitString encode(const EdgeCoverLabel& l) {
  BitWriter w;
  w.put_uint(l.o);
  w.put_bool(l.taut);
  w.put_bool(l.eligible);
  w.put_opt(l.partner);
  w.put_bool(l.self);
  write_comparison(w, l.cmp);
  return w.take();
}

inline EdgeCoverLabel read_edge_cover(BitReader& r) {
  EdgeCoverLabel l;
  l.o = static_cast<std::int64_t>(r.get_uint());
  l.taut = r.get_bool();
  l.eligible = r.get_bool();
  l.partner = r.get_opt();
  l.self = r.get_bool();
  l.cmp = read_comparison(r);
  return l;
}

inline EdgeCoverLabel decode_edge_cover(const BitString& b) { return decode_with(b, read_edge_cover); }
inline std::optional<EdgeCoverLabel> try_decode_edge_cover(const BitString& b) { return try_decode_with(b, read_edge_cover); }

inline bool maxis_bipartite_universe(const ConfiguredGraph& g) {
  SimpleGraph h(g.n());
  for (const auto& e : g.edges()) {
    if (maxis_edge(g, e)) h.add(e.u, e.v);
  }
  return two_coloring(h).has_value();
}

inline SchemePair maxis_bipartite_pls() {
  SchemePair s;
  s.name = "maxis-bipartite";
  s.in_universe = maxis_bipartite_universe;
  s.prover = [](GraphAccess& access) {
    const auto& g = access.global();
    auto o = g.outputs();
    SimpleGraph h(g.n());
    for (const auto& e : g.edges()) {
      if (maxis_edge(g, e)) h.add(e.u, e.v);
    }
    std::vector<int> mate;
    if (auto side = two_coloring(h)) {
      mate = bipartite_matching(h, *side);
    } else {
      mate.assign(g.n(), -1);
      for (auto [u, v] : h.edges) {
        if (mate[u] < 0 && mate[v] < 0) {
          mate[u] = v;
          mate[v] = u;
        }
      }
    }
    std::vector<EdgeCoverLabel> labels(g.n());
    for (int v = 0; v < g.n(); ++v) {
      auto& l = labels[v];
      l.o = o[v];
      l.taut = g.node(v).taut();
      l.eligible = maxis_eligible(g.node(v));
      if (!l.eligible) continue;
      if (mate[v] >= 0) {
        if (v < mate[v]) l.partner = g.id(mate[v]);
      } else if (!h.adj[v].empty()) {
        l.partner = g.id(h.adj[v].front());
      } else {
        l.self = true;
      }
    }
    auto cmps = detail::comparisons_by_component(
        g, [&](const Edge& e) { return maxis_edge(g, e); }, [&](int x) { return o[x]; },
        [&](int x) -> std::int64_t { return labels[x].partner || labels[x].self; });
    std::vector<BitString> out(g.n());
    for (int v = 0; v < g.n(); ++v) {
      labels[v].cmp = cmps[v];
      out[v] = encode(labels[v]);
    }
    return out;
  };
  s.verifier = [problem = maxis_problem()](const LocalConfig& c, const BitString& mine, NeighborLabels nb) {
    EdgeCoverLabel own;
    std::vector<EdgeCoverLabel> nbrs;
    if (!detail::try_decode_all(mine, nb, try_decode_edge_cover, own, nbrs)) return false;
    if (own.o != detail::own_output(c) || own.taut != c.taut() || own.eligible != maxis_eligible(c)) return false;
    if (!detail::predicate_holds(problem, c, own, nbrs)) return false;
    if (!own.eligible && (own.partner || own.self)) return false;
    if (own.partner && own.self) return false;
    std::vector<char> scope(nbrs.size());
    bool covered = own.partner || own.self;
    bool partner_ok = !own.partner;
    for (std::size_t p = 0; p < nbrs.size(); ++p) {
      bool edge = detail::edge_effective(own.taut, nbrs[p].taut, c.ports[p].constrained) && own.eligible &&
                  nbrs[p].eligible;
      scope[p] = edge;
      NodeId u = c.ports[p].neighbor;
      if (own.partner && *own.partner == u) partner_ok = edge;
      if (nbrs[p].partner == c.id) {
        if (!edge) return false;
        covered = true;
      }
    }
    if (!partner_ok) return false;
    if (own.eligible && !covered) return false;
    std::int64_t cover_units = own.partner || own.self;
    return detail::check_scope_comparison(c, own.cmp, nbrs, scope, own.o, cover_units, CompareMode::equal);
  };
  return s;
}

// ---------------------------------------------------------------------------
// Dominating set, H-approximate: greedy set cover prices as a scaled dual.

/// Fixed-point scale for the dual prices: lcm(1..16) * 2^10, so Q / i is
/// exact for every closed-neighbourhood size up to 16.
inline constexpr std::int64_t kDualScale = 720720LL * 1024LL;

/// sum_{i=1..d} ceil(Q / i)
inline std::int64_t scaled_harmonic(std::int64_t d) {
  std::int64_t s = 0;
  for (std::int64_t i = 1; i <= d; ++i) s += (kDualScale + i - 1) / i;
  return s;
}

inline double harmonic(std::int64_t n) {
  double h = 0;
  for (std::int64_t i = 1; i <= n; ++i) h += 1.0 / static_cast<double>(i);
  return h;
}

struct DsLabel {
  std::int64_t o = 0;
  bool must = false;     // constrained and not tautological
  std::int64_t price = 0;
  ComparisonLabel cmp;
};

inline BitString encode(const DsLabel& l) {
  BitWriter w;
  w.put_uint(l.o);
  w.put_bool(l.must);
  w.put_uint(l.price);
  write_comparison(w, l.cmp);
  return w.take();
}

inline DsLabel read_ds(BitReader& r) {
  DsLabel l;
  l.o = static_cast<std::int64_t>(r.get_uint());
  l.must = r.get_bool();
  l.price = static_cast<std::int64_t>(r.get_uint());
  l.cmp = read_comparison(r);
  return l;
}

inline DsLabel decode_ds(const BitString& b) { return decode_with(b, read_ds); }
inline std::optional<DsLabel> try_decode_ds(const BitString& b) { return try_decode_with(b, read_ds); }

/// Greedy weighted set cover of the nodes that need domination; returns the
/// scaled price ceil(Q * w / k) each element was charged.
inline std::vector<std::int64_t> greedy_dominating_prices(const ConfiguredGraph& g, const CanonicalOptDGP& p) {
  std::vector<char> must(g.n()), covered(g.n(), 0);
  for (int v = 0; v < g.n(); ++v) must[v] = g.node(v).constrained && !g.node(v).taut();
  std::vector<std::int64_t> price(g.n(), 0);
  auto gain = [&](int u) {
    int k = must[u] && !covered[u];
    for (const auto& a : g.neighbors(u)) k += must[a.nbr] && !covered[a.nbr];
    return k;
  };
  while (true) {
    int best = -1, best_k = 0;
    std::int64_t best_w = 0;
    for (int u = 0; u < g.n(); ++u) {
      int k = gain(u);
      if (k == 0) continue;
      std::int64_t w = p.weight(g.node(u));
      // w / k < best_w / best_k
      if (best < 0 || w * best_k < best_w * k) {
        best = u;
        best_k = k;
        best_w = w;
      }
    }
    if (best < 0) break;
    std::int64_t each = (kDualScale * best_w + best_k - 1) / best_k;
    auto charge = [&](int x) {
      if (must[x] && !covered[x]) {
        covered[x] = 1;
        price[x] = each;
      }
    };
    charge(best);
    for (const auto& a : g.neighbors(best)) charge(a.nbr);
  }
  return price;
}

inline SchemePair mwds_apls_h() {
  SchemePair s;
  s.name = "mwds-aplsH";
  s.alpha = [](const ConfiguredGraph& g) { return harmonic(std::max(1, g.n())); };
  s.prover = [problem = mwds_problem()](GraphAccess& access) {
    const auto& g = access.global();
    auto o = g.outputs();
    auto price = greedy_dominating_prices(g, problem);
    auto cmps = detail::comparisons_by_component(
        g, [](const Edge&) { return true; }, [&](int x) { return price[x]; },
        [&](int x) { return kDualScale * problem.weight(g.node(x)) * o[x]; });
    std::vector<BitString> out(g.n());
    for (int v = 0; v < g.n(); ++v) {
      DsLabel l{o[v], g.node(v).constrained && !g.node(v).taut(), price[v], cmps[v]};
      out[v] = encode(l);
    }
    return out;
  };
  s.verifier = [problem = mwds_problem()](const LocalConfig& c, const BitString& mine, NeighborLabels nb) {
    DsLabel own;
    std::vector<DsLabel> nbrs;
    if (!detail::try_decode_all(mine, nb, try_decode_ds, own, nbrs)) return false;
    if (own.o != detail::own_output(c) || own.must != (c.constrained && !c.taut())) return false;
    if (!detail::predicate_holds(problem, c, own, nbrs)) return false;
    if (!own.must && own.price != 0) return false;
    std::int64_t load = own.price, d = own.must;
    for (const auto& l : nbrs) {
      if (!l.must && l.price != 0) return false;
      if (__builtin_add_overflow(load, l.price, &load)) return false;
      d += l.must;
    }
    std::int64_t cap;
    if (__builtin_mul_overflow(problem.weight(c), scaled_harmonic(d), &cap) || load > cap) return false;
    std::int64_t b;
    if (__builtin_mul_overflow(kDualScale * problem.weight(c), own.o, &b)) return false;
    std::vector<char> scope(nbrs.size(), 1);
    return detail::check_scope_comparison(c, own.cmp, nbrs, scope, own.price, b, CompareMode::at_least);
  };
  return s;
}

// ---------------------------------------------------------------------------
// Exact schemes for graph families.

struct TreeLabel {
  NodeId root = 0;
  std::optional<NodeId> parent;
  std::int64_t dist = 0;
};

inline void write_tree(BitWriter& w, const TreeLabel& t) {
  w.put_uint(static_cast<std::uint64_t>(t.root));
  w.put_opt(t.parent);
  w.put_uint(static_cast<std::uint64_t>(t.dist));
}

inline TreeLabel read_tree(BitReader& r) {
  TreeLabel t;
  t.root = static_cast<NodeId>(r.get_uint());
  t.parent = r.get_opt();
  t.dist = static_cast<std::int64_t>(r.get_uint());
  return t;
}

/// BFS forests of the given edge subset, rooted at the smallest id of each tree.
inline std::vector<TreeLabel> bfs_forest(const ConfiguredGraph& g, const std::function<bool(int)>& use_edge) {
  std::vector<TreeLabel> out(g.n());
  std::vector<char> seen(g.n(), 0);
  for (int s = 0; s < g.n(); ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    out[s] = {g.id(s), std::nullopt, 0};
    std::vector<int> queue{s};
    for (std::size_t k = 0; k < queue.size(); ++k) {
      int x = queue[k];
      for (const auto& a : g.neighbors(x)) {
        if (seen[a.nbr] || !use_edge(a.edge)) continue;
        seen[a.nbr] = 1;
        out[a.nbr] = {g.id(s), g.id(x), out[x].dist + 1};
        queue.push_back(a.nbr);
      }
    }
  }
  return out;
}

/// Shape check for one parent-pointer forest at a node. `tree_edge[p]`
/// reports whether port p is a parent edge in either direction.
inline bool check_tree(const LocalConfig& c, const TreeLabel& own, const std::vector<const TreeLabel*>& nbrs,
                       std::vector<char>* tree_edge) {
  bool is_root = own.root == c.id;
  if (is_root != !own.parent) return false;
  if (is_root && own.dist != 0) return false;
  if (!is_root && own.dist < 1) return false;
  bool parent_found = is_root;
  for (std::size_t p = 0; p < nbrs.size(); ++p) {
    const auto& t = *nbrs[p];
    NodeId u = c.ports[p].neighbor;
    bool up = own.parent == u, down = t.parent == c.id;
    if (up) {
      if (t.dist != own.dist - 1 || t.root != own.root) return false;
      parent_found = true;
    }
    if (down && t.root != own.root) return false;
    if (tree_edge) (*tree_edge)[p] = (*tree_edge)[p] || up || down;
  }
  return parent_found;
}

inline TreeLabel decode_tree_only(const BitString& b) { return decode_with(b, read_tree); }
inline std::optional<TreeLabel> try_decode_tree_only(const BitString& b) { return try_decode_with(b, read_tree); }

inline SchemePair forest_pls() {
  SchemePair s;
  s.name = "forest-pls";
  s.in_universe = [](const ConfiguredGraph& g) { return !g.directed(); };
  s.prover = [](GraphAccess& access) {
    const auto& g = access.global();
    auto trees = bfs_forest(g, [](int) { return true; });
    std::vector<BitString> out(g.n());
    for (int v = 0; v < g.n(); ++v) {
      BitWriter w;
      write_tree(w, trees[v]);
      out[v] = w.take();
    }
    return out;
  };
  s.verifier = [](const LocalConfig& c, const BitString& mine, NeighborLabels nb) {
    TreeLabel own;
    std::vector<TreeLabel> nbrs;
    if (!detail::try_decode_all(mine, nb, try_decode_tree_only, own, nbrs)) return false;
    std::vector<const TreeLabel*> ptrs;
    for (const auto& t : nbrs) ptrs.push_back(&t);
    std::vector<char> tree_edge(nbrs.size(), 0);
    if (!check_tree(c, own, ptrs, &tree_edge)) return false;
    for (std::size_t p = 0; p < nbrs.size(); ++p) {
      if (nbrs[p].root != own.root) return false;
      if (!tree_edge[p]) return false;
    }
    return true;
  };
  return s;
}

inline SchemePair arboricity_pls(int c_forests) {
  SchemePair s;
  s.name = "arboricity-pls:" + std::to_string(c_forests);
  s.in_universe = [](const ConfiguredGraph& g) { return !g.directed(); };
  auto decode = [c_forests](const BitString& b) {
    return try_decode_with(b, [c_forests](BitReader& r) {
      std::vector<TreeLabel> parts;
      for (int i = 0; i < c_forests; ++i) parts.push_back(read_tree(r));
      return parts;
    });
  };
  s.prover = [c_forests](GraphAccess& access) {
    const auto& g = access.global();
    ForestPartition fp(g.n(), edge_pairs(g), c_forests);
    std::vector<std::vector<TreeLabel>> parts;
    for (int i = 0; i < c_forests; ++i) {
      parts.push_back(bfs_forest(g, [&](int e) { return fp.part()[e] == i; }));
    }
    std::vector<BitString> out(g.n());
    for (int v = 0; v < g.n(); ++v) {
      BitWriter w;
      for (int i = 0; i < c_forests; ++i) write_tree(w, parts[i][v]);
      out[v] = w.take();
    }
    return out;
  };
  s.verifier = [c_forests, decode](const LocalConfig& c, const BitString& mine, NeighborLabels nb) {
    std::vector<TreeLabel> own;
    std::vector<std::vector<TreeLabel>> nbrs;
    if (!detail::try_decode_all(mine, nb, decode, own, nbrs)) return false;
    std::vector<char> tree_edge(nbrs.size(), 0);
    for (int i = 0; i < c_forests; ++i) {
      std::vector<const TreeLabel*> ptrs;
      for (const auto& l : nbrs) ptrs.push_back(&l[i]);
      if (!check_tree(c, own[i], ptrs, &tree_edge)) return false;
    }
    return std::all_of(tree_edge.begin(), tree_edge.end(), [](char x) { return x != 0; });
  };
  return s;
}

inline SchemePair dag_pls() {
  SchemePair s;
  s.name = "dag-pls";
  auto decode = [](const BitString& b) {
    return try_decode_with(b, [](BitReader& r) { return static_cast<std::int64_t>(r.get_uint()); });
  };
  s.prover = [](GraphAccess& access) {
    const auto& g = access.global();
    auto level = g.directed() ? dag_levels(g) : std::vector<std::int64_t>(g.n(), 0);
    std::vector<BitString> out(g.n());
    for (int v = 0; v < g.n(); ++v) {
      BitWriter w;
      w.put_uint(level[v]);
      out[v] = w.take();
    }
    return out;
  };
  s.verifier = [decode](const LocalConfig& c, const BitString& mine, NeighborLabels nb) {
    std::int64_t own = 0;
    std::vector<std::int64_t> levels;
    if (!detail::try_decode_all(mine, nb, decode, own, levels)) return false;
    for (std::size_t p = 0; p < nb.size(); ++p) {
      auto theirs = levels[p];
      int dir = c.ports[p].direction;
      if (dir == 0) return false;
      if (dir > 0 && theirs <= own) return false;
      if (dir < 0 && theirs >= own) return false;
    }
    return true;
  };
  return s;
}

inline SchemePair kcolor_pls(int k) {
  SchemePair s;
  s.name = "kcolor-pls:" + std::to_string(k);
  s.in_universe = [](const ConfiguredGraph& g) { return !g.directed(); };
  auto decode = [k](const BitString& b) {
    return try_decode_with(b, [k](BitReader& r) {
      auto color = static_cast<std::int64_t>(r.get_uint());
      if (color >= k) r.fail("colour out of range");
      return color;
    });
  };
  s.prover = [k](GraphAccess& access) {
    const auto& g = access.global();
    auto color = k_coloring(g, k);
    if (!color) throw std::invalid_argument("graph is not " + std::to_string(k) + "-colourable");
    std::vector<BitString> out(g.n());
    for (int v = 0; v < g.n(); ++v) {
      BitWriter w;
      w.put_uint((*color)[v]);
      out[v] = w.take();
    }
    return out;
  };
  s.verifier = [decode](const LocalConfig&, const BitString& mine, NeighborLabels nb) {
    std::int64_t own = 0;
    std::vector<std::int64_t> colors;
    if (!detail::try_decode_all(mine, nb, decode, own, colors)) return false;
    for (auto c : colors) {
      if (c == own) return false;
    }
    return true;
  };
  return s;
}

// ---------------------------------------------------------------------------
// Universal scheme: every node holds a copy of the whole configured graph.

inline BitString serialize_graph(const ConfiguredGraph& g) {
  BitWriter w;
  w.put_bool(g.directed());
  w.put_uint(g.n());
  for (const auto& r : g.nodes()) {
    w.put_uint(static_cast<std::uint64_t>(r.id));
    w.put_uint(static_cast<std::uint64_t>(r.weight));
    w.put_uint(r.data.size());
    for (unsigned char ch : r.data) w.put_uint(ch);
    w.put_uint(r.prd.size());
    for (unsigned char ch : r.prd) w.put_uint(ch);
    w.put_bool(r.constrained);
    w.put_opt(r.output);
  }
  auto specs = g.edge_specs();
  w.put_uint(specs.size());
  for (const auto& e : specs) {
    w.put_uint(static_cast<std::uint64_t>(e.u));
    w.put_uint(static_cast<std::uint64_t>(e.v));
    w.put_bool(e.constrained);
    w.put_uint(static_cast<std::uint64_t>(*e.port_u));
    w.put_uint(static_cast<std::uint64_t>(*e.port_v));
  }
  return w.take();
}

inline ConfiguredGraph deserialize_graph(const BitString& b) {
  BitReader r(b);
  bool directed = r.get_bool();
  auto n = r.get_uint();
  if (n > b.size()) throw DecodeError("node count exceeds label length");
  std::vector<NodeRecord> nodes(n);
  auto read_string = [&](std::string& s) {
    auto len = r.get_uint();
    if (len > b.size()) throw DecodeError("string longer than label");
    for (std::uint64_t i = 0; i < len; ++i) {
      auto ch = r.get_uint();
      if (ch > 255) throw DecodeError("bad character");
      s.push_back(static_cast<char>(ch));
    }
  };
  for (auto& rec : nodes) {
    rec.id = static_cast<NodeId>(r.get_uint());
    rec.weight = static_cast<std::int64_t>(r.get_uint());
    read_string(rec.data);
    read_string(rec.prd);
    rec.constrained = r.get_bool();
    rec.output = r.get_opt();
  }
  auto m = r.get_uint();
  if (m > b.size()) throw DecodeError("edge count exceeds label length");
  std::vector<EdgeSpec> edges(m);
  for (auto& e : edges) {
    e.u = static_cast<NodeId>(r.get_uint());
    e.v = static_cast<NodeId>(r.get_uint());
    e.constrained = r.get_bool();
    e.port_u = static_cast<int>(r.get_uint());
    e.port_v = static_cast<int>(r.get_uint());
  }
  r.expect_end();
  try {
    return ConfiguredGraph(directed, std::move(nodes), edges);
  } catch (const std::exception& ex) {
    throw DecodeError(std::string("graph copy is malformed: ") + ex.what());
  }
}

inline bool same_local_view(const LocalConfig& a, const LocalConfig& b) {
  if (a.id != b.id || a.weight != b.weight || a.data != b.data || a.prd != b.prd || a.constrained != b.constrained ||
      a.output != b.output || a.ports.size() != b.ports.size()) {
    return false;
  }
  for (std::size_t p = 0; p < a.ports.size(); ++p) {
    const auto &x = a.ports[p], &y = b.ports[p];
    if (x.port != y.port || x.neighbor != y.neighbor || x.constrained != y.constrained || x.direction != y.direction) {
      return false;
    }
  }
  return true;
}

/// `decide` is the oracle run on the copied instance: family membership or
/// optimality of the copied output.
inline SchemePair universal_pls(const std::string& what, std::function<bool(const ConfiguredGraph&)> decide) {
  SchemePair s;
  s.name = "universal-pls:" + what;
  s.prover = [](GraphAccess& access) {
    int n = access.n();
    std::vector<BitString> out(n);
    for (int v = 0; v < n; ++v) {
      // the label needs the whole graph, so read all of it from v
      auto scope = access.scope(v);
      std::vector<int> seen(n, 0), queue{v};
      seen[v] = 1;
      for (std::size_t k = 0; k < queue.size(); ++k) {
        for (const auto& a : access.neighbors(queue[k])) {
          if (!seen[a.nbr]) {
            seen[a.nbr] = 1;
            queue.push_back(a.nbr);
          }
        }
      }
      // other components are read too: the copy is of the entire graph
      for (int x = 0; x < n; ++x) {
        if (!seen[x]) access.node(x);
      }
      out[v] = serialize_graph(access.graph_unchecked());
    }
    return out;
  };
  auto cache = std::make_shared<std::unordered_map<BitString, bool>>();
  auto lock = std::make_shared<std::mutex>();
  s.verifier = [decide, cache, lock](const LocalConfig& c, const BitString& mine, NeighborLabels nb) {
    for (const auto& b : nb) {
      if (b != mine) return false;
    }
    auto copy = deserialize_graph(mine);
    if (!copy.has_id(c.id)) return false;
    if (!same_local_view(c, local_config(copy, copy.index_of(c.id)))) return false;
    {
      std::lock_guard<std::mutex> guard(*lock);
      if (auto it = cache->find(mine); it != cache->end()) return it->second;
    }
    bool verdict = decide(copy);
    std::lock_guard<std::mutex> guard(*lock);
    cache->emplace(mine, verdict);
    return verdict;
  };
  return s;
}

/// Optimality oracle for the universal scheme.
inline std::function<bool(const ConfiguredGraph&)> optimality_oracle(const CanonicalOptDGP& p) {
  return [p](const ConfiguredGraph& g) {
    if (!g.has_outputs()) return false;
    auto o = g.outputs();
    if (!p.feasible(g, o)) return false;
    return p.objective(g, o) == exact_opt(p, g).value;
  };
}

}  // namespace lrpls
