#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"
#include "locality.hpp"
#include "problem.hpp"
#include "rational.hpp"
#include "slocal.hpp"

namespace lrpls {

/// BFS from a center inside the residual graph (nodes not `removed`), grown
/// one layer at a time through a GraphAccess so the reads are accounted.
class BallGrower {
 public:
  static constexpr int kUnbounded = std::numeric_limits<int>::max();

  BallGrower(GraphAccess& access, int center, const std::vector<char>& removed)
      : access_(access), removed_(removed), dist_(access.n(), -1), need_(access.n(), -1) {
    access_.touch(center);
    dist_[center] = 0;
    layers_.push_back({center});
  }

  /// Adds layer depth()+1. Returns false once the residual component is exhausted.
  bool grow() {
    if (exhausted_) return false;
    std::vector<int> next;
    int d = depth() + 1;
    for (int x : layers_.back()) {
      for (const auto& a : access_.neighbors(x)) {
        if (removed_[a.nbr] || dist_[a.nbr] >= 0) continue;
        dist_[a.nbr] = d;
        next.push_back(a.nbr);
      }
    }
    std::sort(next.begin(), next.end());
    if (next.empty()) {
      exhausted_ = true;
      return false;
    }
    layers_.push_back(std::move(next));
    return true;
  }

  void grow_to(int depth) {
    while (this->depth() < depth && grow()) {
    }
  }

  int depth() const { return static_cast<int>(layers_.size()) - 1; }
  bool exhausted() const { return exhausted_; }
  int dist(int x) const { return dist_[x]; }
  const std::vector<int>& layer(int d) const {
    static const std::vector<int> empty;
    return d >= 0 && d <= depth() ? layers_[d] : empty;
  }

  /// Smallest L such that x is in inner^2(B^L), the 2-ball taken in G;
  /// kUnbounded if that ball meets a removed node. Needs layers up to dist(x)+2.
  int need(int x) {
    if (need_[x] != -1) return need_[x];
    grow_to(dist_[x] + 2);
    int worst = dist_[x];
    for (const auto& a : access_.neighbors(x)) {
      if (removed_[a.nbr] || dist_[a.nbr] < 0) return need_[x] = kUnbounded;
      worst = std::max(worst, dist_[a.nbr]);
      for (const auto& b : access_.neighbors(a.nbr)) {
        if (removed_[b.nbr] || dist_[b.nbr] < 0) return need_[x] = kUnbounded;
        worst = std::max(worst, dist_[b.nbr]);
      }
    }
    return need_[x] = worst;
  }

  std::vector<int> ball(int r) const {
    std::vector<int> out;
    for (int d = 0; d <= std::min(r, depth()); ++d) out.insert(out.end(), layers_[d].begin(), layers_[d].end());
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  GraphAccess& access_;
  const std::vector<char>& removed_;
  std::vector<int> dist_;
  std::vector<int> need_;
  std::vector<std::vector<int>> layers_;
  bool exhausted_ = false;
};

/// Per-node partition fields.
struct PartitionInfo {
  std::optional<NodeId> cluster;
  std::optional<NodeId> sec;    // last secondary affiliation written
  std::vector<NodeId> secs;     // every affiliation ever written, in order
  bool black = false;
};

/// One SLOCAL iteration. Empty iterations have no radius and no members.
struct ClusterRecord {
  NodeId leader = 0;
  int iteration = 0;
  std::optional<int> radius;
  NodeSet members;
  std::int64_t rule_lhs = 0;  // the two sides of the stopping rule at r(j)
  std::int64_t rule_rhs = 0;
  bool rule_holds = true;
};

struct PartitionState {
  std::vector<PartitionInfo> info;
  std::vector<ClusterRecord> clusters;  // in processing order, one per node
  std::vector<int> order;
  int locality = 0;  // largest radius read from any center

  NodeSet cluster_members(const ConfiguredGraph& g, NodeId leader) const {
    NodeSet out;
    for (int v = 0; v < g.n(); ++v) {
      if (info[v].cluster == leader) out.push_back(v);
    }
    return out;
  }

  int max_radius() const {
    int r = 0;
    for (const auto& c : clusters) {
      if (c.radius) r = std::max(r, *c.radius);
    }
    return r;
  }
};

/// Node values w(v)*o(v) used by the OptDGP stopping rules.
using NodeValue = std::function<std::int64_t(int)>;

namespace detail {

inline bool mul_le(std::int64_t a, std::int64_t x, std::int64_t b, std::int64_t y) {
  __int128 l = static_cast<__int128>(a) * x, r = static_cast<__int128>(b) * y;
  return l <= r;
}

/// Stopping radius for the OptDGP partition from an already placed grower.
inline int opt_radius(BallGrower& ball, const NodeValue& value, Rational eps, OptMode mode, std::int64_t* lhs = nullptr,
                      std::int64_t* rhs = nullptr) {
  // weight by level of need (min) or by distance (max), prefix-summed on demand
  std::vector<std::int64_t> at_level;
  int processed = -1;
  auto bump = [&](int level, std::int64_t v) {
    if (level == BallGrower::kUnbounded) return;
    if (static_cast<int>(at_level.size()) <= level) at_level.resize(level + 1, 0);
    at_level[level] += v;
  };
  auto weight_upto = [&](int level) {
    std::int64_t s = 0;
    for (int l = 0; l <= level && l < static_cast<int>(at_level.size()); ++l) s += at_level[l];
    return s;
  };
  for (int r = 0;; ++r) {
    int top = r + 6;
    ball.grow_to(top + 2);
    // every node whose need can be <= top sits at distance <= top
    for (int d = processed + 1; d <= std::min(top, ball.depth()); ++d) {
      for (int x : ball.layer(d)) {
        if (mode == OptMode::min) {
          bump(ball.need(x), value(x));
        } else {
          bump(d, value(x));
        }
      }
      processed = d;
    }
    auto big = weight_upto(top), small = weight_upto(r + 2);
    // q * big <= (q + p) * small
    if (mul_le(eps.q, big, eps.q + eps.p, small)) {
      if (lhs) *lhs = big;
      if (rhs) *rhs = small;
      return r;
    }
  }
}

}  // namespace detail

/// r(j) for a min problem: smallest r with w(inner2(B^{r+6})) <= (1+eps) w(inner2(B^{r+2})).
/// `removed` marks nodes of earlier clusters; inner2 is taken in G.
inline int radius_opt_min(const ConfiguredGraph& g, const NodeValue& value, NodeId center,
                          const std::vector<char>& removed, Rational eps) {
  GraphAccess access(g);
  BallGrower ball(access, g.index_of(center), removed);
  return detail::opt_radius(ball, value, eps, OptMode::min);
}

/// r(j) for a max problem: smallest r with w(B^{r+6}) <= (1+eps) w(B^{r+2}).
inline int radius_opt_max(const ConfiguredGraph& g, const NodeValue& value, NodeId center,
                          const std::vector<char>& removed, Rational eps) {
  GraphAccess access(g);
  BallGrower ball(access, g.index_of(center), removed);
  return detail::opt_radius(ball, value, eps, OptMode::max);
}

/// The OptDGP partition. `value(x)` must be w(x)*o(x); it is only called
/// after x has been read through the access.
inline PartitionState part_opt(GraphAccess& access, const NodeValue& value, Rational eps, OptMode mode,
                               const std::vector<int>& order) {
  int n = access.n();
  std::vector<char> removed(n, 0);
  std::vector<PartitionInfo> info(n);
  std::vector<ClusterRecord> records;
  int iteration = 0;
  auto state = run_slocal<char, char>(access, order, std::nullopt, [&](int v, GraphAccess& acc, auto&) -> char {
    ClusterRecord rec;
    rec.leader = acc.id(v);
    rec.iteration = ++iteration;
    if (removed[v]) {
      records.push_back(std::move(rec));
      return 0;
    }
    BallGrower ball(acc, v, removed);
    int r = detail::opt_radius(ball, value, eps, mode, &rec.rule_lhs, &rec.rule_rhs);
    rec.radius = r;
    std::vector<char> in_x(n, 0);
    std::vector<int> xs, ys;
    for (int x : ball.layer(r + 3)) {
      if (!info[x].black && ball.need(x) <= r + 6) {
        xs.push_back(x);
        in_x[x] = 1;
      }
    }
    for (int y : ball.layer(r + 4)) {
      if (info[y].black || ball.need(y) > r + 6) continue;
      bool touches = false;
      for (const auto& a : acc.neighbors(y)) touches = touches || in_x[a.nbr];
      if (touches) ys.push_back(y);
    }
    rec.members = ball.ball(r + 2);
    for (int x : rec.members) {
      info[x].cluster = rec.leader;
      removed[x] = 1;
    }
    for (int x : xs) {
      info[x].sec = rec.leader;
      info[x].secs.push_back(rec.leader);
      info[x].black = true;
    }
    for (int y : ys) {
      info[y].sec = rec.leader;
      info[y].secs.push_back(rec.leader);
    }
    records.push_back(std::move(rec));
    return 1;
  });
  PartitionState out;
  out.info = std::move(info);
  out.clusters = std::move(records);
  out.order = state.order;
  out.locality = access.max_radius();
  return out;
}

inline PartitionState part_opt(const ConfiguredGraph& g, const std::vector<std::int64_t>& o, const CanonicalOptDGP& p,
                               Rational eps, const Order& order = {}) {
  GraphAccess access(g);
  auto value = [&](int x) { return p.weight(g.node(x)) * o[x]; };
  return part_opt(access, value, eps, p.mode, order.permutation(g.n()));
}

/// How the crossing edges C^r are counted by the CGF stopping rule.
enum class CrossCount {
  residual,  // only edges into the residual graph outside the ball
  full,      // every edge of G leaving the ball, as literally stated
};

namespace detail {

struct CgfRadius {
  int radius = 0;
  std::int64_t inside = 0;    // |E^r|
  std::int64_t crossing = 0;  // |C^r|
  bool holds = true;
};

inline CgfRadius cgf_radius(GraphAccess& access, BallGrower& ball, const std::vector<char>& removed, Rational delta,
                            CrossCount count) {
  std::int64_t inside = 0;
  for (int r = 0;; ++r) {
    ball.grow_to(r + 1);
    // edges of G(B^r): the new layer's edges to itself (once) and to earlier layers
    for (int x : ball.layer(r)) {
      for (const auto& a : access.neighbors(x)) {
        int d = ball.dist(a.nbr);
        if (removed[a.nbr] || d < 0) continue;
        if (d < r || (d == r && a.nbr > x)) ++inside;
      }
    }
    std::int64_t crossing = 0;
    for (int d = 0; d <= r; ++d) {
      for (int x : ball.layer(d)) {
        for (const auto& a : access.neighbors(x)) {
          if (removed[a.nbr]) {
            crossing += count == CrossCount::full;
          } else if (ball.dist(a.nbr) == r + 1) {
            ++crossing;
          }
        }
      }
    }
    bool holds = mul_le(delta.q, crossing, delta.p, inside);
    // the literal rule may never hold; stop once the ball is saturated
    if (holds || (ball.exhausted() && ball.depth() <= r)) return {r, inside, crossing, holds};
  }
}

}  // namespace detail

/// r(j) for the CGF partition: smallest r with |C^r| <= delta |E^r|.
inline int radius_cgf(const ConfiguredGraph& g, NodeId center, const std::vector<char>& removed, Rational delta,
                      CrossCount count = CrossCount::residual) {
  GraphAccess access(g);
  BallGrower ball(access, g.index_of(center), removed);
  return detail::cgf_radius(access, ball, removed, delta, count).radius;
}

/// The CGF partition. Every affiliation written is kept in `secs`; `sec`
/// holds the last one, which is the single-field behaviour.
inline PartitionState part_cgf(GraphAccess& access, Rational delta, const std::vector<int>& order,
                               CrossCount count = CrossCount::residual) {
  int n = access.n();
  std::vector<char> removed(n, 0);
  std::vector<PartitionInfo> info(n);
  std::vector<ClusterRecord> records;
  int iteration = 0;
  auto state = run_slocal<char, char>(access, order, std::nullopt, [&](int v, GraphAccess& acc, auto&) -> char {
    ClusterRecord rec;
    rec.leader = acc.id(v);
    rec.iteration = ++iteration;
    if (removed[v]) {
      records.push_back(std::move(rec));
      return 0;
    }
    BallGrower ball(acc, v, removed);
    auto res = detail::cgf_radius(acc, ball, removed, delta, count);
    rec.radius = res.radius;
    rec.rule_lhs = res.crossing;
    rec.rule_rhs = res.inside;
    rec.rule_holds = res.holds;
    rec.members = ball.ball(res.radius);
    for (int x : rec.members) {
      info[x].cluster = rec.leader;
      removed[x] = 1;
    }
    for (int x : ball.layer(res.radius + 1)) {
      info[x].sec = rec.leader;
      info[x].secs.push_back(rec.leader);
    }
    records.push_back(std::move(rec));
    return 1;
  });
  PartitionState out;
  out.info = std::move(info);
  out.clusters = std::move(records);
  out.order = state.order;
  out.locality = access.max_radius();
  return out;
}

inline PartitionState part_cgf(const ConfiguredGraph& g, Rational delta, const Order& order = {},
                               CrossCount count = CrossCount::residual) {
  GraphAccess access(g);
  return part_cgf(access, delta, order.permutation(g.n()), count);
}

// Derived sets and reports.

/// sec(V_j): nodes whose final secondary affiliation is `leader`.
inline NodeSet sec_set(const PartitionState& s, NodeId leader) {
  NodeSet out;
  for (int v = 0; v < static_cast<int>(s.info.size()); ++v) {
    if (s.info[v].sec == leader) out.push_back(v);
  }
  return out;
}

inline NodeSet ext_set(const ConfiguredGraph& g, const PartitionState& s, NodeId leader) {
  NodeSet out;
  for (int v = 0; v < g.n(); ++v) {
    if (s.info[v].cluster == leader || s.info[v].sec == leader) out.push_back(v);
  }
  return out;
}

/// S_j = sec(V_j) plus the rim of V_j without any secondary affiliation.
inline NodeSet s_set(const ConfiguredGraph& g, const PartitionState& s, NodeId leader) {
  auto members = s.cluster_members(g, leader);
  auto rim_mask = membership(g, rim(g, members));
  NodeSet out;
  for (int v = 0; v < g.n(); ++v) {
    bool by_sec = s.info[v].sec == leader;
    bool by_rim = rim_mask[v] && !s.info[v].sec;
    if (by_sec || by_rim) out.push_back(v);
  }
  return out;
}

/// T_j = inner2(V_j) plus S_j.
inline NodeSet t_set(const ConfiguredGraph& g, const PartitionState& s, NodeId leader) {
  auto core = inner2(g, s.cluster_members(g, leader));
  auto extra = s_set(g, s, leader);
  NodeSet out;
  std::set_union(core.begin(), core.end(), extra.begin(), extra.end(), std::back_inserter(out));
  return out;
}

struct ClusterSummary {
  NodeId leader = 0;
  int radius = 0;
  int size = 0;
  int diameter = 0;       // of G(V_j); -1 if disconnected
  int ext_diameter = 0;   // of G(ext(V_j)); -1 if disconnected
  int sec_size = 0;
  int s_size = 0;         // OptDGP
  std::int64_t inside = 0;    // CGF: |E^{r(j)}|
  std::int64_t crossing = 0;  // CGF: |C^{r(j)}|
  std::int64_t f_edges = 0;   // CGF: |F_j| with every affiliation counted
  std::int64_t f_edges_literal = 0;  // CGF: |F_j| against the final sec only
  std::int64_t rule_lhs = 0;
  std::int64_t rule_rhs = 0;
  bool rule_holds = true;
};

/// One row per non-empty cluster.
inline std::vector<ClusterSummary> cluster_report(const ConfiguredGraph& g, const PartitionState& s) {
  std::vector<ClusterSummary> out;
  for (const auto& c : s.clusters) {
    if (!c.radius) continue;
    ClusterSummary row;
    row.leader = c.leader;
    row.radius = *c.radius;
    row.size = static_cast<int>(c.members.size());
    row.diameter = induced_diameter(g, c.members);
    row.ext_diameter = induced_diameter(g, ext_set(g, s, c.leader));
    row.sec_size = static_cast<int>(sec_set(s, c.leader).size());
    row.s_size = static_cast<int>(s_set(g, s, c.leader).size());
    row.rule_lhs = c.rule_lhs;
    row.rule_rhs = c.rule_rhs;
    row.rule_holds = c.rule_holds;
    for (const auto& e : g.edges()) {
      for (auto [a, b] : {std::pair(e.u, e.v), std::pair(e.v, e.u)}) {
        if (s.info[a].cluster != c.leader || s.info[b].cluster == c.leader) continue;
        const auto& secs = s.info[b].secs;
        row.f_edges += std::find(secs.begin(), secs.end(), c.leader) != secs.end();
        row.f_edges_literal += s.info[b].sec == c.leader;
      }
    }
    row.inside = c.rule_rhs;
    row.crossing = c.rule_lhs;
    out.push_back(row);
  }
  return out;
}

// Invariant checks for honest runs; each returns the offending node or
// leader ids (empty = holds).

/// Every rim node of every cluster lies in some S_j.
inline std::vector<NodeId> rim_coverage_violations(const ConfiguredGraph& g, const PartitionState& s) {
  std::vector<char> covered(g.n(), 0);
  std::vector<NodeId> bad;
  for (const auto& c : s.clusters) {
    if (!c.radius) continue;
    for (int v : s_set(g, s, c.leader)) covered[v] = 1;
  }
  for (const auto& c : s.clusters) {
    if (!c.radius) continue;
    for (int v : rim(g, c.members)) {
      if (!covered[v]) bad.push_back(g.id(v));
    }
  }
  return bad;
}

/// Leaders whose cluster breaks w(S_j,o) <= eps * w(inner2(V_j),o).
inline std::vector<NodeId> growth_violations(const ConfiguredGraph& g, const PartitionState& s,
                                             const std::vector<std::int64_t>& o, const CanonicalOptDGP& p,
                                             Rational eps) {
  std::vector<NodeId> bad;
  for (const auto& c : s.clusters) {
    if (!c.radius) continue;
    auto ws = p.weight_of(g, s_set(g, s, c.leader), o);
    auto wi = p.weight_of(g, inner2(g, c.members), o);
    if (!detail::mul_le(eps.q, ws, eps.p, wi)) bad.push_back(c.leader);
  }
  return bad;
}

/// Leaders whose cluster breaks |C| <= delta |E|.
inline std::vector<NodeId> cgf_rule_violations(const PartitionState& s, Rational delta) {
  std::vector<NodeId> bad;
  for (const auto& c : s.clusters) {
    if (c.radius && !detail::mul_le(delta.q, c.rule_lhs, delta.p, c.rule_rhs)) bad.push_back(c.leader);
  }
  return bad;
}

/// Inter-cluster edges not covered by any F_j. With `literal` only the final
/// sec field counts; otherwise every affiliation does.
inline std::vector<std::pair<NodeId, NodeId>> uncovered_edges(const ConfiguredGraph& g, const PartitionState& s,
                                                              bool literal) {
  auto has = [&](int x, NodeId leader) {
    if (literal) return s.info[x].sec == leader;
    const auto& secs = s.info[x].secs;
    return std::find(secs.begin(), secs.end(), leader) != secs.end();
  };
  std::vector<std::pair<NodeId, NodeId>> bad;
  for (const auto& e : g.edges()) {
    auto cu = s.info[e.u].cluster, cv = s.info[e.v].cluster;
    if (cu == cv) continue;
    if (has(e.v, *cu) || has(e.u, *cv)) continue;
    bad.emplace_back(g.id(e.u), g.id(e.v));
  }
  return bad;
}

/// Structural checks shared by both partitions: clusters partition V and
/// every non-empty G(V_j) is connected.
inline std::vector<std::string> partition_shape_errors(const ConfiguredGraph& g, const PartitionState& s) {
  std::vector<std::string> errors;
  for (int v = 0; v < g.n(); ++v) {
    if (!s.info[v].cluster) errors.push_back("node " + std::to_string(g.id(v)) + " is unclustered");
  }
  for (const auto& c : s.clusters) {
    if (!c.radius) continue;
    if (s.cluster_members(g, c.leader) != c.members) errors.push_back("cluster " + std::to_string(c.leader) + " mismatch");
    if (induced_diameter(g, c.members) < 0) errors.push_back("cluster " + std::to_string(c.leader) + " disconnected");
  }
  return errors;
}

}  // namespace lrpls
