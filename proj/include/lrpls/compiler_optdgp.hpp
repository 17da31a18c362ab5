#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bits.hpp"
#include "comparison.hpp"
#include "graph.hpp"
#include "locality.hpp"
#include "partition.hpp"
#include "problem.hpp"
#include "rational.hpp"
#include "scheme.hpp"
#include "slocal.hpp"
#include "solvers.hpp"

namespace lrpls {

/// Label of the compiled OptDGP scheme. Fields after `rim` are present
/// depending on the mode, on `rim` and on whether `sec` is set.
struct OptLabel {
  std::int64_t o = 0;
  NodeId cluster = 0;
  std::optional<NodeId> sec;
  int rim = 0;  // 0 inner^2, 1 has a neighbour outside the cluster, 2 next to such a node
  ComparisonLabel grow;
  // own cluster sub-instance
  std::int64_t g = 0;
  ComparisonLabel opt;  // min only
  BitString base;
  // secondary cluster scope
  ComparisonLabel grow_sec;
  std::int64_t g_sec = 0;  // max only
  BitString base_sec;      // max only

  bool in_own_t() const { return rim == 0 || !sec; }
};

inline BitString encode_opt(const OptLabel& l, OptMode mode) {
  BitWriter w;
  w.put_uint(l.o);
  w.put_uint(static_cast<std::uint64_t>(l.cluster));
  w.put_opt(l.sec);
  w.put_uint(l.rim);
  write_comparison(w, l.grow);
  if (mode == OptMode::min) {
    w.put_uint(l.g);
    write_comparison(w, l.opt);
    w.put_bits(l.base);
    if (l.sec) write_comparison(w, l.grow_sec);
  } else {
    if (l.in_own_t()) {
      w.put_uint(l.g);
      w.put_bits(l.base);
    }
    if (l.sec) {
      write_comparison(w, l.grow_sec);
      w.put_uint(l.g_sec);
      w.put_bits(l.base_sec);
    }
  }
  return w.take();
}

inline OptLabel read_opt(BitReader& r, OptMode mode) {
  OptLabel l;
  l.o = static_cast<std::int64_t>(r.get_uint());
  l.cluster = static_cast<NodeId>(r.get_uint());
  l.sec = r.get_opt();
  auto rim = r.get_uint();
  if (rim > 2) rim = r.fail("rim distance out of range");
  l.rim = static_cast<int>(rim);
  l.grow = read_comparison(r);
  if (mode == OptMode::min) {
    l.g = static_cast<std::int64_t>(r.get_uint());
    l.opt = read_comparison(r);
    l.base = r.get_bits();
    if (l.sec) l.grow_sec = read_comparison(r);
  } else {
    if (l.in_own_t()) {
      l.g = static_cast<std::int64_t>(r.get_uint());
      l.base = r.get_bits();
    }
    if (l.sec) {
      l.grow_sec = read_comparison(r);
      l.g_sec = static_cast<std::int64_t>(r.get_uint());
      l.base_sec = r.get_bits();
    }
  }
  return l;
}

inline OptLabel decode_opt(const BitString& b, OptMode mode) {
  return decode_with(b, [mode](BitReader& r) { return read_opt(r, mode); });
}

inline std::optional<OptLabel> try_decode_opt(const BitString& b, OptMode mode) {
  return try_decode_with(b, [mode](BitReader& r) { return read_opt(r, mode); });
}

struct OptCompileOptions {
  Rational epsilon{1, 1};
  Order order;
};

/// Diagnostics of the last honest prover run.
struct OptProverTrace {
  PartitionState partition;
  std::vector<OptLabel> labels;
};

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("label arithmetic overflow");
  return out;
}

inline std::vector<int> rim_distances(const ConfiguredGraph& g, const PartitionState& st, const NodeSet& members) {
  std::vector<int> rd(g.n(), 0);
  NodeId c = *st.info[members.front()].cluster;
  for (int x : members) {
    for (const auto& a : g.neighbors(x)) {
      if (st.info[a.nbr].cluster != c) rd[x] = 1;
    }
  }
  for (int x : members) {
    if (rd[x] == 1) continue;
    for (const auto& a : g.neighbors(x)) {
      if (rd[a.nbr] == 1) rd[x] = 2;
    }
  }
  return rd;
}

/// Runs the base prover on a stand-alone sub-instance with outputs `out`.
inline std::vector<BitString> base_labels(const SchemePair& base, const ConfiguredGraph& sub) {
  GraphAccess plain(sub);
  auto labels = base.prover(plain);
  if (static_cast<int>(labels.size()) != sub.n()) throw std::logic_error("base prover returned wrong label count");
  return labels;
}

}  // namespace detail

/// Compiles a base APLS for `problem` into a locally restricted one.
inline SchemePair compile_optdgp(const CanonicalOptDGP& problem, const SchemePair& base, OptCompileOptions opt,
                                 std::shared_ptr<OptProverTrace> trace = nullptr) {
  SchemePair s;
  s.name = std::string(problem.mode == OptMode::min ? "compiled-min:" : "compiled-max:") + base.name;
  s.in_universe = base.in_universe;
  Rational eps = opt.epsilon;
  s.alpha = [base, eps](const ConfiguredGraph& g) { return base.alpha(g) * (1.0 + eps.value()); };
  OptMode mode = problem.mode;

  s.prover = [problem, base, opt, mode, trace](GraphAccess& access) {
    const auto& g = access.graph_unchecked();
    int n = access.n();
    auto value = [&](int x) {
      const auto& r = g.node(x);
      if (!r.output) throw std::invalid_argument("node " + std::to_string(r.id) + " has no output");
      return problem.weight(r) * *r.output;
    };
    auto st = part_opt(access, value, opt.epsilon, mode, opt.order.permutation(n));
    std::vector<OptLabel> labels(n);
    std::vector<std::vector<int>> sec_members(n);
    for (int v = 0; v < n; ++v) {
      if (st.info[v].sec) sec_members[g.index_of(*st.info[v].sec)].push_back(v);
    }
    auto p = opt.epsilon.p, q = opt.epsilon.q;
    for (const auto& rec : st.clusters) {
      if (!rec.radius) continue;
      int leader = g.index_of(rec.leader);
      auto scope = access.scope(leader);
      const auto& members = rec.members;
      NodeSet ext = members;
      ext.insert(ext.end(), sec_members[leader].begin(), sec_members[leader].end());
      std::sort(ext.begin(), ext.end());
      for (int x : ext) {
        access.node(x);
        for (const auto& a : access.neighbors(x)) access.touch(a.nbr);
      }
      auto rd = detail::rim_distances(g, st, members);
      auto in_v = membership(g, members);
      std::vector<std::int64_t> o(n, 0);
      for (int x : ext) o[x] = *g.node(x).output;
      for (int x : members) {
        auto& l = labels[x];
        l.o = o[x];
        l.cluster = rec.leader;
        l.sec = st.info[x].sec;
        l.rim = rd[x];
      }
      auto w = [&](int x) { return problem.weight(g.node(x)); };
      if (mode == OptMode::min) {
        // sub-instance G(V_j) with the outer rim tautological; its optimum is w_min(V_j)
        NodeSet taut;
        for (std::size_t k = 0; k < members.size(); ++k) {
          if (rd[members[k]] == 1) taut.push_back(static_cast<int>(k));
        }
        auto sub = tautologize(induced_subgraph(g, members), taut);
        auto best = exact_opt(problem, sub);
        auto sub_labels = detail::base_labels(base, sub.with_outputs(best.output));
        std::vector<std::int64_t> gj(n, 0);
        for (std::size_t k = 0; k < members.size(); ++k) {
          gj[members[k]] = best.output[k];
          labels[members[k]].g = best.output[k];
          labels[members[k]].base = sub_labels[k];
        }
        auto opt_cmp = build_comparison(
            g, members, leader, [&](int x) { return detail::checked_mul(w(x), gj[x]); },
            [&](int x) { return rd[x] == 0 ? detail::checked_mul(w(x), o[x]) : 0; });
        for (int x : members) labels[x].opt = opt_cmp[x];
        auto grow = build_comparison(
            g, ext, leader,
            [&](int x) { return in_v[x] && rd[x] == 0 ? detail::checked_mul(p, detail::checked_mul(w(x), o[x])) : 0; },
            [&](int x) {
              bool counted = in_v[x] ? (rd[x] != 0 && !st.info[x].sec) : true;
              return counted ? detail::checked_mul(q, detail::checked_mul(w(x), o[x])) : 0;
            });
        for (int x : ext) (in_v[x] ? labels[x].grow : labels[x].grow_sec) = grow[x];
      } else {
        // T_j = inner2(V_j) plus S_j; the sub-instance is G(T_j)
        std::vector<char> in_t(n, 0);
        for (int x : members) in_t[x] = rd[x] == 0 || !st.info[x].sec;
        for (int x : sec_members[leader]) in_t[x] = 1;
        NodeSet tset;
        for (int x : ext) {
          if (in_t[x]) tset.push_back(x);
        }
        auto sub = induced_subgraph(g, tset);
        auto best = exact_opt(problem, sub);
        auto sub_labels = detail::base_labels(base, sub.with_outputs(best.output));
        std::vector<std::int64_t> gj(n, 0);
        for (std::size_t k = 0; k < tset.size(); ++k) {
          int x = tset[k];
          gj[x] = best.output[k];
          if (in_v[x]) {
            labels[x].g = best.output[k];
            labels[x].base = sub_labels[k];
          } else {
            labels[x].g_sec = best.output[k];
            labels[x].base_sec = sub_labels[k];
          }
        }
        auto grow = build_comparison(
            g, ext, leader,
            [&](int x) { return in_v[x] ? detail::checked_mul(q + p, detail::checked_mul(w(x), o[x])) : 0; },
            [&](int x) { return in_t[x] ? detail::checked_mul(q, detail::checked_mul(w(x), gj[x])) : 0; });
        for (int x : ext) (in_v[x] ? labels[x].grow : labels[x].grow_sec) = grow[x];
      }
    }
    std::vector<BitString> out(n);
    for (int v = 0; v < n; ++v) out[v] = encode_opt(labels[v], mode);
    if (trace) {
      trace->partition = std::move(st);
      trace->labels = std::move(labels);
    }
    return out;
  };

  s.verifier = [problem, base, eps, mode](const LocalConfig& c, const BitString& mine, NeighborLabels nb) {
    auto decode = [mode](const BitString& b) { return try_decode_opt(b, mode); };
    OptLabel own;
    std::vector<OptLabel> nbrs;
    if (!detail::try_decode_all(mine, nb, decode, own, nbrs)) return false;
    auto p = eps.p, q = eps.q;
    std::int64_t w = problem.weight(c);

    // feasibility
    if (!c.output || own.o != *c.output) return false;
    std::vector<std::int64_t> xs;
    for (const auto& l : nbrs) xs.push_back(l.o);
    if (!problem.predicate(c, own.o, xs)) return false;

    // rim distances are forced by the neighbours' cluster fields
    bool foreign = false, next_to_rim = false;
    for (const auto& l : nbrs) {
      foreign = foreign || l.cluster != own.cluster;
      next_to_rim = next_to_rim || l.rim == 1;
    }
    int want = foreign ? 1 : (next_to_rim ? 2 : 0);
    if (own.rim != want) return false;
    if (own.sec && *own.sec == own.cluster) return false;

    auto mul = detail::checked_mul;
    // the comparison tree for scope `sid`, with each neighbour's label for that scope
    auto scope_cmp = [&](NodeId sid, const ComparisonLabel& mine_cmp, std::int64_t a, std::int64_t b) {
      std::vector<ScopeNeighbor> scope;
      for (std::size_t k = 0; k < nbrs.size(); ++k) {
        const auto& l = nbrs[k];
        if (l.cluster == sid) scope.push_back({c.ports[k].neighbor, &l.grow});
        else if (l.sec == sid) scope.push_back({c.ports[k].neighbor, &l.grow_sec});
      }
      return verify_comparison(c.id, sid, mine_cmp, scope, a, b, CompareMode::at_least);
    };
    // base verifier on a sub-instance given by a port filter
    auto run_base = [&](const std::function<const BitString*(std::size_t)>& pick, const BitString& mine_base,
                        std::int64_t out, bool taut) {
      LocalConfig sub = c;
      sub.ports.clear();
      sub.output = out;
      if (taut) sub.prd = kTautology;
      std::vector<BitString> sub_nbrs;
      for (std::size_t k = 0; k < nbrs.size(); ++k) {
        if (const auto* b = pick(k)) {
          sub.ports.push_back(c.ports[k]);
          sub_nbrs.push_back(*b);
        }
      }
      return base.verifier(sub, mine_base, sub_nbrs);
    };

    if (mode == OptMode::min) {
      std::int64_t wo = mul(w, own.o);
      std::int64_t a = own.rim == 0 ? mul(p, wo) : 0;
      std::int64_t b = own.rim != 0 && !own.sec ? mul(q, wo) : 0;
      if (!scope_cmp(own.cluster, own.grow, a, b)) return false;
      if (own.sec && !scope_cmp(*own.sec, own.grow_sec, 0, mul(q, wo))) return false;
      // optimality: w(V_j, g_j) >= w(inner2(V_j), o), then the base scheme on G(V_j)
      std::vector<ScopeNeighbor> same;
      for (std::size_t k = 0; k < nbrs.size(); ++k) {
        if (nbrs[k].cluster == own.cluster) same.push_back({c.ports[k].neighbor, &nbrs[k].opt});
      }
      if (!verify_comparison(c.id, own.cluster, own.opt, same, mul(w, own.g), own.rim == 0 ? wo : 0)) return false;
      return run_base(
          [&](std::size_t k) { return nbrs[k].cluster == own.cluster ? &nbrs[k].base : nullptr; }, own.base, own.g,
          own.rim == 1);
    }

    // max: (1+eps) w(V_j, o) >= w(T_j, g_j) and the base scheme on G(T_j)
    std::int64_t a = mul(q + p, mul(w, own.o));
    std::int64_t b = own.in_own_t() ? mul(q, mul(w, own.g)) : 0;
    if (!scope_cmp(own.cluster, own.grow, a, b)) return false;
    auto in_t = [](const OptLabel& l, NodeId sid) -> const OptLabel* {
      if (l.cluster == sid && l.in_own_t()) return &l;
      if (l.sec == sid) return &l;
      return nullptr;
    };
    auto base_for = [](const OptLabel& l, NodeId sid) -> const BitString* {
      return l.cluster == sid ? &l.base : &l.base_sec;
    };
    if (own.in_own_t()) {
      bool ok = run_base(
          [&](std::size_t k) { return in_t(nbrs[k], own.cluster) ? base_for(nbrs[k], own.cluster) : nullptr; }, own.base,
          own.g, false);
      if (!ok) return false;
    }
    if (own.sec) {
      NodeId sid = *own.sec;
      if (!scope_cmp(sid, own.grow_sec, 0, mul(q, mul(w, own.g_sec)))) return false;
      bool ok = run_base([&](std::size_t k) { return in_t(nbrs[k], sid) ? base_for(nbrs[k], sid) : nullptr; },
                         own.base_sec, own.g_sec, false);
      if (!ok) return false;
    }
    return true;
  };
  return s;
}

}  // namespace lrpls
