#pragma once

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "bits.hpp"
#include "comparison.hpp"
#include "graph.hpp"
#include "locality.hpp"
#include "partition.hpp"
#include "rational.hpp"
#include "scheme.hpp"
#include "slocal.hpp"

namespace lrpls {

struct CgfLabel {
  NodeId cluster = 0;
  std::vector<NodeId> secs;
  ComparisonLabel cmp;
  BitString base;
};

inline BitString encode_cgf(const CgfLabel& l) {
  BitWriter w;
  w.put_uint(static_cast<std::uint64_t>(l.cluster));
  w.put_uint(l.secs.size());
  for (auto s : l.secs) w.put_uint(static_cast<std::uint64_t>(s));
  write_comparison(w, l.cmp);
  w.put_bits(l.base);
  return w.take();
}

inline CgfLabel read_cgf(BitReader& r, std::size_t width, bool single) {
  CgfLabel l;
  l.cluster = static_cast<NodeId>(r.get_uint());
  auto k = r.get_uint();
  if (k > width || (single && k > 1)) k = r.fail("too many affiliations");
  for (std::uint64_t i = 0; i < k; ++i) l.secs.push_back(static_cast<NodeId>(r.get_uint()));
  l.cmp = read_comparison(r);
  l.base = r.get_bits();
  return l;
}

inline CgfLabel decode_cgf(const BitString& b, bool single) {
  return decode_with(b, [&](BitReader& r) { return read_cgf(r, b.size(), single); });
}

inline std::optional<CgfLabel> try_decode_cgf(const BitString& b, bool single) {
  return try_decode_with(b, [&](BitReader& r) { return read_cgf(r, b.size(), single); });
}

struct CgfCompileOptions {
  Rational delta{1, 2};
  Order order;
  CrossCount count = CrossCount::residual;
  bool literal = false;  // keep only the last affiliation per node
};

struct CgfProverTrace {
  PartitionState partition;
};

namespace detail {

inline bool affiliated(const CgfLabel& l, NodeId c) { return std::find(l.secs.begin(), l.secs.end(), c) != l.secs.end(); }

}  // namespace detail

/// Compiles a PLS for a CGF family into a delta-TPLS with bounded locality.
inline SchemePair compile_cgf(const SchemePair& base, CgfCompileOptions opt,
                              std::shared_ptr<CgfProverTrace> trace = nullptr) {
  SchemePair s;
  s.name = "compiled-tpls:" + base.name;
  s.in_universe = base.in_universe;
  s.alpha = [](const ConfiguredGraph&) { return 1.0; };

  s.prover = [base, opt, trace](GraphAccess& access) {
    const auto& g = access.graph_unchecked();
    int n = access.n();
    auto st = part_cgf(access, opt.delta, opt.order.permutation(n), opt.count);
    if (opt.literal) {
      auto missing = uncovered_edges(g, st, true);
      if (!missing.empty()) {
        throw std::runtime_error("single affiliation leaves edge " + std::to_string(missing.front().first) + "-" +
                                 std::to_string(missing.front().second) + " uncovered");
      }
    }
    std::vector<CgfLabel> labels(n);
    for (int v = 0; v < n; ++v) {
      labels[v].cluster = *st.info[v].cluster;
      if (opt.literal) {
        if (st.info[v].sec) labels[v].secs = {*st.info[v].sec};
      } else {
        labels[v].secs = st.info[v].secs;
      }
    }
    auto p = opt.delta.p, q = opt.delta.q;
    for (const auto& rec : st.clusters) {
      if (!rec.radius) continue;
      int leader = g.index_of(rec.leader);
      auto scope = access.scope(leader);
      for (int x : rec.members) {
        access.node(x);
        for (const auto& a : access.neighbors(x)) access.touch(a.nbr);
      }
      auto sub = induced_subgraph(g, rec.members);
      GraphAccess plain(sub);
      auto sub_labels = base.prover(plain);
      for (std::size_t k = 0; k < rec.members.size(); ++k) labels[rec.members[k]].base = sub_labels[k];
      auto inside = [&](int x) {
        std::int64_t k = 0;
        for (const auto& a : g.neighbors(x)) k += labels[a.nbr].cluster == rec.leader && a.nbr > x;
        return p * k;
      };
      auto charged = [&](int x) {
        std::int64_t k = 0;
        for (const auto& a : g.neighbors(x)) {
          k += labels[a.nbr].cluster != rec.leader && detail::affiliated(labels[a.nbr], rec.leader);
        }
        return q * k;
      };
      auto cmp = build_comparison(g, rec.members, leader, inside, charged);
      for (int x : rec.members) labels[x].cmp = cmp[x];
    }
    std::vector<BitString> out(n);
    for (int v = 0; v < n; ++v) out[v] = encode_cgf(labels[v]);
    if (trace) trace->partition = std::move(st);
    return out;
  };

  s.verifier = [base, opt](const LocalConfig& c, const BitString& mine, NeighborLabels nb) {
    bool single = opt.literal;
    auto decode = [single](const BitString& b) { return try_decode_cgf(b, single); };
    CgfLabel own;
    std::vector<CgfLabel> nbrs;
    if (!detail::try_decode_all(mine, nb, decode, own, nbrs)) return false;
    std::int64_t inside = 0, charged = 0;
    std::vector<ScopeNeighbor> same;
    LocalConfig sub = c;
    sub.ports.clear();
    std::vector<BitString> sub_nbrs;
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      const auto& l = nbrs[k];
      NodeId u = c.ports[k].neighbor;
      if (l.cluster == own.cluster) {
        inside += u > c.id;
        same.push_back({u, &l.cmp});
        sub.ports.push_back(c.ports[k]);
        sub_nbrs.push_back(l.base);
        continue;
      }
      // every crossing edge is charged to one of its two clusters
      bool mine_side = detail::affiliated(l, own.cluster);
      if (!mine_side && !detail::affiliated(own, l.cluster)) return false;
      charged += mine_side;
    }
    if (!verify_comparison(c.id, own.cluster, own.cmp, same, opt.delta.p * inside, opt.delta.q * charged)) return false;
    return base.verifier(sub, own.base, sub_nbrs);
  };
  return s;
}

}  // namespace lrpls
