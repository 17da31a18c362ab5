#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "bits.hpp"
#include "families.hpp"
#include "graph.hpp"
#include "problem.hpp"
#include "rational.hpp"
#include "scheme.hpp"

namespace lrpls {

// Exhaustive ground truth. Nothing here calls into solvers.hpp.

struct BruteResult {
  std::int64_t value = 0;
  std::vector<std::int64_t> output;
  bool feasible = false;
};

namespace detail {

/// Visits every vector in {0..k}^n in lexicographic order over ascending ids.
inline void each_assignment(int n, int k, const std::function<void(const std::vector<std::int64_t>&)>& fn) {
  std::vector<std::int64_t> x(n, 0);
  while (true) {
    fn(x);
    int i = n - 1;
    while (i >= 0 && x[i] == k) x[i--] = 0;
    if (i < 0) return;
    ++x[i];
  }
}

inline bool predicate_at(const CanonicalOptDGP& p, const ConfiguredGraph& g, int v, const std::vector<std::int64_t>& x) {
  std::vector<std::int64_t> nb;
  for (const auto& a : g.neighbors(v)) nb.push_back(x[a.nbr]);
  return p.predicate(local_config(g, v), x[v], nb);
}

}  // namespace detail

inline constexpr int kBruteCap = 14;

/// OPT by enumeration; the witness is the lexicographically first optimum.
inline BruteResult brute_opt(const CanonicalOptDGP& p, const ConfiguredGraph& g) {
  if (g.n() > kBruteCap) throw std::invalid_argument("brute_opt is capped at n <= " + std::to_string(kBruteCap));
  BruteResult best;
  detail::each_assignment(g.n(), p.k, [&](const std::vector<std::int64_t>& x) {
    for (int v = 0; v < g.n(); ++v) {
      if (!detail::predicate_at(p, g, v, x)) return;
    }
    std::int64_t f = 0;
    for (int v = 0; v < g.n(); ++v) f += p.weight(g.node(v)) * x[v];
    bool better = !best.feasible || (p.mode == OptMode::min ? f < best.value : f > best.value);
    if (better) best = {f, x, true};
  });
  return best;
}

/// w_min(U): least w(U, x) over x on U whose predicates hold on inner(U).
inline BruteResult brute_wmin(const CanonicalOptDGP& p, const ConfiguredGraph& g, const NodeSet& u) {
  auto checked = inner(g, u);
  BruteResult best;
  std::vector<std::int64_t> full(g.n(), 0);
  detail::each_assignment(static_cast<int>(u.size()), p.k, [&](const std::vector<std::int64_t>& x) {
    for (std::size_t i = 0; i < u.size(); ++i) full[u[i]] = x[i];
    for (int v : checked) {
      if (!detail::predicate_at(p, g, v, full)) return;
    }
    std::int64_t f = 0;
    for (std::size_t i = 0; i < u.size(); ++i) f += p.weight(g.node(u[i])) * x[i];
    if (!best.feasible || f < best.value) best = {f, x, true};
  });
  return best;
}

/// w_max(U): largest w(U, x) over x on U and N2(U), x = 0 on N2(U), with
/// predicates holding on inner(U + N2(U)).
inline BruteResult brute_wmax(const CanonicalOptDGP& p, const ConfiguredGraph& g, const NodeSet& u) {
  auto ring = n2(g, u);
  NodeSet closure;
  std::set_union(u.begin(), u.end(), ring.begin(), ring.end(), std::back_inserter(closure));
  auto checked = inner(g, closure);
  BruteResult best;
  std::vector<std::int64_t> full(g.n(), 0);
  detail::each_assignment(static_cast<int>(u.size()), p.k, [&](const std::vector<std::int64_t>& x) {
    for (std::size_t i = 0; i < u.size(); ++i) full[u[i]] = x[i];
    for (int v : checked) {
      if (!detail::predicate_at(p, g, v, full)) return;
    }
    std::int64_t f = 0;
    for (std::size_t i = 0; i < u.size(); ++i) f += p.weight(g.node(u[i])) * x[i];
    if (!best.feasible || f > best.value) best = {f, x, true};
  });
  return best;
}

/// Whether the instance's outputs lie outside the alpha-gap yes-family,
/// i.e. infeasible, or f > alpha OPT (min), or f < OPT / alpha (max).
inline bool outside_gap(const CanonicalOptDGP& p, const ConfiguredGraph& g, double alpha) {
  auto o = g.outputs();
  if (!p.feasible(g, o)) return true;
  auto best = brute_opt(p, g);
  double f = static_cast<double>(p.objective(g, o));
  double opt = static_cast<double>(best.value);
  return p.mode == OptMode::min ? f > alpha * opt * (1 + 1e-12) : f * alpha * (1 + 1e-12) < opt;
}

/// Whether an accepted instance honours the approximation guarantee.
inline bool within_ratio(const CanonicalOptDGP& p, const ConfiguredGraph& g, double alpha) {
  return !outside_gap(p, g, alpha);
}

enum class Closeness { member, close, far };

inline const char* to_string(Closeness c) {
  switch (c) {
    case Closeness::member: return "member";
    case Closeness::close: return "close";
    case Closeness::far: return "far";
  }
  return "?";
}

/// Edge-removal distance to the family against delta * m.
inline Closeness delta_far(const CgfFamily& family, const ConfiguredGraph& g, Rational delta) {
  if (!family.distance) throw std::invalid_argument("family '" + family.name + "' has no exact distance oracle");
  auto d = family.distance(g);
  if (d == 0) return Closeness::member;
  // far iff d > delta m
  return static_cast<__int128>(d) * delta.q > static_cast<__int128>(delta.p) * g.m() ? Closeness::far : Closeness::close;
}

// Adversarial label search.

struct AdversaryOptions {
  std::uint64_t budget = 100000;
  std::uint64_t seed = 1;
  /// Related yes-instances (same node set) whose honest labels are transplanted.
  std::vector<ConfiguredGraph> donors;
  bool exhaustive = true;
  int exhaustive_bits = 12;
  int exhaustive_max_n = 4;
};

struct AdversaryResult {
  std::optional<std::vector<BitString>> accepting;
  std::uint64_t candidates = 0;
  std::string strategy;  // which strategy produced the accepting labeling
};

namespace detail {

/// Tracks per-node verdicts so single-node edits re-verify only N[v].
class VerdictCache {
 public:
  VerdictCache(const SchemePair& pair, const ConfiguredGraph& g)
      : pair_(pair), g_(g), ok_(g.n(), 0), nb_(g.n()), slot_(g.n()) {
    for (int v = 0; v < g.n(); ++v) {
      configs_.push_back(local_config(g, v));
      nb_[v].resize(g.degree(v));
      for (std::size_t k = 0; k < g.neighbors(v).size(); ++k) {
        slot_[g.neighbors(v)[k].nbr].push_back({v, static_cast<int>(k)});
      }
    }
  }

  int reset(const std::vector<BitString>& labels) {
    labels_ = labels;
    for (int v = 0; v < g_.n(); ++v) {
      for (auto [u, k] : slot_[v]) nb_[u][k] = labels_[v];
    }
    bad_ = 0;
    for (int v = 0; v < g_.n(); ++v) {
      ok_[v] = check(v);
      bad_ += !ok_[v];
    }
    return bad_;
  }

  /// Replaces one label and returns the new number of rejecting nodes. With
  /// `quick`, stops and returns -1 as soon as v itself rejects; undo() then
  /// restores the previous state.
  int set(int v, BitString label, bool quick = false) {
    saved_label_ = std::move(labels_[v]);
    saved_ok_.clear();
    saved_bad_ = bad_;
    labels_[v] = std::move(label);
    for (auto [u, k] : slot_[v]) nb_[u][k] = labels_[v];
    last_ = v;
    refresh(v);
    if (quick && !ok_[v]) return -1;
    for (const auto& a : g_.neighbors(v)) refresh(a.nbr);
    return bad_;
  }

  /// Reverts the last set() without re-running the verifier.
  void undo() {
    int v = last_;
    labels_[v] = std::move(saved_label_);
    for (auto [u, k] : slot_[v]) nb_[u][k] = labels_[v];
    for (auto [x, was] : saved_ok_) ok_[x] = was;
    bad_ = saved_bad_;
  }

  int bad() const { return bad_; }
  const std::vector<BitString>& labels() const { return labels_; }

 private:
  bool check(int v) {
    try {
      return pair_.verifier(configs_[v], labels_[v], nb_[v]);
    } catch (...) {
      return false;
    }
  }

  void refresh(int v) {
    saved_ok_.emplace_back(v, ok_[v]);
    bool now = check(v);
    bad_ += static_cast<int>(ok_[v]) - static_cast<int>(now);
    ok_[v] = now;
  }

  const SchemePair& pair_;
  const ConfiguredGraph& g_;
  std::vector<LocalConfig> configs_;
  std::vector<BitString> labels_;
  std::vector<char> ok_;
  std::vector<std::vector<BitString>> nb_;
  std::vector<std::vector<std::pair<int, int>>> slot_;  // (node, position) holding a copy of this label
  BitString saved_label_;
  std::vector<std::pair<int, char>> saved_ok_;
  int bad_ = 0;
  int saved_bad_ = 0;
  int last_ = 0;
};

inline BitString uint_field(std::uint64_t x) {
  BitWriter w;
  w.put_uint(x);
  return w.take();
}

inline std::optional<std::uint64_t> field_value(const BitString& b, const FieldSpan& f) {
  std::size_t len = f.end - f.payload;
  if (len > 63) return std::nullopt;
  std::uint64_t x = 0;
  for (std::size_t i = f.payload; i < f.end; ++i) x = (x << 1) | (b[i] ? 1u : 0u);
  return x;
}

inline BitString splice(const BitString& b, std::size_t from, std::size_t to, const BitString& mid) {
  BitString out = b.slice(0, from);
  out.append(mid);
  out.append(b.slice(to, b.size() - to));
  return out;
}

inline std::vector<std::vector<BitString>> perturbed_honest(const SchemePair& pair, const ConfiguredGraph& g,
                                                            const std::vector<ConfiguredGraph>& donors,
                                                            std::mt19937_64& rng) {
  std::vector<std::vector<BitString>> out;
  auto add = [&](const ConfiguredGraph& h) {
    if (h.n() != g.n()) return;
    try {
      if (pair.in_universe && !pair.in_universe(h)) return;
      out.push_back(run_prover(pair, h).labels);
    } catch (...) {
    }
  };
  add(g);
  for (const auto& d : donors) add(d);
  // generic perturbations of the instance itself
  for (int round = 0; round < 6; ++round) {
    if (g.m() > 0) {
      auto specs = g.edge_specs();
      specs.erase(specs.begin() + static_cast<long>(rng() % specs.size()));
      std::vector<NodeRecord> nodes(g.nodes().begin(), g.nodes().end());
      try {
        add(ConfiguredGraph(g.directed(), nodes, specs));
      } catch (...) {
      }
    }
    if (g.has_outputs()) {
      auto o = g.outputs();
      int v = static_cast<int>(rng() % g.n());
      o[v] = o[v] == 0 ? 1 : 0;
      add(g.with_outputs(o));
    }
  }
  return out;
}

/// One random edit of a single label.
inline BitString mutate_label(const BitString& own, const std::vector<const BitString*>& nearby, std::mt19937_64& rng) {
  auto pick = [&](std::uint64_t n) { return n == 0 ? 0 : rng() % n; };
  // descend into nested fields some of the time
  std::size_t lo = 0, hi = own.size();
  std::vector<FieldSpan> fields = split_fields(own);
  for (int depth = 0; depth < 3 && !fields.empty() && rng() % 3 == 0; ++depth) {
    const auto& f = fields[pick(fields.size())];
    auto inner_fields = split_fields(own.slice(f.payload, f.end - f.payload));
    if (inner_fields.empty()) break;
    std::size_t shift = f.payload;
    lo = f.payload;
    hi = f.end;
    fields.clear();
    for (auto s : inner_fields) fields.push_back({s.begin + shift, s.payload + shift, s.end + shift});
  }
  switch (rng() % 8) {
    case 0: {  // flip a bit
      if (own.empty()) return uint_field(rng() % 4);
      BitString out = own;
      out.flip(lo + pick(hi - lo == 0 ? own.size() : hi - lo));
      return out;
    }
    case 1: {  // copy a label from nearby
      if (nearby.empty()) break;
      return *nearby[pick(nearby.size())];
    }
    case 2: {  // copy the matching field from a nearby label
      if (nearby.empty() || fields.empty()) break;
      std::size_t k = pick(fields.size());
      const auto& other = *nearby[pick(nearby.size())];
      auto theirs = split_fields(other);
      if (k >= theirs.size() || lo != 0) break;
      return splice(own, fields[k].begin, fields[k].end,
                    other.slice(theirs[k].begin, theirs[k].end - theirs[k].begin));
    }
    case 3: {  // drop or duplicate a field
      if (fields.empty()) break;
      const auto& f = fields[pick(fields.size())];
      if (rng() % 2) return splice(own, f.begin, f.end, BitString{});
      return splice(own, f.end, f.end, own.slice(f.begin, f.end - f.begin));
    }
    case 4: {  // append a small field
      BitString out = own;
      out.append(uint_field(rng() % 4));
      return out;
    }
    default: {  // nudge an integer field
      if (fields.empty()) break;
      const auto& f = fields[pick(fields.size())];
      auto x = field_value(own, f);
      if (!x) break;
      std::uint64_t y = *x;
      switch (rng() % 6) {
        case 0: y = y + 1; break;
        case 1: y = y > 0 ? y - 1 : 0; break;
        case 2: y = 0; break;
        case 3: y = y * 2 + 1; break;
        case 4: y = y / 2; break;
        default: y = rng() % (2 * y + 8); break;
      }
      return splice(own, f.begin, f.end, uint_field(y));
    }
  }
  BitString out = own;
  if (!out.empty()) out.flip(pick(out.size()));
  return out;
}

/// All labelings with at most `bits` bits in total, by total length.
inline std::optional<std::vector<BitString>> exhaustive_search(const SchemePair& pair, const ConfiguredGraph& g,
                                                               int bits, std::uint64_t& counter) {
  int n = g.n();
  std::vector<int> len(n, 0);
  std::vector<BitString> labels(n);
  std::optional<std::vector<BitString>> found;
  std::function<bool(int, int)> split = [&](int v, int left) -> bool {
    if (v == n - 1) {
      len[v] = left;
      int total = 0;
      for (int l : len) total += l;
      for (std::uint64_t mask = 0; mask < (1ull << total); ++mask) {
        int pos = 0;
        for (int x = 0; x < n; ++x) {
          std::string t;
          for (int i = 0; i < len[x]; ++i, ++pos) t += ((mask >> pos) & 1) ? '1' : '0';
          labels[x] = BitString::from_text(t);
        }
        ++counter;
        if (accepts(pair, g, labels)) {
          found = labels;
          return true;
        }
      }
      return false;
    }
    for (int l = 0; l <= left; ++l) {
      len[v] = l;
      if (split(v + 1, left - l)) return true;
    }
    return false;
  };
  if (n == 0) return std::nullopt;
  for (int total = 0; total <= bits; ++total) {
    if (split(0, total)) break;
  }
  return found;
}

}  // namespace detail

/// Searches for a labeling that every node accepts. Deterministic in the seed.
inline AdversaryResult adversary_search(const SchemePair& pair, const ConfiguredGraph& g, AdversaryOptions opt = {}) {
  AdversaryResult res;
  std::mt19937_64 rng(opt.seed);
  int n = g.n();
  if (n == 0) {
    res.accepting = std::vector<BitString>{};
    res.strategy = "empty";
    return res;
  }
  detail::VerdictCache cache(pair, g);
  auto done = [&](const char* how) {
    res.accepting = cache.labels();
    res.strategy = how;
    return res;
  };

  if (opt.exhaustive && n <= opt.exhaustive_max_n) {
    std::uint64_t counter = 0;
    auto hit = detail::exhaustive_search(pair, g, opt.exhaustive_bits, counter);
    res.candidates += counter;
    if (hit) {
      res.accepting = hit;
      res.strategy = "exhaustive";
      return res;
    }
  }

  std::uint64_t spent = 0;
  auto seeds = detail::perturbed_honest(pair, g, opt.donors, rng);
  for (const auto& s : seeds) {
    if (spent >= opt.budget) break;
    ++spent;
    if (cache.reset(s) == 0) {
      res.candidates += spent;
      return done("transplant");
    }
  }
  // widths of honest labels guide the random strategy
  std::vector<std::size_t> widths;
  for (const auto& s : seeds) {
    for (const auto& l : s) widths.push_back(l.size());
  }
  if (widths.empty()) widths = {4, 8, 16, 32};

  auto random_label = [&](std::size_t width) {
    BitString b;
    for (std::size_t i = 0; i < width; ++i) b.push_back(rng() & 1);
    return b;
  };

  // field-wise mutation with greedy acceptance, restarted from each seed
  std::uint64_t mutate_budget = opt.budget - std::min(opt.budget, spent);
  std::uint64_t random_budget = mutate_budget / 4;
  mutate_budget -= random_budget;
  std::size_t restart = 0;
  std::uint64_t per_restart = std::max<std::uint64_t>(2000, mutate_budget / std::max<std::size_t>(1, seeds.size() + 1));
  while (mutate_budget > 0) {
    if (!seeds.empty() && restart < seeds.size()) {
      cache.reset(seeds[restart]);
    } else {
      std::vector<BitString> start(n);
      for (auto& l : start) l = random_label(widths[rng() % widths.size()]);
      cache.reset(start);
    }
    ++restart;
    std::uint64_t local = std::min(per_restart, mutate_budget);
    mutate_budget -= local;
    spent += local;
    for (std::uint64_t step = 0; step < local; ++step) {
      int bad_before = cache.bad();
      // prefer nodes that currently reject, or their neighbours
      int v = static_cast<int>(rng() % n);
      std::vector<const BitString*> nearby;
      for (const auto& a : g.neighbors(v)) nearby.push_back(&cache.labels()[a.nbr]);
      if (rng() % 4 == 0) nearby.push_back(&cache.labels()[rng() % n]);
      auto next = detail::mutate_label(cache.labels()[v], nearby, rng);
      int bad_after = cache.set(v, std::move(next), rng() % 8 != 0);
      if (bad_after < 0) {
        cache.undo();
        continue;
      }
      if (bad_after == 0) {
        res.candidates += spent;
        return done("mutation");
      }
      if (bad_after > bad_before && rng() % 8 != 0) cache.undo();
    }
  }

  // random labels at honest widths
  for (std::uint64_t k = 0; k < random_budget; ++k) {
    std::vector<BitString> cand(n);
    for (auto& l : cand) l = random_label(widths[rng() % widths.size()]);
    ++spent;
    if (!accepts(pair, g, cand)) continue;
    cache.reset(cand);
    res.candidates += spent;
    return done("random");
  }
  res.candidates += spent;
  return res;
}

}  // namespace lrpls
