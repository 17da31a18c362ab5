#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "base_schemes.hpp"
#include "compiler_cgf.hpp"
#include "compiler_optdgp.hpp"
#include "families.hpp"
#include "generators.hpp"
#include "problem.hpp"
#include "rational.hpp"
#include "scheme.hpp"
#include "slocal.hpp"

namespace lrpls {

struct SchemeParams {
  Rational epsilon{1, 1};
  Rational delta{1, 4};
  Order order;
  CrossCount count = CrossCount::residual;
  bool literal_sec = false;
};

/// A scheme plus what it certifies: an optimisation gap or a family.
struct SchemeEntry {
  SchemePair pair;
  std::optional<CanonicalOptDGP> problem;
  std::optional<CgfFamily> family;
  bool compiled = false;
  bool testing = false;  // accepts instances that are merely close to the family

  /// The factor an accepted instance must respect (1 for exact schemes).
  double gap(const ConfiguredGraph& g) const { return pair.alpha(g); }
};

namespace detail {

inline int suffix_int(const std::string& name, const std::string& prefix) {
  try {
    std::size_t used = 0;
    int k = std::stoi(name.substr(prefix.size()), &used);
    if (used != name.size() - prefix.size() || k < 1) throw std::invalid_argument(name);
    return k;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad scheme parameter in '" + name + "'");
  }
}

inline bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

/// Base scheme for an optimisation problem, by the short name used after
/// "compiled-min:" / "compiled-max:".
inline std::optional<SchemeEntry> base_opt(const std::string& name) {
  if (name == "mwvc" || name == "mwvc-apls2") return SchemeEntry{mwvc_apls2(), mwvc_problem(), {}, false, false};
  if (name == "mvc" || name == "mvc-bipartite") return SchemeEntry{mvc_bipartite_pls(), mvc_problem(), {}, false, false};
  if (name == "maxis" || name == "maxis-apls-delta") {
    return SchemeEntry{maxis_apls_delta(), maxis_problem(), {}, false, false};
  }
  if (name == "maxis-bipartite") return SchemeEntry{maxis_bipartite_pls(), maxis_problem(), {}, false, false};
  if (name == "mwds" || name == "mwds-aplsH") return SchemeEntry{mwds_apls_h(), mwds_problem(), {}, false, false};
  return std::nullopt;
}

/// Base PLS for a family, by family name or scheme name.
inline std::optional<SchemeEntry> base_family(const std::string& name) {
  if (name == "forest" || name == "forest-pls") return SchemeEntry{forest_pls(), {}, forest_family(), false, false};
  if (name == "dag" || name == "dag-pls") return SchemeEntry{dag_pls(), {}, dag_family(), false, false};
  if (name == "2color") return SchemeEntry{kcolor_pls(2), {}, kcolor_family(2), false, false};
  if (starts_with(name, "kcolor-pls:")) {
    int k = suffix_int(name, "kcolor-pls:");
    return SchemeEntry{kcolor_pls(k), {}, kcolor_family(k), false, false};
  }
  if (starts_with(name, "arboricity-pls:") || starts_with(name, "arboricity-")) {
    int c = suffix_int(name, starts_with(name, "arboricity-pls:") ? "arboricity-pls:" : "arboricity-");
    return SchemeEntry{arboricity_pls(c), {}, arboricity_family(c), false, false};
  }
  return std::nullopt;
}

}  // namespace detail

/// Looks up a scheme by its registry name. Throws invalid_argument.
inline SchemeEntry make_scheme(const std::string& name, const SchemeParams& params = {}) {
  using detail::starts_with;
  if (starts_with(name, "compiled-min:") || starts_with(name, "compiled-max:")) {
    auto inner_name = name.substr(13);
    auto base = detail::base_opt(inner_name);
    if (!base) throw std::invalid_argument("unknown base problem in '" + name + "'");
    bool want_min = starts_with(name, "compiled-min:");
    if ((base->problem->mode == OptMode::min) != want_min) {
      throw std::invalid_argument("'" + inner_name + "' is not a " + (want_min ? "minimisation" : "maximisation") +
                                  " problem");
    }
    OptCompileOptions opt{params.epsilon, params.order};
    SchemeEntry e{compile_optdgp(*base->problem, base->pair, opt), base->problem, {}, true, false};
    e.pair.name = name;
    return e;
  }
  if (starts_with(name, "compiled-tpls:")) {
    auto inner_name = name.substr(14);
    auto base = detail::base_family(inner_name);
    if (!base) throw std::invalid_argument("unknown family in '" + name + "'");
    CgfCompileOptions opt{params.delta, params.order, params.count, params.literal_sec};
    SchemeEntry e{compile_cgf(base->pair, opt), {}, base->family, true, true};
    e.pair.name = name;
    return e;
  }
  if (starts_with(name, "universal-pls:")) {
    auto what = name.substr(14);
    if (auto fam = detail::base_family(what)) {
      return {universal_pls(what, fam->family->member), {}, fam->family, false, false};
    }
    auto p = problem_by_name(what);
    return {universal_pls(what, optimality_oracle(p)), p, {}, false, false};
  }
  if (auto e = detail::base_opt(name)) {
    if (name == e->pair.name) return *e;
  }
  if (auto e = detail::base_family(name)) {
    if (name == e->pair.name || starts_with(name, "kcolor-pls:") || starts_with(name, "arboricity-pls:")) return *e;
  }
  throw std::invalid_argument("unknown scheme '" + name + "'");
}

inline std::vector<std::string> scheme_names() {
  return {"mwvc-apls2",
          "mvc-bipartite",
          "maxis-apls-delta",
          "maxis-bipartite",
          "mwds-aplsH",
          "forest-pls",
          "dag-pls",
          "kcolor-pls:2",
          "kcolor-pls:3",
          "arboricity-pls:2",
          "universal-pls:mwvc",
          "universal-pls:maxis",
          "universal-pls:forest",
          "compiled-min:mwvc",
          "compiled-min:mvc",
          "compiled-min:mwds",
          "compiled-max:maxis",
          "compiled-max:maxis-bipartite",
          "compiled-tpls:forest",
          "compiled-tpls:2color",
          "compiled-tpls:dag",
          "compiled-tpls:arboricity-2"};
}

/// Which instance shape a scheme's yes-family lives on.
enum class Shape { general, bipartite, forest, dag, low_arboricity, colorable };

inline Shape instance_shape(const SchemeEntry& e, const std::string& name) {
  if (e.family) {
    const auto& f = e.family->name;
    if (f == "forest") return Shape::forest;
    if (f == "dag") return Shape::dag;
    if (f == "2color") return Shape::bipartite;
    if (detail::starts_with(f, "arboricity-")) return Shape::low_arboricity;
    return Shape::colorable;
  }
  if (name.find("bipartite") != std::string::npos || name == "compiled-min:mvc") return Shape::bipartite;
  return Shape::general;
}

inline Shape parse_shape(const std::string& s) {
  if (s == "general") return Shape::general;
  if (s == "bipartite") return Shape::bipartite;
  if (s == "forest" || s == "tree") return Shape::forest;
  if (s == "dag") return Shape::dag;
  if (s == "arboricity") return Shape::low_arboricity;
  if (s == "colorable") return Shape::colorable;
  throw std::invalid_argument("unknown shape '" + s + "'");
}

/// A random graph of the given shape with about `deg` average degree.
inline ConfiguredGraph random_shape(Shape shape, int n, double deg, std::uint64_t seed, int param = 2) {
  double p = n > 1 ? std::min(1.0, deg / (n - 1)) : 0.0;
  switch (shape) {
    case Shape::general: return gnp_graph(n, p, seed);
    case Shape::bipartite: return sparse_bipartite(n, deg, seed);
    case Shape::forest: return random_forest(n, 0.9, seed);
    case Shape::dag: return random_dag(n, p, seed);
    case Shape::low_arboricity: return random_low_arboricity(n, param, seed);
    case Shape::colorable: {
      // planted k-colouring: edges only between distinct colour classes
      auto g = gnp_graph(n, p, seed);
      std::vector<std::pair<int, int>> keep;
      for (const auto& e : g.edges()) {
        if (e.u % param != e.v % param) keep.emplace_back(e.u, e.v);
      }
      return detail::from_pairs(n, keep);
    }
  }
  return gnp_graph(n, p, seed);
}

/// A yes-instance for the scheme: a family member, or an instance whose
/// outputs are an exact optimum.
inline ConfiguredGraph yes_instance(const SchemeEntry& e, const std::string& name, int n, std::uint64_t seed,
                                    double deg = 3.0, std::optional<Shape> forced = std::nullopt) {
  auto shape = forced ? *forced : instance_shape(e, name);
  int param = 2;
  if (e.family && detail::starts_with(e.family->name, "kcolor:")) param = std::stoi(e.family->name.substr(7));
  if (e.family && detail::starts_with(e.family->name, "arboricity-")) param = std::stoi(e.family->name.substr(11));
  auto g = random_shape(shape, n, deg, seed, param);
  if (!e.problem) return g;
  const auto& p = *e.problem;
  if (p.weighted) g = with_random_weights(g, 9, seed + 5);
  if (p.name == "mwds") g = with_random_unconstrained_nodes(g, 0.2, seed + 7);
  else g = with_random_unconstrained_edges(g, 0.1, seed + 7);
  return with_optimum(p, g);
}

}  // namespace lrpls
