#pragma once

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "bits.hpp"
#include "graph.hpp"
#include "locality.hpp"

namespace lrpls {

enum class Provenance { honest, adversarial };

struct LabelAssignment {
  std::vector<BitString> labels;  // indexed like the graph's nodes
  Provenance provenance = Provenance::honest;
  std::vector<int> view_radius;   // per node, largest scope radius centered there

  std::size_t proof_size() const {
    std::size_t best = 0;
    for (const auto& l : labels) best = std::max(best, l.size());
    return best;
  }
};

/// Labels of v's neighbours in port order, as the verifier receives them.
using NeighborLabels = std::span<const BitString>;

using Prover = std::function<std::vector<BitString>(GraphAccess&)>;
using Verifier = std::function<bool(const LocalConfig&, const BitString&, NeighborLabels)>;

/// A matched prover/verifier pair. `alpha` is the approximation factor for
/// APLSs as a function of the instance (1 for exact schemes); `in_universe`
/// tells whether an instance is one the scheme speaks about.
struct SchemePair {
  std::string name;
  Prover prover;
  Verifier verifier;
  std::function<bool(const ConfiguredGraph&)> in_universe = [](const ConfiguredGraph&) { return true; };
  std::function<double(const ConfiguredGraph&)> alpha = [](const ConfiguredGraph&) { return 1.0; };
};

struct Verdict {
  bool accepted = true;
  std::vector<NodeId> rejecting;
};

inline std::vector<BitString> neighbor_labels(const ConfiguredGraph& g, int v, const std::vector<BitString>& labels) {
  std::vector<BitString> out;
  out.reserve(g.degree(v));
  for (const auto& a : g.neighbors(v)) out.push_back(labels[a.nbr]);
  return out;
}

/// phi(v) with decode failures and any other verifier exception mapped to false.
inline bool verify_node(const SchemePair& pair, const ConfiguredGraph& g, int v, const std::vector<BitString>& labels) {
  auto cfg = local_config(g, v);
  auto nbrs = neighbor_labels(g, v, labels);
  try {
    return pair.verifier(cfg, labels[v], nbrs);
  } catch (const std::exception&) {
    return false;
  }
}

inline Verdict run_verifier(const SchemePair& pair, const ConfiguredGraph& g, const std::vector<BitString>& labels) {
  if (static_cast<int>(labels.size()) != g.n()) throw std::invalid_argument("label assignment does not cover V");
  Verdict verdict;
  for (int v = 0; v < g.n(); ++v) {
    if (!verify_node(pair, g, v, labels)) {
      verdict.accepted = false;
      verdict.rejecting.push_back(g.id(v));
    }
  }
  return verdict;
}

inline Verdict run_verifier(const SchemePair& pair, const ConfiguredGraph& g, const LabelAssignment& l) {
  return run_verifier(pair, g, l.labels);
}

/// Early-exit acceptance test; `first` lists nodes to try before the rest.
inline bool accepts(const SchemePair& pair, const ConfiguredGraph& g, const std::vector<BitString>& labels,
                    const std::vector<int>& first = {}) {
  for (int v : first) {
    if (!verify_node(pair, g, v, labels)) return false;
  }
  for (int v = 0; v < g.n(); ++v) {
    if (!verify_node(pair, g, v, labels)) return false;
  }
  return true;
}

inline LabelAssignment run_prover(const SchemePair& pair, const ConfiguredGraph& g) {
  GraphAccess access(g);
  LabelAssignment out;
  out.labels = pair.prover(access);
  out.view_radius.assign(g.n(), 0);
  if (static_cast<int>(out.labels.size()) != g.n()) throw std::logic_error("prover returned wrong label count");
  return out;
}

/// Runs the prover behind a radius budget. Throws LocalityViolation.
inline LabelAssignment run_prover_instrumented(const SchemePair& pair, const ConfiguredGraph& g, int budget) {
  GraphAccess access(g, budget);
  LabelAssignment out;
  out.labels = pair.prover(access);
  out.view_radius = access.radius_by_center();
  if (static_cast<int>(out.labels.size()) != g.n()) throw std::logic_error("prover returned wrong label count");
  return out;
}

inline std::size_t proof_size(const std::vector<BitString>& labels) {
  std::size_t best = 0;
  for (const auto& l : labels) best = std::max(best, l.size());
  return best;
}

struct SizeFit {
  double slope = 0;
  double intercept = 0;
  double max_rel_deviation = 0;  // max |observed - fitted| / fitted
  std::vector<std::pair<double, double>> points;  // (log2 n, bits)
};

/// Least-squares fit of bits against log2 n.
inline SizeFit fit_log(const std::vector<std::pair<double, double>>& points) {
  SizeFit fit;
  fit.points = points;
  double n = static_cast<double>(points.size());
  if (points.empty()) return fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : points) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double den = n * sxx - sx * sx;
  fit.slope = den == 0 ? 0 : (n * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / n;
  for (auto [x, y] : points) {
    double f = fit.slope * x + fit.intercept;
    double dev = f == 0 ? std::abs(y) : std::abs(y - f) / std::abs(f);
    fit.max_rel_deviation = std::max(fit.max_rel_deviation, dev);
  }
  return fit;
}

// Label dump: one "id<TAB>hex" line per node, ascending id.

inline std::string dump_labels(const ConfiguredGraph& g, const std::vector<BitString>& labels) {
  std::ostringstream out;
  for (int v = 0; v < g.n(); ++v) out << g.id(v) << '\t' << labels[v].to_hex() << '\n';
  return out.str();
}

/// Parses a dump. Missing or malformed lines leave an empty label, which any
/// non-trivial verifier rejects; this is how truncated files surface.
inline std::vector<BitString> parse_labels(const ConfiguredGraph& g, std::istream& in, std::vector<NodeId>* bad = nullptr) {
  std::vector<BitString> labels(g.n());
  std::vector<char> seen(g.n(), 0);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) continue;
    NodeId id;
    try {
      id = std::stoll(line.substr(0, tab));
    } catch (const std::exception&) {
      continue;
    }
    if (!g.has_id(id)) continue;
    int v = g.index_of(id);
    try {
      labels[v] = BitString::from_hex(line.substr(tab + 1));
      seen[v] = 1;
    } catch (const DecodeError&) {
      if (bad) bad->push_back(id);
    }
  }
  if (bad) {
    for (int v = 0; v < g.n(); ++v) {
      if (!seen[v]) bad->push_back(g.id(v));
    }
  }
  return labels;
}

}  // namespace lrpls
