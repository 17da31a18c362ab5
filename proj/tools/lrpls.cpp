// lrpls: generate instances, prove, verify, partition, fuzz, bench proof sizes.
// Exit codes: 0 accept/pass, 1 reject/fail, 2 usage or input error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lrpls/lrpls.hpp"

using namespace lrpls;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string scheme;
  std::string epsilon = "1/1";
  std::string delta = "1/4";
  std::string order = "id";
  std::string count = "residual";
  bool literal_sec = false;
  int exponent = 2;
  long long budget = -1;
  std::uint64_t seed = 1;
  bool timing = false;

  SchemeParams params() const {
    SchemeParams p;
    p.epsilon = Rational::parse(epsilon);
    p.delta = Rational::parse(delta);
    p.order = Order::parse(order);
    if (count == "residual") p.count = CrossCount::residual;
    else if (count == "full") p.count = CrossCount::full;
    else throw UsageError("--count must be residual or full");
    p.literal_sec = literal_sec;
    return p;
  }
};

void add_scheme_flags(CLI::App* cmd, Common& c, bool need_scheme = true) {
  auto* s = cmd->add_option("-s,--scheme", c.scheme, "scheme name, e.g. compiled-min:mwvc");
  if (need_scheme) s->required();
  cmd->add_option("--epsilon", c.epsilon, "rational p/q for OptDGP compilation");
  cmd->add_option("--delta", c.delta, "rational p/q for CGF compilation");
  cmd->add_option("--order", c.order, "id | random:<seed>");
  cmd->add_option("--count", c.count, "residual | full crossing count (CGF)");
  cmd->add_flag("--literal-sec", c.literal_sec, "single affiliation per node (CGF)");
  cmd->add_option("--locality-exponent", c.exponent, "c in 4*ceil(log2 n)^c");
  cmd->add_flag("--timing", c.timing, "add runtimes to the report");
}

// resolve "mwvc", "forest" and the like when used as generator targets
SchemeEntry resolve(const std::string& name, const SchemeParams& p, std::string* used = nullptr) {
  for (const auto& cand : {name, "compiled-min:" + name, "compiled-max:" + name, "compiled-tpls:" + name}) {
    try {
      auto e = make_scheme(cand, p);
      if (used) *used = cand;
      return e;
    } catch (const std::invalid_argument&) {
    }
  }
  throw UsageError("unknown scheme '" + name + "'");
}

class Report {
 public:
  template <class T>
  void put(const std::string& key, const T& v) {
    out_ << key << '=' << v << '\n';
  }
  void ids(const std::string& key, const std::vector<NodeId>& v) {
    out_ << key << '=';
    for (std::size_t i = 0; i < v.size(); ++i) out_ << (i ? "," : "") << v[i];
    out_ << '\n';
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

int budget_for(const Common& c, int n) {
  return c.budget >= 0 ? static_cast<int>(c.budget) : default_budget(n, c.exponent);
}

std::vector<BitString> read_labels(const ConfiguredGraph& g, const std::string& path, std::vector<NodeId>& bad) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open label file " + path);
  return parse_labels(g, in, &bad);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// largest cluster radius the honest prover's partition would use
std::optional<int> partition_radius(const SchemeEntry& e, const ConfiguredGraph& g, const SchemeParams& p) {
  if (!e.compiled) return std::nullopt;
  if (e.problem) return part_opt(g, g.outputs(), *e.problem, p.epsilon, p.order).max_radius();
  return part_cgf(g, p.delta, p.order, p.count).max_radius();
}

// yes / no / close / unknown with respect to what the scheme certifies
std::string classify(const SchemeEntry& e, const ConfiguredGraph& g, const SchemeParams& p) {
  try {
    if (e.problem) {
      if (!g.has_outputs()) return "no";
      return outside_gap(*e.problem, g, e.gap(g)) ? "no" : "yes";
    }
    if (e.family) {
      if (e.testing) {
        auto c = delta_far(*e.family, g, p.delta);
        return c == Closeness::member ? "yes" : c == Closeness::far ? "no" : "close";
      }
      return e.family->member(g) ? "yes" : "no";
    }
  } catch (const std::invalid_argument&) {
  }
  return "unknown";
}

ConfiguredGraph generate(const std::vector<std::string>& spec, std::uint64_t seed, double deg, const std::string& shape,
                         const SchemeParams& params) {
  if (spec.empty()) throw UsageError("generator kind missing");
  const auto& kind = spec[0];
  auto arg_int = [&](std::size_t i) {
    if (i >= spec.size()) throw UsageError("generator '" + kind + "' needs more arguments");
    try {
      return std::stoi(spec[i]);
    } catch (const std::exception&) {
      throw UsageError("bad integer '" + spec[i] + "'");
    }
  };
  auto arg_real = [&](std::size_t i) {
    if (i >= spec.size()) throw UsageError("generator '" + kind + "' needs more arguments");
    try {
      return std::stod(spec[i]);
    } catch (const std::exception&) {
      throw UsageError("bad number '" + spec[i] + "'");
    }
  };
  if (kind == "path") return path_graph(arg_int(1));
  if (kind == "cycle") return cycle_graph(arg_int(1));
  if (kind == "star") return star_graph(arg_int(1));
  if (kind == "complete") return complete_graph(arg_int(1));
  if (kind == "gnp") return gnp_graph(arg_int(1), arg_real(2), seed);
  if (kind == "tree") return random_tree(arg_int(1), seed);
  if (kind == "forest") return random_forest(arg_int(1), spec.size() > 2 ? arg_real(2) : 0.9, seed);
  if (kind == "bipartite") return random_bipartite(arg_int(1), arg_int(2), arg_real(3), seed);
  if (kind == "dag") return random_dag(arg_int(1), arg_real(2), seed);
  if (kind == "yes") {
    if (spec.size() < 3) throw UsageError("usage: gen yes <scheme> <n>");
    std::string name;
    auto e = resolve(spec[1], params, &name);
    std::optional<Shape> forced;
    if (!shape.empty()) forced = parse_shape(shape);
    return yes_instance(e, name, arg_int(2), seed, deg, forced);
  }
  throw UsageError("unknown generator '" + kind + "'");
}

int cmd_gen(const std::vector<std::string>& spec, std::uint64_t seed, double deg, const std::string& shape,
            const std::string& out, const Common& c) {
  auto g = generate(spec, seed, deg, shape, c.params());
  write_text(out, to_text(g));
  return 0;
}

int cmd_prove(const Common& c, const std::string& graph_path, const std::string& out) {
  auto params = c.params();
  auto e = make_scheme(c.scheme, params);
  auto g = read_graph_file(graph_path);
  Report r;
  r.put("scheme", c.scheme);
  r.put("n", g.n());
  r.put("m", g.m());
  // compiled provers run under the locality trap; explicit --budget traps any scheme
  bool trapped = e.compiled || c.budget >= 0;
  int budget = budget_for(c, g.n());
  auto t0 = Clock::now();
  LabelAssignment labels;
  try {
    labels = trapped ? run_prover_instrumented(e.pair, g, budget) : run_prover(e.pair, g);
  } catch (const LocalityViolation& v) {
    r.put("budget", budget);
    r.put("locality_violation", v.what());
    r.put("verdict", "fail");
    std::cerr << r.str();
    return 1;
  }
  double prove_ms = ms_since(t0);
  auto verdict = run_verifier(e.pair, g, labels);
  if (trapped) {
    int view = 0;
    for (int x : labels.view_radius) view = std::max(view, x);
    r.put("budget", budget);
    r.put("locality", view);
  }
  if (auto rad = partition_radius(e, g, params)) r.put("max_radius", *rad);
  r.put("proof_size_bits", labels.proof_size());
  r.put("total_bits", [&] {
    std::size_t t = 0;
    for (const auto& l : labels.labels) t += l.size();
    return t;
  }());
  r.put("self_check", verdict.accepted ? "accept" : "reject");
  if (c.timing) r.put("prove_ms", prove_ms);
  write_text(out, dump_labels(g, labels.labels));
  (out.empty() || out == "-" ? std::cerr : std::cout) << r.str();
  return verdict.accepted ? 0 : 1;
}

int cmd_verify(const Common& c, const std::string& graph_path, const std::string& label_path) {
  auto e = make_scheme(c.scheme, c.params());
  auto g = read_graph_file(graph_path);
  std::vector<NodeId> bad;
  auto labels = read_labels(g, label_path, bad);
  auto t0 = Clock::now();
  auto v = run_verifier(e.pair, g, labels);
  Report r;
  r.put("scheme", c.scheme);
  r.put("n", g.n());
  r.put("verdict", v.accepted ? "accept" : "reject");
  r.put("proof_size_bits", proof_size(labels));
  r.put("rejecting_count", v.rejecting.size());
  r.ids("rejecting", v.rejecting);
  if (!bad.empty()) r.ids("missing_labels", bad);
  if (c.timing) r.put("verify_ms", ms_since(t0));
  std::cout << r.str();
  return v.accepted ? 0 : 1;
}

int cmd_partition(const Common& c, const std::string& graph_path) {
  auto params = c.params();
  auto e = make_scheme(c.scheme, params);
  if (!e.compiled) throw UsageError("partition needs a compiled scheme");
  auto g = read_graph_file(graph_path);
  auto order = params.order.permutation(g.n());
  GraphAccess access(g, budget_for(c, g.n()));
  auto t0 = Clock::now();
  PartitionState st;
  if (e.problem) {
    auto o = g.outputs();
    const auto& p = *e.problem;
    st = part_opt(access, [&](int x) { return p.weight(g.node(x)) * o[x]; }, params.epsilon, p.mode, order);
  } else {
    st = part_cgf(access, params.delta, order, params.count);
  }
  double ms = ms_since(t0);
  auto rows = cluster_report(g, st);
  // slack of the stopping rule, scaled to integers
  auto slack = [&](const ClusterSummary& row) -> std::int64_t {
    if (e.problem) return (params.epsilon.q + params.epsilon.p) * row.rule_rhs - params.epsilon.q * row.rule_lhs;
    return params.delta.p * row.rule_rhs - params.delta.q * row.rule_lhs;
  };
  std::cout << "# cluster\tsize\tradius\tdiameter\t" << (e.problem ? "s_size" : "f_edges") << "\tslack\n";
  bool holds = true;
  for (const auto& row : rows) {
    holds = holds && row.rule_holds;
    std::cout << row.leader << '\t' << row.size << '\t' << row.radius << '\t' << row.diameter << '\t'
              << (e.problem ? row.s_size : row.f_edges) << '\t' << slack(row) << '\n';
  }
  Report r;
  r.put("clusters", rows.size());
  r.put("max_radius", st.max_radius());
  r.put("locality", st.locality);
  r.put("rule_holds", holds ? 1 : 0);
  if (!e.problem) {
    auto missing = uncovered_edges(g, st, params.literal_sec);
    r.put("uncovered_edges", missing.size());
  }
  if (c.timing) r.put("partition_ms", ms);
  std::cout << r.str();
  return holds ? 0 : 1;
}

int cmd_fuzz(const Common& c, const std::string& graph_path, const std::vector<std::string>& gen, double deg,
             const std::string& dump) {
  auto params = c.params();
  auto e = make_scheme(c.scheme, params);
  if (graph_path.empty() && gen.empty()) throw UsageError("fuzz needs --graph or --gen");
  ConfiguredGraph g = graph_path.empty() ? generate(gen, c.seed, deg, "", params) : read_graph_file(graph_path);
  AdversaryOptions opt;
  opt.budget = c.budget >= 0 ? static_cast<std::uint64_t>(c.budget) : 100000;
  opt.seed = c.seed;
  auto t0 = Clock::now();
  auto res = adversary_search(e.pair, g, opt);
  auto cls = classify(e, g, params);
  Report r;
  r.put("scheme", c.scheme);
  r.put("n", g.n());
  r.put("instance", cls);
  r.put("budget", opt.budget);
  r.put("candidates", res.candidates);
  r.put("found", res.accepting ? 1 : 0);
  if (res.accepting) r.put("strategy", res.strategy);
  bool counterexample = res.accepting && cls == "no";
  r.put("verdict", counterexample ? "counterexample" : "pass");
  if (c.timing) r.put("fuzz_ms", ms_since(t0));
  std::cout << r.str();
  if (res.accepting && !dump.empty()) write_text(dump, dump_labels(g, *res.accepting));
  return counterexample ? 1 : 0;
}

int cmd_bench(const Common& c, int from, int to, int step, int seeds, double deg, const std::string& shape,
              double tolerance) {
  auto params = c.params();
  auto e = make_scheme(c.scheme, params);
  std::optional<Shape> forced;
  if (!shape.empty()) forced = parse_shape(shape);
  if (from > to || step < 1 || seeds < 1) throw UsageError("bad grid");
  std::vector<std::pair<double, double>> pts;
  std::cout << "# log2n\tn\tbits\n";
  for (int k = from; k <= to; k += step) {
    int n = 1 << k;
    double sum = 0;
    for (int s = 0; s < seeds; ++s) {
      auto g = yes_instance(e, c.scheme, n, c.seed + s, deg, forced);
      sum += static_cast<double>(run_prover(e.pair, g).proof_size());
    }
    double bits = sum / seeds;
    pts.emplace_back(k, bits);
    std::cout << k << '\t' << n << '\t' << bits << '\n';
  }
  auto fit = fit_log(pts);
  Report r;
  r.put("slope", fit.slope);
  r.put("intercept", fit.intercept);
  r.put("max_rel_deviation", fit.max_rel_deviation);
  bool ok = fit.max_rel_deviation <= tolerance;
  r.put("verdict", ok ? "pass" : "fail");
  std::cout << r.str();
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"locally restricted proof labeling schemes"};
  app.require_subcommand(1);
  Common c;

  auto* gen = app.add_subcommand("gen", "write a graph file");
  std::vector<std::string> gen_spec;
  std::string gen_out, gen_shape;
  double gen_deg = 3.0;
  gen->add_option("spec", gen_spec, "path N | cycle N | star N | complete N | gnp N P | tree N | forest N [KEEP] | "
                                    "bipartite A B P | dag N P | yes SCHEME N")
      ->required();
  gen->add_option("--seed", c.seed);
  gen->add_option("--deg", gen_deg, "average degree for yes instances");
  gen->add_option("--shape", gen_shape, "general | bipartite | forest | dag | arboricity | colorable");
  gen->add_option("-o,--out", gen_out, "output file (default stdout)");
  gen->add_option("--epsilon", c.epsilon);
  gen->add_option("--delta", c.delta);

  auto* prove = app.add_subcommand("prove", "run the honest prover");
  std::string graph_path, label_path, out_path;
  add_scheme_flags(prove, c);
  prove->add_option("-g,--graph", graph_path)->required();
  prove->add_option("-o,--out", out_path, "label file (default stdout, report then goes to stderr)");
  prove->add_option("--budget", c.budget, "locality budget; traps base provers too");

  auto* verify = app.add_subcommand("verify", "run the verifier on a label file");
  add_scheme_flags(verify, c);
  verify->add_option("-g,--graph", graph_path)->required();
  verify->add_option("-l,--labels", label_path)->required();

  auto* part = app.add_subcommand("partition", "cluster table of a compiled scheme's partition");
  add_scheme_flags(part, c);
  part->add_option("-g,--graph", graph_path)->required();
  part->add_option("--budget", c.budget, "locality budget");

  auto* fuzz = app.add_subcommand("fuzz", "adversarial label search");
  std::vector<std::string> fuzz_gen;
  std::string dump_path;
  double fuzz_deg = 3.0;
  add_scheme_flags(fuzz, c);
  fuzz->add_option("-g,--graph", graph_path);
  fuzz->add_option("--gen", fuzz_gen, "generator spec as for gen");
  fuzz->add_option("--deg", fuzz_deg);
  fuzz->add_option("--budget", c.budget, "candidate labelings (default 100000)");
  fuzz->add_option("--seed", c.seed);
  fuzz->add_option("--dump", dump_path, "write an accepting labeling here");

  auto* bench = app.add_subcommand("bench-size", "proof size over n = 2^from .. 2^to");
  int from = 6, to = 12, step = 1, seeds = 1;
  double bench_deg = 3.0, tolerance = 0.15;
  std::string bench_shape;
  add_scheme_flags(bench, c);
  bench->add_option("--from", from);
  bench->add_option("--to", to);
  bench->add_option("--step", step);
  bench->add_option("--seeds", seeds);
  bench->add_option("--seed", c.seed);
  bench->add_option("--deg", bench_deg);
  bench->add_option("--shape", bench_shape);
  bench->add_option("--tolerance", tolerance, "largest accepted relative deviation from the log fit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) return cmd_gen(gen_spec, c.seed, gen_deg, gen_shape, gen_out, c);
    if (*prove) return cmd_prove(c, graph_path, out_path);
    if (*verify) return cmd_verify(c, graph_path, label_path);
    if (*part) return cmd_partition(c, graph_path);
    if (*fuzz) return cmd_fuzz(c, graph_path, fuzz_gen, fuzz_deg, dump_path);
    if (*bench) return cmd_bench(c, from, to, step, seeds, bench_deg, bench_shape, tolerance);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DecodeError& e) {
    std::cerr << "decode error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
