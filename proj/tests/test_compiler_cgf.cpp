#include <gtest/gtest.h>

#include <random>

#include "lrpls/lrpls.hpp"

using namespace lrpls;

namespace {

bool honest_accepts(const SchemePair& pair, const ConfiguredGraph& g) {
  auto labels = run_prover_instrumented(pair, g, default_budget(g.n()));
  return run_verifier(pair, g, labels).accepted;
}

bool nothing_found(const SchemePair& pair, const ConfiguredGraph& g, std::uint64_t budget = 20000) {
  AdversaryOptions opt;
  opt.budget = budget;
  return !adversary_search(pair, g, opt).accepting;
}

SchemePair tpls(const std::string& family, Rational delta, bool literal = false) {
  SchemeParams params;
  params.delta = delta;
  params.literal_sec = literal;
  return make_scheme("compiled-tpls:" + family, params).pair;
}

}  // namespace

TEST(CompiledTpls, TreeAccepts) {
  auto pair = tpls("forest", Rational(1, 4));
  for (int seed = 0; seed < 4; ++seed) EXPECT_TRUE(honest_accepts(pair, random_tree(64, seed)));
  EXPECT_TRUE(honest_accepts(pair, path_graph(1)));
}

TEST(CompiledTpls, K4IsFarFromForest) {
  auto pair = tpls("forest", Rational(1, 4));
  auto k4 = complete_graph(4);
  ASSERT_EQ(delta_far(forest_family(), k4, Rational(1, 4)), Closeness::far);
  EXPECT_TRUE(nothing_found(pair, k4, 5000));
}

TEST(CompiledTpls, TwoColorExamples) {
  auto pair = tpls("2color", Rational(1, 8));
  EXPECT_TRUE(honest_accepts(pair, cycle_graph(4)));
  auto c5 = cycle_graph(5);
  ASSERT_EQ(delta_far(kcolor_family(2), c5, Rational(1, 8)), Closeness::far);
  EXPECT_TRUE(nothing_found(pair, c5));
}

TEST(CompiledTpls, MembersAcceptForEveryFamilyAndDelta) {
  for (const char* fam : {"forest", "2color", "dag", "arboricity-2"}) {
    std::string name = std::string("compiled-tpls:") + fam;
    for (auto delta : {Rational(1, 1), Rational(1, 2), Rational(1, 4)}) {
      SchemeParams params;
      params.delta = delta;
      auto e = make_scheme(name, params);
      for (int seed = 0; seed < 3; ++seed) {
        auto g = yes_instance(e, name, 200, seed);
        ASSERT_TRUE(e.family->member(g));
        EXPECT_TRUE(honest_accepts(e.pair, g)) << name << " " << delta.str() << " " << seed;
      }
    }
  }
}

TEST(CompiledTpls, FarSmallGraphsFindNothing) {
  auto pair = tpls("forest", Rational(1, 4));
  int far = 0;
  for (int seed = 0; seed < 40 && far < 6; ++seed) {
    auto g = gnp_graph(7, 0.6, seed);
    if (delta_far(forest_family(), g, Rational(1, 4)) != Closeness::far) continue;
    ++far;
    EXPECT_TRUE(nothing_found(pair, g, 5000)) << seed;
  }
  EXPECT_GT(far, 0);
}

TEST(CompiledTpls, LiteralModeThrowsOnUncoveredEdge) {
  // on C8 with delta 1 node 6 needs two affiliations
  auto g = cycle_graph(8);
  auto st = part_cgf(g, Rational(1, 1));
  ASSERT_FALSE(uncovered_edges(g, st, true).empty());
  EXPECT_TRUE(uncovered_edges(g, st, false).empty());
  EXPECT_THROW(run_prover(tpls("forest", Rational(1, 1), true), g), std::runtime_error);
  EXPECT_TRUE(honest_accepts(tpls("forest", Rational(1, 1)), g));
}

TEST(CompiledTpls, UncoveredCrossingEdgeIsRejected) {
  // two singleton clusters joined by an edge nobody answers for
  auto pair = tpls("forest", Rational(1, 2));
  auto g = path_graph(2);
  auto single = forest_pls().prover;
  auto one = path_graph(1);
  GraphAccess plain(one);
  auto base = single(plain).front();
  std::vector<BitString> labels;
  for (int v = 0; v < 2; ++v) {
    CgfLabel l;
    l.cluster = v;
    l.cmp = ComparisonLabel{v, std::nullopt, 0, 0, 0};
    l.base = base;
    labels.push_back(encode_cgf(l));
  }
  EXPECT_FALSE(run_verifier(pair, g, labels).accepted);
  EXPECT_TRUE(run_verifier(pair, g, run_prover(pair, g).labels).accepted);
}

TEST(CgfLabelCodec, RoundTrip) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    CgfLabel l;
    l.cluster = static_cast<NodeId>(rng() % 64);
    int k = static_cast<int>(rng() % 4);
    for (int i = 0; i < k; ++i) l.secs.push_back(static_cast<NodeId>(rng() % 64));
    l.cmp = ComparisonLabel{l.cluster, rng() % 2 ? std::optional<NodeId>(3) : std::nullopt,
                            static_cast<std::int64_t>(rng() % 9), static_cast<std::int64_t>(rng() % 99),
                            static_cast<std::int64_t>(rng() % 99)};
    l.base = BitString::from_text(std::string(rng() % 6, '0'));
    auto back = decode_cgf(encode_cgf(l), false);
    EXPECT_EQ(back.cluster, l.cluster);
    EXPECT_EQ(back.secs, l.secs);
    EXPECT_EQ(back.base, l.base);
    EXPECT_EQ(encode_cgf(back), encode_cgf(l));
    if (k > 1) EXPECT_THROW(decode_cgf(encode_cgf(l), true), DecodeError);
  }
}

TEST(CompiledTpls, ProofSizeIsLogarithmic) {
  auto pair = tpls("2color", Rational(1, 2));
  std::vector<std::pair<double, double>> pts;
  for (int k = 6; k <= 12; k += 2) {
    auto g = random_bipartite(1 << (k - 1), 1 << (k - 1), 4.0 / (1 << k), k);
    pts.emplace_back(k, static_cast<double>(run_prover(pair, g).proof_size()));
  }
  auto fit = fit_log(pts);
  EXPECT_GT(fit.slope, 0);
  EXPECT_LE(fit.max_rel_deviation, 0.3);
}
