#include <gtest/gtest.h>

#include "lrpls/lrpls.hpp"

using namespace lrpls;

namespace {

bool honest_accepts(const SchemePair& pair, const ConfiguredGraph& g) {
  return run_verifier(pair, g, run_prover(pair, g)).accepted;
}

bool nothing_found(const SchemePair& pair, const ConfiguredGraph& g, std::uint64_t budget = 20000) {
  AdversaryOptions opt;
  opt.budget = budget;
  return !adversary_search(pair, g, opt).accepting;
}

ConfiguredGraph with_set(const ConfiguredGraph& g, std::initializer_list<int> chosen) {
  std::vector<std::int64_t> o(g.n(), 0);
  for (int v : chosen) o[v] = 1;
  return g.with_outputs(o);
}

// every simple graph on n labelled nodes
std::vector<ConfiguredGraph> all_graphs(int n) {
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  }
  std::vector<ConfiguredGraph> out;
  for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
    std::vector<std::pair<int, int>> e;
    for (std::size_t k = 0; k < slots.size(); ++k) {
      if (mask >> k & 1) e.push_back(slots[k]);
    }
    out.push_back(detail::from_pairs(n, e));
  }
  return out;
}

}  // namespace

TEST(Mwvc, SingleEdge) {
  auto pair = mwvc_apls2();
  EXPECT_TRUE(honest_accepts(pair, with_set(path_graph(2), {0})));
}

TEST(Mwvc, TriangleWithHalfDuals) {
  auto pair = mwvc_apls2();
  auto g = with_set(complete_graph(3), {0, 1});
  EXPECT_TRUE(honest_accepts(pair, g));
  EXPECT_TRUE(within_ratio(mwvc_problem(), g, 2.0));
}

TEST(Mwvc, StarWithAllLeavesIsRejected) {
  auto pair = mwvc_apls2();
  auto g = with_set(star_graph(4), {1, 2, 3});
  ASSERT_TRUE(outside_gap(mwvc_problem(), g, 2.0));
  EXPECT_TRUE(nothing_found(pair, g));
}

TEST(MvcBipartite, SingleEdgeAndP4) {
  auto pair = mvc_bipartite_pls();
  EXPECT_TRUE(honest_accepts(pair, with_set(path_graph(2), {0})));
  EXPECT_TRUE(honest_accepts(pair, with_set(path_graph(4), {1, 2})));
}

TEST(MvcBipartite, C4WithThreeIsRejected) {
  auto pair = mvc_bipartite_pls();
  auto g = with_set(cycle_graph(4), {0, 1, 2});
  ASSERT_TRUE(outside_gap(mvc_problem(), g, 1.0));
  EXPECT_TRUE(nothing_found(pair, g));
}

TEST(MaxisDelta, Examples) {
  auto pair = maxis_apls_delta();
  auto prep = [](const ConfiguredGraph& g) { return with_maxis_eligibility(g); };
  EXPECT_TRUE(honest_accepts(pair, with_set(prep(path_graph(2)), {0})));
  EXPECT_TRUE(honest_accepts(pair, with_set(prep(cycle_graph(5)), {0, 2})));
  auto star = prep(star_graph(6));
  EXPECT_TRUE(honest_accepts(pair, with_set(star, {0})));
  EXPECT_TRUE(within_ratio(maxis_problem(), with_set(star, {0}), 5.0));
  auto empty = with_set(star, {});
  ASSERT_TRUE(outside_gap(maxis_problem(), empty, 5.0));
  EXPECT_TRUE(nothing_found(pair, empty));
}

TEST(MaxisBipartite, Examples) {
  auto pair = maxis_bipartite_pls();
  auto prep = [](const ConfiguredGraph& g) { return with_maxis_eligibility(g); };
  EXPECT_TRUE(honest_accepts(pair, with_set(prep(path_graph(2)), {0})));
  EXPECT_TRUE(honest_accepts(pair, with_set(prep(path_graph(4)), {0, 2})));
  auto c4 = with_set(prep(cycle_graph(4)), {0});
  ASSERT_TRUE(outside_gap(maxis_problem(), c4, 1.0));
  EXPECT_TRUE(nothing_found(pair, c4));
}

TEST(Mwds, Examples) {
  auto pair = mwds_apls_h();
  EXPECT_TRUE(honest_accepts(pair, with_set(path_graph(1), {0})));
  EXPECT_TRUE(honest_accepts(pair, with_set(star_graph(5), {0})));
  auto leaves = with_set(star_graph(10), {1, 2, 3, 4, 5, 6, 7, 8, 9});
  ASSERT_TRUE(outside_gap(mwds_problem(), leaves, pair.alpha(leaves)));
  EXPECT_TRUE(nothing_found(pair, leaves));
}

TEST(Mwds, AlphaIsHarmonic) {
  auto pair = mwds_apls_h();
  double h = 0;
  for (int i = 1; i <= 12; ++i) h += 1.0 / i;
  EXPECT_NEAR(pair.alpha(path_graph(12)), h, 1e-9);
}

TEST(Universal, Examples) {
  auto e = make_scheme("universal-pls:forest");
  EXPECT_TRUE(honest_accepts(e.pair, path_graph(1)));
  for (int seed = 0; seed < 5; ++seed) EXPECT_TRUE(honest_accepts(e.pair, random_forest(8, 0.7, seed)));
  auto c3 = complete_graph(3);
  EXPECT_FALSE(honest_accepts(e.pair, c3));
  // inconsistent copies
  auto g = path_graph(2);
  auto labels = run_prover(e.pair, g).labels;
  labels[1] = run_prover(e.pair, path_graph(1)).labels[0];
  EXPECT_FALSE(run_verifier(e.pair, g, labels).accepted);
}

TEST(Universal, OptimalityOracle) {
  auto e = make_scheme("universal-pls:mwvc");
  auto g = with_optimum(mwvc_problem(), gnp_graph(7, 0.4, 2));
  EXPECT_TRUE(honest_accepts(e.pair, g));
  auto o = g.outputs();
  std::fill(o.begin(), o.end(), 1);
  if (brute_opt(mwvc_problem(), g).value < g.n()) EXPECT_FALSE(honest_accepts(e.pair, g.with_outputs(o)));
}

TEST(ForestPls, Examples) {
  auto pair = forest_pls();
  EXPECT_TRUE(honest_accepts(pair, path_graph(5)));
  EXPECT_TRUE(honest_accepts(pair, detail::from_pairs(5, {{0, 1}, {1, 2}, {3, 4}})));
  AdversaryOptions opt;
  opt.budget = 20000;
  auto r = adversary_search(pair, cycle_graph(4), opt);
  EXPECT_FALSE(r.accepting);
}

TEST(FamilyPls, YesAndNo) {
  EXPECT_TRUE(honest_accepts(dag_pls(), random_dag(12, 0.3, 1)));
  EXPECT_TRUE(honest_accepts(kcolor_pls(2), cycle_graph(6)));
  EXPECT_TRUE(honest_accepts(kcolor_pls(3), cycle_graph(5)));
  EXPECT_TRUE(honest_accepts(arboricity_pls(2), random_low_arboricity(15, 2, 3)));
  EXPECT_TRUE(nothing_found(dag_pls(), detail::from_pairs(3, {{0, 1}, {1, 2}, {2, 0}}, true)));
  EXPECT_TRUE(nothing_found(kcolor_pls(2), cycle_graph(5)));
  EXPECT_TRUE(nothing_found(kcolor_pls(3), complete_graph(4)));
  EXPECT_TRUE(nothing_found(arboricity_pls(2), complete_graph(5)));
}

TEST(Completeness, EveryGraphUpToSixNodes) {
  std::vector<std::string> names{"mwvc-apls2", "mvc-bipartite", "maxis-apls-delta", "maxis-bipartite", "mwds-aplsH",
                                 "forest-pls", "kcolor-pls:2", "kcolor-pls:3", "arboricity-pls:2"};
  for (int n = 1; n <= 6; ++n) {
    auto graphs = all_graphs(n);
    for (const auto& name : names) {
      auto e = make_scheme(name);
      int checked = 0;
      for (std::size_t k = 0; k < graphs.size(); ++k) {
        auto g = graphs[k];
        if (e.family && !e.family->member(g)) continue;
        if (e.problem) {
          if (instance_shape(e, name) == Shape::bipartite && !k_coloring(g, 2)) continue;
          g = with_optimum(*e.problem, g);
        }
        ++checked;
        ASSERT_TRUE(honest_accepts(e.pair, g)) << name << " n=" << n << " graph " << k;
      }
      EXPECT_GT(checked, 0) << name;
    }
  }
}

TEST(Completeness, DagsUpToFiveNodes) {
  auto pair = dag_pls();
  for (int n = 1; n <= 5; ++n) {
    for (const auto& g : all_graphs(n)) {
      // every orientation by a fixed order is acyclic
      for (std::uint64_t seed = 0; seed < 2; ++seed) {
        auto d = seed == 0 ? detail::from_pairs(n, [&] {
          std::vector<std::pair<int, int>> e;
          for (const auto& ed : g.edges()) e.emplace_back(ed.u, ed.v);
          return e;
        }(), true)
                           : random_dag(n, 0.5, n * 31 + seed);
        ASSERT_TRUE(honest_accepts(pair, d));
      }
    }
  }
}

TEST(Soundness, AcceptedAdversarialLabelingsRespectAlpha) {
  // random outputs; whatever the adversary gets accepted must respect alpha
  std::vector<std::string> names{"mwvc-apls2", "mvc-bipartite", "maxis-apls-delta", "maxis-bipartite", "mwds-aplsH"};
  std::mt19937_64 rng(5);
  for (const auto& name : names) {
    auto e = make_scheme(name);
    for (int trial = 0; trial < 15; ++trial) {
      auto g = yes_instance(e, name, 6, 100 + trial);
      auto o = g.outputs();
      for (auto& x : o) x = rng() % 3 == 0 ? 1 - x : x;
      g = g.with_outputs(o);
      AdversaryOptions opt;
      opt.budget = 2000;
      opt.seed = trial;
      auto r = adversary_search(e.pair, g, opt);
      if (r.accepting) EXPECT_TRUE(within_ratio(*e.problem, g, e.gap(g))) << name << " " << trial;
    }
  }
}
