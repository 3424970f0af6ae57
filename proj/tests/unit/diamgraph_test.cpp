#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "oracles.hpp"
#include "polydisc/constructions.hpp"
#include "polydisc/diamgraph.hpp"
#include "polydisc/errors.hpp"

using namespace polydisc;

namespace {

PointConfig square() { return {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}; }

DiameterGraph relabel(const DiameterGraph& g, const std::vector<int>& perm) {
  std::vector<Edge> e;
  for (auto [a, b] : g.edges) e.emplace_back(std::min(perm[a], perm[b]), std::max(perm[a], perm[b]));
  return make_graph(g.n, e);
}

oracle::EdgeList as_list(const DiameterGraph& g) { return {g.edges.begin(), g.edges.end()}; }

}  // namespace

TEST(Extract, Square) {
  const DiameterGraph g = extract(square());
  EXPECT_EQ(g.edges, (std::vector<Edge>{{0, 2}, {1, 3}}));
  EXPECT_FALSE(is_connected(g));
  EXPECT_EQ(classify(g).kind, GraphKind::Disconnected);
}

TEST(Extract, KiteIsTrianglePlusPendant) {
  const DiameterGraph g = extract(kite4());
  EXPECT_EQ(g.edges, (std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}, {1, 3}}));
  const GraphClass c = classify(g);
  EXPECT_EQ(c.kind, GraphKind::OddCycleWithPendants);
  EXPECT_EQ(c.detail, 3);
}

TEST(Extract, TriwaveGivesAntipodalPairs) {
  for (int n : {8, 20, 64}) {
    const TriwaveConfig t = triwave(n);
    const DiameterGraph g = extract(t.z);
    ASSERT_EQ(g.edges.size(), static_cast<std::size_t>(n / 2));
    for (auto [a, b] : g.edges) EXPECT_EQ(b - a, n / 2);
  }
}

TEST(Extract, MatchesBruteForce) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const auto z = oracle::random_points(rng, 5 + trial % 6);
    for (double tol : {1e-9, 1e-2, 0.1}) {
      const auto expected = oracle::brute_diameter_pairs(z, tol);
      EXPECT_EQ(extract(z, tol).edges, std::vector<Edge>(expected.begin(), expected.end()));
    }
  }
}

TEST(Extract, MonotoneInTolerance) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const auto z = oracle::random_points(rng, 8);
    const auto small = extract(z, 1e-3).edges, big = extract(z, 0.2).edges;
    EXPECT_TRUE(std::includes(big.begin(), big.end(), small.begin(), small.end()));
  }
}

TEST(Extract, Errors) { EXPECT_THROW(extract({{0, 0}}), InvalidInput); }

TEST(Classify, Examples) {
  EXPECT_EQ(classify(make_graph(4, {{0, 1}, {1, 2}, {2, 3}})).kind, GraphKind::Caterpillar);
  EXPECT_EQ(classify(make_graph(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}})).kind, GraphKind::OddCycleWithPendants);
  const DiameterGraph c4 = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  EXPECT_EQ(classify(c4).kind, GraphKind::Other);
  EXPECT_TRUE(has_even_cycle(c4));
  // Spider with legs of length 2 is a tree but not a caterpillar.
  const DiameterGraph spider = make_graph(7, {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}});
  EXPECT_EQ(classify(spider).kind, GraphKind::Other);
  // Triangle with a path of length 2 hanging off is not "pendants only".
  EXPECT_EQ(classify(make_graph(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}})).kind, GraphKind::Other);
}

TEST(Classify, EvenCycleInsideLargerBlock) {
  // Two triangles sharing an edge contain a 4-cycle.
  EXPECT_TRUE(has_even_cycle(make_graph(4, {{0, 1}, {1, 2}, {0, 2}, {1, 3}, {2, 3}})));
  EXPECT_FALSE(has_even_cycle(make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}})));
}

TEST(Classify, InvariantUnderRelabeling) {
  std::mt19937_64 rng(23);
  std::vector<DiameterGraph> graphs = enumerate_caterpillars(8);
  for (const auto& g : enumerate_unicyclic_candidates(8, 7)) graphs.push_back(g);
  graphs.push_back(make_graph(6, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {4, 5}}));
  for (const DiameterGraph& g : graphs) {
    const GraphClass base = classify(g);
    std::vector<int> perm(static_cast<std::size_t>(g.n));
    std::iota(perm.begin(), perm.end(), 0);
    for (int t = 0; t < 5; ++t) {
      std::shuffle(perm.begin(), perm.end(), rng);
      const DiameterGraph h = relabel(g, perm);
      EXPECT_EQ(classify(h).kind, base.kind);
      EXPECT_EQ(classify(h).detail, base.detail);
      EXPECT_EQ(canonical_key(h), canonical_key(g));
    }
  }
}

TEST(PairwiseIntersection, Examples) {
  const PointConfig k = kite4();
  EXPECT_TRUE(check_pairwise_intersection(k, extract(k)));
  EXPECT_TRUE(check_pairwise_intersection(square(), extract(square())));
  const PointConfig par{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  EXPECT_FALSE(check_pairwise_intersection(par, make_graph(4, {{0, 1}, {2, 3}})));
  // Collinear overlap fails.
  const PointConfig col{{0, 0}, {2, 0}, {1, 0}, {3, 0}};
  EXPECT_FALSE(check_pairwise_intersection(col, make_graph(4, {{0, 1}, {2, 3}})));
  EXPECT_THROW(check_pairwise_intersection({{0, 0}, {0, 0}}, make_graph(2, {{0, 1}})), InvalidInput);
}

TEST(PairwiseIntersection, MatchesSegmentOracle) {
  std::mt19937_64 rng(24);
  std::uniform_int_distribution<int> c(-3, 3);
  for (int trial = 0; trial < 300; ++trial) {
    PointConfig z;
    for (int i = 0; i < 4; ++i) z.emplace_back(c(rng), c(rng));
    bool distinct = true;
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) distinct &= z[i] != z[j];
    }
    if (!distinct) continue;
    const bool expected = oracle::segments_cross_once(z[0], z[1], z[2], z[3]);
    EXPECT_EQ(check_pairwise_intersection(z, make_graph(4, {{0, 1}, {2, 3}})), expected) << trial;
  }
}

TEST(Caterpillars, KnownCounts) {
  EXPECT_EQ(enumerate_caterpillars(8).size(), 20u);
  EXPECT_EQ(enumerate_caterpillars(10).size(), 72u);
  EXPECT_EQ(enumerate_caterpillars(4).size(), 2u);
}

TEST(Caterpillars, ClosedFormCount) {
  for (int n = 5; n <= 12; ++n) {
    const std::size_t expected = (std::size_t{1} << (n - 4)) + (std::size_t{1} << (n / 2 - 2));
    EXPECT_EQ(enumerate_caterpillars(n).size(), expected) << n;
  }
}

TEST(Caterpillars, SameIsomorphismClassesAsPruferOracle) {
  for (int n = 2; n <= 8; ++n) {
    std::set<std::string> got;
    for (const DiameterGraph& g : enumerate_caterpillars(n)) {
      EXPECT_EQ(classify(g).kind, GraphKind::Caterpillar);
      EXPECT_EQ(g.edges.size(), static_cast<std::size_t>(n - 1));
      got.insert(oracle::tree_canonical(n, as_list(g)));
    }
    EXPECT_EQ(got.size(), enumerate_caterpillars(n).size()) << "duplicates at n=" << n;
    EXPECT_EQ(got, oracle::caterpillar_classes(n)) << n;
  }
}

TEST(Unicyclic, SmallCases) {
  ASSERT_EQ(enumerate_unicyclic_candidates(3, 3).size(), 1u);
  const auto four = enumerate_unicyclic_candidates(4, 4);
  ASSERT_EQ(four.size(), 1u);
  EXPECT_EQ(four[0].edges.size(), 4u);
  EXPECT_EQ(enumerate_unicyclic_candidates(6, 6).size(), 4u);
}

TEST(Unicyclic, MatchesBruteForceOracle) {
  for (int n = 3; n <= 7; ++n) {
    std::set<std::uint64_t> got;
    for (const DiameterGraph& g : enumerate_unicyclic_candidates(n, n)) {
      EXPECT_EQ(classify(g).kind, GraphKind::OddCycleWithPendants);
      got.insert(oracle::graph_canonical(n, as_list(g)));
    }
    EXPECT_EQ(got.size(), enumerate_unicyclic_candidates(n, n).size());
    EXPECT_EQ(got, oracle::odd_cycle_with_pendants_classes(n)) << n;
  }
}

TEST(Conjectured, Shapes) {
  const DiameterGraph g6 = conjectured_even_graph(6);
  EXPECT_EQ(classify(g6).kind, GraphKind::OddCycleWithPendants);
  EXPECT_EQ(classify(g6).detail, 3);
  EXPECT_EQ(g6.degrees(), (std::vector<int>{3, 3, 3, 1, 1, 1}));
  const DiameterGraph g12 = conjectured_even_graph(12);
  EXPECT_EQ(classify(g12).detail, 9);
  EXPECT_EQ(canonical_key(g12), "12/cyc9:0,0,1,0,0,1,0,0,1");
  EXPECT_EQ(classify(conjectured_even_graph(8)).detail, 5);
  EXPECT_THROW(conjectured_even_graph(7), InvalidInput);
}

TEST(StructureReport, Examples) {
  const StructureReport kite = maximizer_structure_report(kite4());
  EXPECT_TRUE(kite.all());
  const StructureReport sq = maximizer_structure_report(square());
  EXPECT_FALSE(sq.connected);
  EXPECT_FALSE(sq.all());
  const StructureReport pent = maximizer_structure_report(regular_ngon(5));
  EXPECT_TRUE(pent.all());
  EXPECT_EQ(pent.graph_class.kind, GraphKind::OddCycleWithPendants);
  EXPECT_EQ(pent.graph_class.detail, 5);
  EXPECT_TRUE(maximizer_structure_report(hexagon6()).all());
}

TEST(GraphText, RoundTrip) {
  const DiameterGraph g = extract(kite4());
  EXPECT_EQ(format_graph(g), "n=4; edges=1-2,1-3,2-3,2-4");
  EXPECT_EQ(parse_graph(format_graph(g)), g);
  EXPECT_EQ(parse_graph("4;1-2,2-3,2-4"), make_graph(4, {{0, 1}, {1, 2}, {1, 3}}));
  EXPECT_THROW(parse_graph("4;1-5"), InvalidInput);
  EXPECT_THROW(parse_graph("x;1-2"), InvalidInput);
  EXPECT_THROW(parse_graph("4 1-2"), InvalidInput);
}
