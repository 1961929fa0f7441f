#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "q2cert/families.hpp"
#include "q2cert/graph.hpp"
#include "q2cert/graph6.hpp"

using namespace q2cert;

namespace {

Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

std::vector<int> random_perm(int n, std::mt19937_64& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace

TEST_CASE("graph6 small inputs") {
  CHECK(parse_graph6("@").order() == 1);
  Graph g = parse_graph6("A?");
  CHECK(g.order() == 2);
  CHECK(g.size() == 0);
  Graph k2 = parse_graph6("A_");
  CHECK(k2.size() == 1);
  CHECK(k2.adjacent(0, 1));
  CHECK(write_graph6(Graph::complete(4)) == "C~");
  CHECK(parse_graph6(">>graph6<<C~\n") == Graph::complete(4));
}

TEST_CASE("graph6 errors report offsets") {
  CHECK_THROWS_AS(parse_graph6(""), ParseError);
  CHECK_THROWS_AS(parse_graph6("C"), ParseError);
  CHECK_THROWS_AS(parse_graph6("C~~"), ParseError);
  CHECK_THROWS_AS(parse_graph6("A\x20"), ParseError);
  try {
    parse_graph6("C~~");
    FAIL("no throw");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 2);
  }
}

TEST_CASE("graph6 round trip on random graphs up to 64 vertices") {
  std::mt19937_64 rng(7);
  for (int n : {1, 2, 5, 17, 62, 63, 64}) {
    for (int rep = 0; rep < 3; ++rep) {
      Graph g = random_graph(n, 0.4, rng);
      CHECK(parse_graph6(write_graph6(g)) == g);
    }
  }
}

TEST_CASE("complement, join, jdup") {
  Graph c5 = Graph::cycle(5);
  CHECK(find_isomorphism(c5, complement(c5)).has_value());
  Graph p3 = Graph::path(3);
  Graph d = jdup(p3, 1);
  CHECK(d.order() == 4);
  CHECK(d.size() == 5);
  CHECK(complement(d).size() == 1);
  CHECK(join(Graph(2), Graph(2)) == Graph::cycle(4).relabeled(std::vector<int>{0, 2, 1, 3}));
  Graph star = double_star(2, 0);
  auto comps = components(complement(star));
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].size() == 3);
  CHECK(comps[1].size() == 1);
}

TEST_CASE("bipartition and odd cycles") {
  auto r = bipartition(Graph::cycle(5));
  REQUIRE(std::holds_alternative<OddCycle>(r));
  auto cyc = std::get<OddCycle>(r).cycle;
  CHECK(cyc.size() % 2 == 1);
  Graph c5 = Graph::cycle(5);
  for (std::size_t i = 0; i < cyc.size(); ++i) CHECK(c5.adjacent(cyc[i], cyc[(i + 1) % cyc.size()]));

  Graph g = disjoint_union(w_star(4), Graph(1));
  auto s = std::get<PartiteSplit>(bipartition(g));
  CHECK(popcount(s.left) == 5);
  CHECK(popcount(s.right) == 5);
  CHECK(is_valid_split(g, s));
  for (const auto& split : all_bipartitions(Graph::path(4))) CHECK(is_valid_split(Graph::path(4), split));
  CHECK(all_bipartitions(Graph::path(4)).size() == 2);
  CHECK(all_bipartitions(Graph(3)).size() == 4);
}

TEST_CASE("unique P2 violations") {
  auto v = unique_p2_violations(Graph::path(3));
  REQUIRE(v.size() == 1);
  CHECK(v[0] == PathTriple{0, 1, 2});
  CHECK(unique_p2_violations(Graph::cycle(4)).empty());
  CHECK(unique_p2_violations(Graph::complete(5)).empty());
}

TEST_CASE("family recognition") {
  using K = SpecialFamily::Kind;
  CHECK(recognize(Graph::cycle(4)).kind == K::C4);
  CHECK(recognize(Graph::path(4)) == SpecialFamily{K::DoubleStar, 1, 1});
  CHECK(recognize(Graph::path(5)) == SpecialFamily{K::WStar, 2, 0});
  CHECK(recognize(Graph::path(6)).kind == K::Path);
  CHECK(recognize(with_isolated(Graph::path(4))) == SpecialFamily{K::SabUnionK1, 1, 1});
  CHECK(recognize(with_isolated(Graph::path(2))) == SpecialFamily{K::SabUnionK1, 0, 0});
  CHECK(recognize(double_star(3, 1)) == SpecialFamily{K::DoubleStar, 3, 1});
  CHECK(recognize(w_star_plus(4)) == SpecialFamily{K::WStarPlus, 4, 0});
  CHECK(recognize(with_isolated(w_star_plus(2))) == SpecialFamily{K::WPlusUnionK1, 2, 0});
  CHECK(recognize(box_product(3)) == SpecialFamily{K::BoxProduct, 3, 0});
  CHECK(recognize(Graph::complete(5)).kind == K::Complete);
  CHECK(recognize(Graph(3)).kind == K::Empty);
  CHECK(recognize(Graph::cycle(5)).kind == K::None);
}

TEST_CASE("recognition is invariant under relabeling") {
  std::mt19937_64 rng(11);
  std::vector<Graph> samples = {w_star(3), w_star_plus(3), double_star(2, 1), box_product(4),
                                with_isolated(w_star_plus(3)), with_isolated(double_star(1, 0))};
  for (const auto& g : samples) {
    for (int rep = 0; rep < 5; ++rep) {
      CHECK(recognize(g.relabeled(random_perm(g.order(), rng))) == recognize(g));
    }
  }
}

TEST_CASE("isomorphism, canonical form and hashing") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 3 + rep % 8;
    Graph g = random_graph(n, 0.5, rng);
    auto perm = random_perm(n, rng);
    Graph h = g.relabeled(perm);
    auto iso = find_isomorphism(g, h);
    REQUIRE(iso.has_value());
    CHECK(h == g.relabeled(*iso));
    CHECK(canonical_form(g) == canonical_form(h));
  }
  CHECK(canonical_form(Graph::path(4)) != canonical_form(double_star(2, 0)));
  CHECK(graph_hash(Graph::path(4)) != graph_hash(Graph::path(4).relabeled(std::vector<int>{1, 0, 2, 3})));
}

TEST_CASE("spanning embedding") {
  Graph big = Graph::complete(5);
  big.remove_edge(0, 1);
  auto perm = find_spanning_embedding(Graph::cycle(5), big);
  REQUIRE(perm.has_value());
  Graph placed = Graph::cycle(5).relabeled(*perm);
  for (auto [u, v] : placed.edges()) CHECK(big.adjacent(u, v));
  CHECK_FALSE(find_spanning_embedding(Graph::complete(4), Graph::cycle(4)).has_value());
}

TEST_CASE("isomorphism class counts by edge number") {
  // Graph atlas counts (OEIS A008406 rows 5-7).
  const std::vector<std::pair<int, std::vector<std::size_t>>> table = {
      {5, {1, 1, 2, 4, 6, 6, 6}}, {6, {1, 1, 2, 5, 9, 15, 21}}, {7, {1, 1, 2, 5, 10, 21, 41}}};
  for (const auto& [n, counts] : table) {
    const auto levels = nonisomorphic_graphs(n, static_cast<int>(counts.size()) - 1);
    for (std::size_t e = 0; e < counts.size(); ++e) CHECK(levels[e].size() == counts[e]);
  }
  CHECK(nonisomorphic_graphs(12, 6)[6].size() > 0);
}
