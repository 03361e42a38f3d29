#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "dcg/errors.hpp"
#include "dcg/fixtures.hpp"
#include "dcg/graph.hpp"
#include "dcg/rng.hpp"

using namespace dcg;

namespace {
NodeMask ns(std::initializer_list<int> nodes1) {
  NodeMask m = 0;
  for (int v : nodes1) m |= mask_bit(v - 1);
  return m;
}

Dcg random_graph(int p, Rng& rng, double density = 0.3) {
  Dcg g(p);
  for (int j = 0; j < p; ++j)
    for (int k = 0; k < p; ++k)
      if (j != k && uniform01(rng) < density) g.add_edge(j, k);
  return g;
}
}  // namespace

TEST_CASE("parse and serialize round-trip") {
  Dcg g = parse_graph("p=2\n1 -> 2\n");
  CHECK(g.p == 2);
  CHECK(g.has_edge(0, 1));
  CHECK(!g.has_edge(1, 0));
  CHECK(parse_graph(serialize_graph(g)) == g);

  Dcg loop = parse_graph(fixtures::kVirtualEdge4);
  CHECK(loop.edge_count() == 4);
  CHECK(loop.has_edge(2, 0));
  CHECK(parse_graph(serialize_graph(loop)) == loop);
}

TEST_CASE("parse accepts comments and blank lines") {
  Dcg g = parse_graph("# comment\np=3\n\n1 -> 2\n# another\n2 -> 3\n");
  CHECK(g.edge_count() == 2);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_graph("p=2\n1 -> 1\n"),
                       doctest::Contains("line 2"), ParseError);
  CHECK_THROWS_WITH_AS(parse_graph("p=2\n1 -> 3\n"),
                       doctest::Contains("line 2"), ParseError);
  CHECK_THROWS_AS(parse_graph("p=2\n1 => 2\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("1 -> 2\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("p=1\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("p=17\n"), ParseError);
}

TEST_CASE("graph codes are a bijection") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t code = 0; code < 64; ++code) {
    Dcg g = graph_from_code(3, code);
    CHECK(graph_code(g) == code);
    seen.insert(code);
  }
  CHECK(seen.size() == 64);
  CHECK(dcg_space_size(3) == 64);
  CHECK(dcg_space_size(5) == 1048576);
}

TEST_CASE("ancestry") {
  const Dcg loop = parse_graph(fixtures::kVirtualEdge4);
  CHECK(ancestors(loop, 0) == ns({1, 2, 3, 4}));

  const Dcg empty(3);
  CHECK(ancestors(empty, 1) == 0);

  const Dcg chain = parse_graph("p=3\n1 -> 2\n2 -> 3\n");
  CHECK(ancestors(chain, 2) == ns({1, 2}));
  CHECK(descendants(chain, 0) == ns({2, 3}));
  CHECK(ancestors_refl(chain, 2) == ns({1, 2, 3}));
}

TEST_CASE("ancestor/descendant duality") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Dcg g = random_graph(5, rng);
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k) {
        if (j == k) continue;
        CHECK(mask_test(ancestors(g, j), k) ==
              mask_test(descendants(g, k), j));
      }
  }
}

TEST_CASE("adjacency on the virtual-edge example") {
  const Dcg loop = parse_graph(fixtures::kVirtualEdge4);
  CHECK(adjacency(loop, 0, 3) == Adjacency::VirtualOnly);
  CHECK(adjacency(loop, 0, 1) == Adjacency::RealOnly);
  CHECK(adjacency(loop, 1, 3) == Adjacency::RealOnly);
  CHECK_THROWS_AS(adjacency(loop, 1, 1), std::invalid_argument);
}

TEST_CASE("adjacency is symmetric") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Dcg g = random_graph(5, rng, 0.4);
    for (int j = 0; j < 5; ++j)
      for (int k = j + 1; k < 5; ++k)
        CHECK(adjacency(g, j, k) == adjacency(g, k, j));
  }
}

TEST_CASE("DAGs never have virtual adjacencies") {
  Rng rng(13);
  int dags = 0;
  for (std::uint64_t code = 0; code < 4096; ++code) {
    Dcg g = graph_from_code(4, code);
    if (!is_dag(g)) continue;
    ++dags;
    for (int j = 0; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k) {
        Adjacency a = adjacency(g, j, k);
        CHECK(a != Adjacency::VirtualOnly);
        CHECK(a != Adjacency::RealAndVirtual);
      }
  }
  CHECK(dags == 543);  // number of 4-node labeled DAGs
}

TEST_CASE("dag counting at p=3") {
  int dags = 0;
  for (std::uint64_t code = 0; code < 64; ++code)
    dags += is_dag(graph_from_code(3, code));
  CHECK(dags == 25);
}

TEST_CASE("skeleton counts on the edge-count examples") {
  const struct {
    const char* text;
    int total, real;
  } cases[] = {{fixtures::kEdgeCountA, 9, 6},
               {fixtures::kEdgeCountB, 9, 9},
               {fixtures::kEdgeCountC, 7, 5},
               {fixtures::kEdgeCountD, 7, 7}};
  for (const auto& c : cases) {
    SkeletonInfo sk = skeleton(parse_graph(c.text));
    CHECK(sk.total_edges == c.total);
    CHECK(sk.real_edges == c.real);
  }
  SkeletonInfo empty = skeleton(Dcg(4));
  CHECK(empty.pairs.empty());
  CHECK(empty.total_edges == 0);
  CHECK(empty.real_edges == 0);
}

TEST_CASE("triple classification") {
  const Dcg loop = parse_graph(fixtures::kVirtualEdge4);
  CHECK(classify_triple(loop, 0, 1, 3) == TripleClass::Conductor);

  const Dcg vstructure = parse_graph("p=3\n1 -> 2\n3 -> 2\n");
  CHECK(classify_triple(vstructure, 0, 1, 2) ==
        TripleClass::PerfectNonConductor);

  const Dcg pairB = parse_graph(fixtures::kFeedbackPairB);
  CHECK(classify_triple(pairB, 0, 1, 3) == TripleClass::ImperfectNonConductor);
  const Dcg pairA = parse_graph(fixtures::kFeedbackPairA);
  CHECK(classify_triple(pairA, 0, 1, 3) == TripleClass::Conductor);

  // shielded: 1-3 adjacent
  const Dcg chain = parse_graph("p=3\n1 -> 2\n2 -> 3\n1 -> 3\n");
  CHECK(classify_triple(chain, 0, 1, 2) == TripleClass::NotUnshielded);
  CHECK_THROWS_AS(classify_triple(chain, 0, 0, 2), std::invalid_argument);
}

TEST_CASE("real subgraph ordering") {
  const Dcg empty(3);
  const Dcg single = parse_graph("p=3\n1 -> 2\n");
  Dcg twocycle = parse_graph("p=3\n1 -> 2\n2 -> 1\n");
  CHECK(is_real_subgraph(empty, single));
  CHECK(!is_real_subgraph(single, single));
  CHECK(is_real_subgraph(single, twocycle));
  CHECK(!is_real_subgraph(twocycle, single));
  CHECK_THROWS_AS(is_real_subgraph(Dcg(3), Dcg(4)), std::invalid_argument);
}
