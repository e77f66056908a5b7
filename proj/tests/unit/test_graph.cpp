#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "rwdom/error.hpp"
#include "rwdom/graph.hpp"
#include "support.hpp"

using namespace rwdom;
using rwdom::testing::EdgeList;

namespace {

ErrorCode error_code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an rwdom::Error");
  return ErrorCode::kInvalidArgument;
}

std::vector<NodeId> to_vector(std::span<const NodeId> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("parse: path graph") {
  const Graph g = parse_edge_list("0 1\n1 2\n");
  CHECK(g.num_nodes() == 3);
  CHECK(g.num_edges() == 2);
  CHECK(to_vector(g.neighbors(1)) == std::vector<NodeId>{0, 2});
}

TEST_CASE("parse: duplicate and reversed lines collapse") {
  const Graph g = parse_edge_list("0 1\n1 0\n0 1\n");
  CHECK(g.num_nodes() == 2);
  CHECK(g.num_edges() == 1);
}

TEST_CASE("parse: self-loop rejected unless skipped") {
  CHECK(error_code_of([] { parse_edge_list("0 0\n"); }) == ErrorCode::kRejectedEdge);
  ParseOptions skip;
  skip.skip_self_loops = true;
  const Graph g = parse_edge_list("0 0\n0 1\n", skip);
  CHECK(g.num_edges() == 1);
}

TEST_CASE("parse: malformed lines report their line number") {
  for (const char* text : {"0 1\n1 x\n", "0 1\n1\n", "0 1\n1 2 3\n", "0 1\n-1 2\n"}) {
    try {
      parse_edge_list(text);
      FAIL("expected parse error for " << text);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kParse);
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
}

TEST_CASE("parse: comments, blank lines and mixed whitespace") {
  const Graph g = parse_edge_list("# header\n\n0\t1\n   1    2   \n# 5 6\n\r\n2 0\r\n");
  CHECK(g.num_nodes() == 3);
  CHECK(g.num_edges() == 3);
}

TEST_CASE("parse: empty input is an error") {
  CHECK(error_code_of([] { parse_edge_list(""); }) == ErrorCode::kEmptyGraph);
  CHECK(error_code_of([] { parse_edge_list("# nothing\n"); }) == ErrorCode::kEmptyGraph);
}

TEST_CASE("parse: sparse ids are remapped densely and kept for output") {
  const Graph g = parse_edge_list("100 7\n7 5000000000\n");
  REQUIRE(g.num_nodes() == 3);
  CHECK(g.external_id(0) == 7);
  CHECK(g.external_id(1) == 100);
  CHECK(g.external_id(2) == 5000000000ULL);
  NodeId id = 99;
  CHECK(g.find_node(100, id));
  CHECK(id == 1);
  CHECK_FALSE(g.find_node(8, id));
  CHECK(to_vector(g.neighbors(0)) == std::vector<NodeId>{1, 2});
}

TEST_CASE("isolated nodes: strict rejects, permissive keeps") {
  const EdgeList edges{{0, 1}};
  CHECK(error_code_of([&] { Graph::from_edges(3, edges); }) == ErrorCode::kIsolatedNode);
  const Graph g = Graph::from_edges(3, edges, IsolatedPolicy::kSelfLoop);
  CHECK(g.is_isolated(2));
  CHECK(g.transition_prob(2, 2) == 1.0);
  CHECK(g.transition_prob(2, 0) == 0.0);
  // A skipped self-loop still declares its node, so strict mode rejects it.
  ParseOptions skip;
  skip.skip_self_loops = true;
  CHECK(error_code_of([&] { parse_edge_list("0 1\n2 2\n", skip); }) == ErrorCode::kIsolatedNode);
}

TEST_CASE("transition probabilities") {
  const Graph path = testing::path_graph(3);
  CHECK(path.transition_prob(1, 0) == doctest::Approx(0.5));
  CHECK(path.transition_prob(0, 2) == 0.0);
  const Graph star = testing::star_graph(4);
  CHECK(star.transition_prob(0, 3) == doctest::Approx(0.25));
  CHECK(error_code_of([&] { path.transition_prob(0, 7); }) == ErrorCode::kInvalidArgument);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = testing::random_graph(12, 0.3, rng);
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
      double total = 0;
      for (NodeId w = 0; w < g.num_nodes(); ++w) total += g.transition_prob(u, w);
      CHECK(std::abs(total - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("graph invariants: symmetry, sorted adjacency, degree sum") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = testing::random_graph(15, 0.25, rng);
    std::size_t degree_sum = 0;
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
      const auto nb = g.neighbors(u);
      CHECK(std::is_sorted(nb.begin(), nb.end()));
      CHECK(std::adjacent_find(nb.begin(), nb.end()) == nb.end());
      degree_sum += nb.size();
      for (NodeId v : nb) {
        CHECK(v != u);
        CHECK(g.has_edge(v, u));
      }
    }
    CHECK(degree_sum == 2 * g.num_edges());
  }
}

TEST_CASE("canonical serialization round-trips") {
  const Graph g = parse_edge_list("3 1\n1 2\n2 3\n0 3\n");
  const std::string text = to_edge_list(g);
  CHECK(text == "0 3\n1 2\n1 3\n2 3\n");
  CHECK(parse_edge_list(text) == g);

  const Graph sparse = parse_edge_list("10 20\n30 20\n");
  const std::string sparse_text = to_edge_list(sparse);
  CHECK(sparse_text == "10 20\n20 30\n");
  CHECK(parse_edge_list(sparse_text) == sparse);

  const std::string path = "rwdom_graph_roundtrip.el";
  save_edge_list(g, path);
  CHECK(load_edge_list(path) == g);
  std::remove(path.c_str());
  CHECK(error_code_of([] { load_edge_list("/nonexistent/graph.el"); }) == ErrorCode::kIo);
}

TEST_CASE("power-law generator") {
  SUBCASE("n=1000, 10 edges per node") {
    const Graph g = generate_power_law(1000, 10, 7);
    CHECK(g.num_nodes() == 1000);
    CHECK(g.num_edges() >= 9900);
    CHECK(g.num_edges() <= 10000);
  }
  SUBCASE("one edge per node gives a tree") {
    const Graph g = generate_power_law(5, 1, 1);
    CHECK(g.num_nodes() == 5);
    CHECK(g.num_edges() == 4);
    // Connected: breadth-first search reaches everything.
    std::vector<char> seen(5, 0);
    std::vector<NodeId> queue{0};
    seen[0] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (NodeId v : g.neighbors(queue[i])) {
        if (!seen[v]) {
          seen[v] = 1;
          queue.push_back(v);
        }
      }
    }
    CHECK(queue.size() == 5);
  }
  SUBCASE("deterministic in the seed") {
    CHECK(generate_power_law(500, 3, 42) == generate_power_law(500, 3, 42));
    CHECK_FALSE(generate_power_law(500, 3, 42) == generate_power_law(500, 3, 43));
  }
  SUBCASE("heavy-tailed degrees") {
    const Graph g = generate_power_law(2000, 4, 3);
    std::vector<std::size_t> degrees;
    for (NodeId u = 0; u < g.num_nodes(); ++u) degrees.push_back(g.degree(u));
    std::nth_element(degrees.begin(), degrees.begin() + degrees.size() / 2, degrees.end());
    CHECK(g.max_degree() >= 3 * degrees[degrees.size() / 2]);
  }
  SUBCASE("parameter errors") {
    CHECK(error_code_of([] { generate_power_law(3, 5, 1); }) == ErrorCode::kInvalidArgument);
    CHECK(error_code_of([] { generate_power_law(10, 0, 1); }) == ErrorCode::kInvalidArgument);
  }
}
