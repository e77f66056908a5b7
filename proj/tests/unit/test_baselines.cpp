#include <random>

#include "doctest.h"
#include "rwdom/baselines.hpp"
#include "support.hpp"

using namespace rwdom;
using Nodes = std::vector<NodeId>;

TEST_CASE("degree_select") {
  CHECK(degree_select(testing::star_graph(4), 1).selected == Nodes{0});
  CHECK(degree_select(testing::cycle_graph(6), 2).selected == Nodes{0, 1});
  const Nodes all = degree_select(testing::path_graph(4), 4).selected;
  CHECK(all == Nodes{1, 2, 0, 3});
  CHECK(degree_select(testing::path_graph(4), 0).selected.empty());
  const SelectionResult r = degree_select(testing::star_graph(3), 2);
  CHECK(r.gains == std::vector<double>{3, 1});
}

TEST_CASE("degree_select ignores edge order in the input") {
  const std::string a = "0 1\n1 2\n2 3\n3 0\n0 2\n4 0\n";
  const std::string b = "0 4\n2 0\n0 3\n3 2\n2 1\n1 0\n";
  CHECK(degree_select(parse_edge_list(a), 3).selected == degree_select(parse_edge_list(b), 3).selected);
}

TEST_CASE("dominate_select") {
  SUBCASE("star picks the centre") {
    const SelectionResult r = dominate_select(testing::star_graph(4), 1);
    CHECK(r.selected == Nodes{0});
    CHECK(r.gains == std::vector<double>{4});
  }
  SUBCASE("two disjoint stars pick both centres") {
    // Stars centred at 0 (leaves 1-3) and 4 (leaves 5-8).
    const Graph g = testing::make_graph(9, {{0, 1}, {0, 2}, {0, 3}, {4, 5}, {4, 6}, {4, 7}, {4, 8}});
    const SelectionResult r = dominate_select(g, 2);
    CHECK(r.selected == Nodes{4, 0});
    // Second round: N({0}) = {1,2,3}, none already in N({4}) = {5,6,7,8}.
    CHECK(r.gains == std::vector<double>{4, 3});
  }
  SUBCASE("k = 0") { CHECK(dominate_select(testing::star_graph(4), 0).selected.empty()); }
  SUBCASE("literal neighbourhood versus closed neighbourhood") {
    // Path 0-1-2: N({1}) = {0, 2}; a second pick adds only node 1 itself
    // via N({0}) = {1}, so under the literal rule the second gain is 1.
    const Graph path = testing::path_graph(3);
    const SelectionResult open = dominate_select(path, 2);
    CHECK(open.selected == Nodes{1, 0});
    CHECK(open.gains == std::vector<double>{2, 1});
    DominateOptions closed;
    closed.closed_neighborhood = true;
    const SelectionResult shut = dominate_select(path, 2, closed);
    CHECK(shut.selected == Nodes{1, 0});
    CHECK(shut.gains == std::vector<double>{3, 0});
  }
}

TEST_CASE("dominate coverage gains are nonincreasing and deterministic") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = testing::random_graph(25, 0.12, rng);
    const SelectionResult r = dominate_select(g, 8);
    for (std::size_t i = 1; i < r.gains.size(); ++i) CHECK(r.gains[i] <= r.gains[i - 1]);
    CHECK(dominate_select(g, 8).selected == r.selected);
  }
}
