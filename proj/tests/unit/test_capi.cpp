// Exercises the shared library purely through its C interface.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "rwdom/rwdom.h"

namespace {

const char kExampleGraph[] = "1 2\n2 3\n3 5\n2 5\n4 7\n5 7\n2 6\n6 7\n7 8\n1 6\n";

rwdom_graph* parse(const std::string& text) {
  rwdom_graph* g = nullptr;
  REQUIRE(rwdom_graph_parse(text.data(), text.size(), nullptr, &g) == RWDOM_OK);
  return g;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::string(rwdom_version()) == "0.1.0");
  CHECK(std::string(rwdom_status_string(RWDOM_ERR_SIZE_GUARD)) == "refused by size guard");
}

TEST_CASE("graph handle") {
  rwdom_graph* g = parse("0 1\n1 2\n");
  CHECK(rwdom_graph_num_nodes(g) == 3);
  CHECK(rwdom_graph_num_edges(g) == 2);
  uint64_t degree = 0;
  CHECK(rwdom_graph_degree(g, 1, &degree) == RWDOM_OK);
  CHECK(degree == 2);
  CHECK(rwdom_graph_degree(g, 9, &degree) == RWDOM_ERR_INVALID_ARGUMENT);
  double p = 0;
  CHECK(rwdom_transition_prob(g, 1, 0, &p) == RWDOM_OK);
  CHECK(p == 0.5);
  const uint32_t s[] = {2};
  double f1 = 0;
  CHECK(rwdom_objective(g, s, 1, 3, RWDOM_PROBLEM_HITTING_TIME, &f1) == RWDOM_OK);
  CHECK(std::abs(f1 - 4.5) <= 1e-9);
  rwdom_graph_free(g);
}

TEST_CASE("errors carry a status and a message") {
  rwdom_graph* g = nullptr;
  const std::string loop = "0 0\n";
  CHECK(rwdom_graph_parse(loop.data(), loop.size(), nullptr, &g) == RWDOM_ERR_REJECTED_EDGE);
  CHECK(g == nullptr);
  CHECK(std::string(rwdom_last_error()).find("self-loop") != std::string::npos);
  const std::string bad = "0 1\nx y\n";
  CHECK(rwdom_graph_parse(bad.data(), bad.size(), nullptr, &g) == RWDOM_ERR_PARSE);
  CHECK(std::string(rwdom_last_error()).find("line 2") != std::string::npos);
  CHECK(rwdom_graph_load("/nonexistent.el", nullptr, &g) == RWDOM_ERR_IO);
  CHECK(rwdom_graph_parse("0 1\n", 4, nullptr, nullptr) == RWDOM_ERR_INVALID_ARGUMENT);
  CHECK(rwdom_graph_generate(3, 5, 1, &g) == RWDOM_ERR_INVALID_ARGUMENT);

  rwdom_graph_options options;
  rwdom_graph_options_init(&options);
  options.skip_self_loops = 1;
  CHECK(rwdom_graph_parse(loop.data(), loop.size(), &options, &g) != RWDOM_OK);
  const std::string loop_and_edge = "0 0\n0 1\n";
  CHECK(rwdom_graph_parse(loop_and_edge.data(), loop_and_edge.size(), &options, &g) == RWDOM_OK);
  rwdom_graph_free(g);
}

TEST_CASE("worked example through injected walks") {
  rwdom_graph* g = parse(kExampleGraph);
  // Walks in input ids: (v1 v2 v3) ... (v8 v7 v4).
  const std::vector<std::vector<uint64_t>> walks = {{1, 2, 3}, {2, 3, 5}, {3, 2, 5}, {4, 7, 5},
                                                    {5, 2, 6}, {6, 7, 5}, {7, 5, 7}, {8, 7, 4}};
  std::vector<uint32_t> nodes;
  std::vector<uint64_t> offsets{0};
  for (const auto& w : walks) {
    for (uint64_t id : w) {
      uint32_t node = 0;
      REQUIRE(rwdom_graph_find_node(g, id, &node) == RWDOM_OK);
      nodes.push_back(node);
    }
    offsets.push_back(nodes.size());
  }
  rwdom_index* index = nullptr;
  REQUIRE(rwdom_index_from_walks(g, 2, 1, RWDOM_PROBLEM_HITTING_TIME, nodes.data(), offsets.data(),
                                 walks.size(), &index) == RWDOM_OK);
  CHECK(rwdom_index_entry_count(index) == 15);

  rwdom_select_config config;
  rwdom_select_config_init(&config);
  config.k = 2;
  rwdom_selection* sel = nullptr;
  REQUIRE(rwdom_select_indexed(index, &config, &sel) == RWDOM_OK);
  REQUIRE(rwdom_selection_size(sel) == 2);
  uint64_t first = 0, second = 0;
  rwdom_graph_external_id(g, rwdom_selection_nodes(sel)[0], &first);
  rwdom_graph_external_id(g, rwdom_selection_nodes(sel)[1], &second);
  CHECK(first == 2);
  CHECK(second == 7);
  CHECK(rwdom_selection_gains(sel)[0] == 5.0);
  CHECK(rwdom_selection_gain_offset(sel) == 0.0);
  CHECK(rwdom_selection_elapsed_ms(sel, "select") >= 0.0);
  CHECK(rwdom_selection_elapsed_ms(sel, "nonsense") < 0.0);
  rwdom_selection_free(sel);

  const std::string path = "rwdom_capi_dump.txt";
  REQUIRE(rwdom_index_dump(index, path.c_str()) == RWDOM_OK);
  const std::string dump = slurp(path);
  std::remove(path.c_str());
  CHECK(dump.rfind("0 2 1 1\n0 2 3 1\n0 2 5 1\n0 3 1 2\n", 0) == 0);
  rwdom_index_free(index);

  SUBCASE("walk validation") {
    std::vector<uint32_t> broken = nodes;
    broken[1] = broken[0];  // v1 -> v1 is not an edge
    CHECK(rwdom_index_from_walks(g, 2, 1, RWDOM_PROBLEM_HITTING_TIME, broken.data(), offsets.data(),
                                 walks.size(), &index) == RWDOM_ERR_INVALID_ARGUMENT);
    CHECK(rwdom_index_from_walks(g, 2, 1, RWDOM_PROBLEM_HITTING_TIME, nodes.data(), offsets.data(),
                                 walks.size() - 1, &index) == RWDOM_ERR_INVALID_ARGUMENT);
    CHECK(rwdom_index_from_walks(g, 2, 0, RWDOM_PROBLEM_HITTING_TIME, nodes.data(), offsets.data(), 0,
                                 &index) == RWDOM_ERR_INVALID_ARGUMENT);
  }
  rwdom_graph_free(g);
}

TEST_CASE("selection, metrics and sweep") {
  rwdom_graph* g = nullptr;
  REQUIRE(rwdom_graph_generate(300, 3, 4, &g) == RWDOM_OK);
  rwdom_select_config config;
  rwdom_select_config_init(&config);
  config.algorithm = "dpf1";
  config.k = 4;
  config.walk_length = 3;
  config.trace = 1;
  rwdom_selection* plain = nullptr;
  REQUIRE(rwdom_select(g, &config, &plain) == RWDOM_OK);
  config.lazy = 1;
  rwdom_selection* lazy = nullptr;
  REQUIRE(rwdom_select(g, &config, &lazy) == RWDOM_OK);
  REQUIRE(rwdom_selection_size(plain) == 4);
  REQUIRE(rwdom_selection_trace_size(plain) == 4);
  for (size_t i = 0; i < 4; ++i) CHECK(rwdom_selection_nodes(plain)[i] == rwdom_selection_nodes(lazy)[i]);
  CHECK(rwdom_selection_oracle_calls(lazy) < rwdom_selection_oracle_calls(plain));

  rwdom_metric_config mc;
  rwdom_metric_config_init(&mc);
  mc.walk_length = 3;
  mc.exact = 1;
  double aht = 0, ehn = 0;
  REQUIRE(rwdom_metric_aht(g, rwdom_selection_nodes(plain), 4, &mc, &aht) == RWDOM_OK);
  REQUIRE(rwdom_metric_ehn(g, rwdom_selection_nodes(plain), 4, &mc, &ehn) == RWDOM_OK);
  const double f1 = rwdom_selection_trace(plain)[3];
  CHECK(std::abs(aht - (300.0 * 3 - f1) / 296.0) <= 1e-9);
  CHECK(ehn >= 4.0);
  CHECK(rwdom_metric_aht(g, nullptr, 0, &mc, &aht) == RWDOM_ERR_UNDEFINED_METRIC);
  rwdom_selection_free(plain);
  rwdom_selection_free(lazy);

  config.algorithm = "degree";
  config.k = 500;
  rwdom_selection* clamped = nullptr;
  REQUIRE(rwdom_select(g, &config, &clamped) == RWDOM_OK);
  CHECK(rwdom_selection_size(clamped) == 300);
  CHECK(rwdom_selection_warning_count(clamped) == 1);
  rwdom_selection_free(clamped);

  config.algorithm = "unknown";
  rwdom_selection* none = nullptr;
  CHECK(rwdom_select(g, &config, &none) == RWDOM_ERR_INVALID_ARGUMENT);

  const char* algorithms[] = {"degree", "approxf2"};
  const uint64_t ks[] = {3, 6};
  rwdom_sweep_config sc;
  rwdom_sweep_config_init(&sc);
  sc.algorithms = algorithms;
  sc.algorithm_count = 2;
  sc.k_values = ks;
  sc.k_count = 2;
  sc.walk_length = 3;
  sc.samples_eval = 50;
  rwdom_report* report = nullptr;
  REQUIRE(rwdom_sweep(g, &sc, &report) == RWDOM_OK);
  REQUIRE(rwdom_report_size(report) == 4);
  rwdom_report_row row;
  REQUIRE(rwdom_report_row_at(report, 0, &row) == RWDOM_OK);
  CHECK(std::string(row.algorithm) == "approxf2");
  CHECK(row.k == 3);
  CHECK(row.selected_count == 3);
  CHECK(rwdom_report_row_at(report, 4, &row) == RWDOM_ERR_INVALID_ARGUMENT);
  const std::string path = "rwdom_capi_report.csv";
  REQUIRE(rwdom_report_write_csv(report, path.c_str()) == RWDOM_OK);
  CHECK(slurp(path).rfind("algorithm,k,L,R_select,R_eval,seed,aht,ehn,select_ms,eval_ms\n", 0) == 0);
  std::remove(path.c_str());
  rwdom_report_free(report);
  rwdom_graph_free(g);
}

TEST_CASE("size guard refusal") {
  rwdom_graph* g = nullptr;
  REQUIRE(rwdom_graph_generate(20000, 10, 1, &g) == RWDOM_OK);
  rwdom_select_config config;
  rwdom_select_config_init(&config);
  config.algorithm = "dpf1";
  config.k = 100;
  config.walk_length = 10;
  rwdom_selection* sel = nullptr;
  CHECK(rwdom_select(g, &config, &sel) == RWDOM_ERR_SIZE_GUARD);
  CHECK(std::string(rwdom_last_error()).find("force") != std::string::npos);
  rwdom_graph_free(g);
}

TEST_CASE("null handles are tolerated by accessors and free functions") {
  CHECK(rwdom_graph_num_nodes(nullptr) == 0);
  CHECK(rwdom_selection_size(nullptr) == 0);
  CHECK(rwdom_report_size(nullptr) == 0);
  rwdom_graph_free(nullptr);
  rwdom_selection_free(nullptr);
  rwdom_index_free(nullptr);
  rwdom_report_free(nullptr);
}
