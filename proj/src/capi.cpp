#include "rwdom/rwdom.h"

#include <cmath>
#include <fstream>
#include <memory>
#include <new>
#include <string>

#include "rwdom/approx.hpp"
#include "rwdom/error.hpp"
#include "rwdom/eval.hpp"
#include "rwdom/parallel.hpp"
#include "rwdom/version.hpp"

struct rwdom_graph {
  std::shared_ptr<const rwdom::Graph> graph;
};

struct rwdom_selection {
  rwdom::SelectionResult result;
};

struct rwdom_index {
  std::shared_ptr<const rwdom::Graph> graph;
  rwdom::WalkSampleIndex index;
};

struct rwdom_report {
  std::vector<rwdom::MetricReport> rows;
};

namespace {

thread_local std::string last_error;

rwdom_status to_status(rwdom::ErrorCode code) {
  using rwdom::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return RWDOM_ERR_INVALID_ARGUMENT;
    case ErrorCode::kParse: return RWDOM_ERR_PARSE;
    case ErrorCode::kRejectedEdge: return RWDOM_ERR_REJECTED_EDGE;
    case ErrorCode::kIsolatedNode: return RWDOM_ERR_ISOLATED_NODE;
    case ErrorCode::kEmptyGraph: return RWDOM_ERR_EMPTY_GRAPH;
    case ErrorCode::kIo: return RWDOM_ERR_IO;
    case ErrorCode::kSizeGuard: return RWDOM_ERR_SIZE_GUARD;
    case ErrorCode::kUndefinedMetric: return RWDOM_ERR_UNDEFINED_METRIC;
    case ErrorCode::kState: return RWDOM_ERR_STATE;
  }
  return RWDOM_ERR_INTERNAL;
}

rwdom_status set_error(rwdom_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs body and converts any exception into a status code.
template <typename Body>
rwdom_status guarded(Body&& body) {
  try {
    body();
    return RWDOM_OK;
  } catch (const rwdom::Error& e) {
    return set_error(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(RWDOM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(RWDOM_ERR_INTERNAL, e.what());
  }
}

rwdom_status null_argument(const char* name) {
  return set_error(RWDOM_ERR_INVALID_ARGUMENT, std::string(name) + " must not be NULL");
}

rwdom::ParseOptions parse_options(const rwdom_graph_options* options) {
  rwdom::ParseOptions out;
  if (options) {
    out.skip_self_loops = options->skip_self_loops != 0;
    out.isolated = options->permissive_isolated ? rwdom::IsolatedPolicy::kSelfLoop
                                                : rwdom::IsolatedPolicy::kReject;
  }
  return out;
}

rwdom::Problem to_problem(rwdom_problem p) {
  switch (p) {
    case RWDOM_PROBLEM_HITTING_TIME: return rwdom::Problem::kHittingTime;
    case RWDOM_PROBLEM_HIT_PROBABILITY: return rwdom::Problem::kHitProbability;
  }
  rwdom::fail(rwdom::ErrorCode::kInvalidArgument, "unknown problem selector");
}

std::span<const rwdom::NodeId> node_span(const uint32_t* nodes, size_t count) {
  if (count > 0 && !nodes) rwdom::fail(rwdom::ErrorCode::kInvalidArgument, "node array is NULL");
  return {nodes, count};
}

rwdom::RunConfig run_config(const rwdom_select_config& c) {
  rwdom::RunConfig run;
  run.algorithm = c.algorithm ? c.algorithm : "";
  run.k = static_cast<std::size_t>(c.k);
  run.walk_length = c.walk_length;
  run.samples = c.samples;
  run.seed = c.seed;
  run.lazy = c.lazy != 0;
  run.trace = c.trace != 0;
  run.dominate_closed = c.dominate_closed != 0;
  run.threads = rwdom::resolve_threads(c.threads);
  return run;
}

}  // namespace

extern "C" {

const char* rwdom_version(void) { return rwdom::kVersion; }

const char* rwdom_status_string(rwdom_status status) {
  switch (status) {
    case RWDOM_OK: return "ok";
    case RWDOM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case RWDOM_ERR_PARSE: return "parse error";
    case RWDOM_ERR_REJECTED_EDGE: return "rejected edge";
    case RWDOM_ERR_ISOLATED_NODE: return "isolated node";
    case RWDOM_ERR_EMPTY_GRAPH: return "empty graph";
    case RWDOM_ERR_IO: return "i/o error";
    case RWDOM_ERR_SIZE_GUARD: return "refused by size guard";
    case RWDOM_ERR_UNDEFINED_METRIC: return "undefined metric";
    case RWDOM_ERR_STATE: return "invalid state";
    case RWDOM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* rwdom_last_error(void) { return last_error.c_str(); }

void rwdom_graph_options_init(rwdom_graph_options* options) {
  if (options) *options = rwdom_graph_options{0, 0};
}

rwdom_status rwdom_graph_parse(const char* text, size_t length, const rwdom_graph_options* options,
                               rwdom_graph** out) {
  if (!out) return null_argument("out");
  if (!text && length > 0) return null_argument("text");
  return guarded([&] {
    auto g = rwdom::parse_edge_list(std::string_view(text ? text : "", length), parse_options(options));
    *out = new rwdom_graph{std::make_shared<const rwdom::Graph>(std::move(g))};
  });
}

rwdom_status rwdom_graph_load(const char* path, const rwdom_graph_options* options, rwdom_graph** out) {
  if (!out) return null_argument("out");
  if (!path) return null_argument("path");
  return guarded([&] {
    auto g = rwdom::load_edge_list(path, parse_options(options));
    *out = new rwdom_graph{std::make_shared<const rwdom::Graph>(std::move(g))};
  });
}

rwdom_status rwdom_graph_generate(uint64_t num_nodes, uint64_t edges_per_node, uint64_t seed,
                                  rwdom_graph** out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    auto g = rwdom::generate_power_law(num_nodes, edges_per_node, seed);
    *out = new rwdom_graph{std::make_shared<const rwdom::Graph>(std::move(g))};
  });
}

rwdom_status rwdom_graph_save(const rwdom_graph* graph, const char* path) {
  if (!graph) return null_argument("graph");
  if (!path) return null_argument("path");
  return guarded([&] { rwdom::save_edge_list(*graph->graph, path); });
}

void rwdom_graph_free(rwdom_graph* graph) { delete graph; }

uint64_t rwdom_graph_num_nodes(const rwdom_graph* graph) {
  return graph ? graph->graph->num_nodes() : 0;
}

uint64_t rwdom_graph_num_edges(const rwdom_graph* graph) {
  return graph ? graph->graph->num_edges() : 0;
}

rwdom_status rwdom_graph_degree(const rwdom_graph* graph, uint32_t node, uint64_t* out) {
  if (!graph) return null_argument("graph");
  if (!out) return null_argument("out");
  if (!graph->graph->valid(node)) return set_error(RWDOM_ERR_INVALID_ARGUMENT, "node id out of range");
  *out = graph->graph->degree(node);
  return RWDOM_OK;
}

rwdom_status rwdom_graph_external_id(const rwdom_graph* graph, uint32_t node, uint64_t* out) {
  if (!graph) return null_argument("graph");
  if (!out) return null_argument("out");
  if (!graph->graph->valid(node)) return set_error(RWDOM_ERR_INVALID_ARGUMENT, "node id out of range");
  *out = graph->graph->external_id(node);
  return RWDOM_OK;
}

rwdom_status rwdom_graph_find_node(const rwdom_graph* graph, uint64_t external_id, uint32_t* out) {
  if (!graph) return null_argument("graph");
  if (!out) return null_argument("out");
  if (!graph->graph->find_node(external_id, *out)) {
    return set_error(RWDOM_ERR_INVALID_ARGUMENT,
                     "node " + std::to_string(external_id) + " is not in the graph");
  }
  return RWDOM_OK;
}

rwdom_status rwdom_transition_prob(const rwdom_graph* graph, uint32_t from, uint32_t to, double* out) {
  if (!graph) return null_argument("graph");
  if (!out) return null_argument("out");
  return guarded([&] { *out = graph->graph->transition_prob(from, to); });
}

rwdom_status rwdom_objective(const rwdom_graph* graph, const uint32_t* targets, size_t target_count,
                             uint32_t walk_length, rwdom_problem problem, double* out) {
  if (!graph) return null_argument("graph");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = rwdom::objective(*graph->graph, node_span(targets, target_count), walk_length,
                            to_problem(problem));
  });
}

void rwdom_select_config_init(rwdom_select_config* config) {
  if (!config) return;
  *config = rwdom_select_config{};
  config->algorithm = "approxf1";
  config->walk_length = 6;
  config->samples = 100;
  config->seed = 1;
}

rwdom_status rwdom_select(const rwdom_graph* graph, const rwdom_select_config* config,
                          rwdom_selection** out) {
  if (!graph) return null_argument("graph");
  if (!config) return null_argument("config");
  if (!out) return null_argument("out");
  return guarded([&] {
    auto result = rwdom::run_selection(*graph->graph, run_config(*config), config->force != 0);
    *out = new rwdom_selection{std::move(result)};
  });
}

rwdom_status rwdom_select_indexed(const rwdom_index* index, const rwdom_select_config* config,
                                  rwdom_selection** out) {
  if (!index) return null_argument("index");
  if (!config) return null_argument("config");
  if (!out) return null_argument("out");
  return guarded([&] {
    rwdom::RunConfig run = run_config(*config);
    rwdom::GreedyOptions options{run.lazy, run.trace, run.threads};
    auto result = rwdom::approx_greedy(index->index, run.k, options);
    run.walk_length = index->index.horizon();
    run.samples = index->index.replicates();
    if (run.algorithm.empty()) {
      run.algorithm = index->index.kind() == rwdom::Problem::kHittingTime ? "approxf1" : "approxf2";
    }
    result.config = run;
    *out = new rwdom_selection{std::move(result)};
  });
}

size_t rwdom_selection_size(const rwdom_selection* s) { return s ? s->result.selected.size() : 0; }

const uint32_t* rwdom_selection_nodes(const rwdom_selection* s) {
  return s ? s->result.selected.data() : nullptr;
}

const double* rwdom_selection_gains(const rwdom_selection* s) {
  return s ? s->result.gains.data() : nullptr;
}

size_t rwdom_selection_trace_size(const rwdom_selection* s) {
  return s ? s->result.objective_trace.size() : 0;
}

const double* rwdom_selection_trace(const rwdom_selection* s) {
  return s ? s->result.objective_trace.data() : nullptr;
}

double rwdom_selection_gain_offset(const rwdom_selection* s) { return s ? s->result.gain_offset : 0.0; }

uint64_t rwdom_selection_oracle_calls(const rwdom_selection* s) {
  return s ? s->result.oracle_calls : 0;
}

double rwdom_selection_elapsed_ms(const rwdom_selection* s, const char* phase) {
  if (!s || !phase) return -1.0;
  for (const auto& [name, ms] : s->result.elapsed_ms) {
    if (name == phase) return ms;
  }
  return -1.0;
}

size_t rwdom_selection_warning_count(const rwdom_selection* s) {
  return s ? s->result.warnings.size() : 0;
}

const char* rwdom_selection_warning(const rwdom_selection* s, size_t i) {
  if (!s || i >= s->result.warnings.size()) return nullptr;
  return s->result.warnings[i].c_str();
}

void rwdom_selection_free(rwdom_selection* selection) { delete selection; }

void rwdom_metric_config_init(rwdom_metric_config* config) {
  if (!config) return;
  *config = rwdom_metric_config{};
  config->walk_length = 6;
  config->samples = 500;
  config->seed = 1;
}

rwdom_status rwdom_metric_aht(const rwdom_graph* graph, const uint32_t* targets, size_t target_count,
                              const rwdom_metric_config* config, double* out) {
  if (!graph) return null_argument("graph");
  if (!config) return null_argument("config");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = rwdom::metric_aht(*graph->graph, node_span(targets, target_count), config->walk_length,
                             config->samples, config->seed,
                             {config->exact != 0, rwdom::resolve_threads(config->threads)});
  });
}

rwdom_status rwdom_metric_ehn(const rwdom_graph* graph, const uint32_t* targets, size_t target_count,
                              const rwdom_metric_config* config, double* out) {
  if (!graph) return null_argument("graph");
  if (!config) return null_argument("config");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = rwdom::metric_ehn(*graph->graph, node_span(targets, target_count), config->walk_length,
                             config->samples, config->seed,
                             {config->exact != 0, rwdom::resolve_threads(config->threads)});
  });
}

uint64_t rwdom_evaluation_seed(uint64_t seed, uint64_t k) {
  return rwdom::evaluation_seed(seed, static_cast<std::size_t>(k));
}

void rwdom_sweep_config_init(rwdom_sweep_config* config) {
  if (!config) return;
  *config = rwdom_sweep_config{};
  config->walk_length = 6;
  config->samples_select = 100;
  config->samples_eval = 500;
  config->seed = 1;
}

rwdom_status rwdom_sweep(const rwdom_graph* graph, const rwdom_sweep_config* config,
                         rwdom_report** out) {
  if (!graph) return null_argument("graph");
  if (!config) return null_argument("config");
  if (!out) return null_argument("out");
  if (config->algorithm_count > 0 && !config->algorithms) return null_argument("algorithms");
  if (config->k_count > 0 && !config->k_values) return null_argument("k_values");
  return guarded([&] {
    rwdom::SweepConfig sweep;
    for (size_t i = 0; i < config->algorithm_count; ++i) {
      if (!config->algorithms[i]) rwdom::fail(rwdom::ErrorCode::kInvalidArgument, "NULL algorithm label");
      sweep.algorithms.emplace_back(config->algorithms[i]);
    }
    for (size_t i = 0; i < config->k_count; ++i) sweep.k_values.push_back(config->k_values[i]);
    sweep.walk_length = config->walk_length;
    sweep.samples_select = config->samples_select;
    sweep.samples_eval = config->samples_eval;
    sweep.seed = config->seed;
    sweep.exact_metrics = config->exact_metrics != 0;
    sweep.lazy = config->lazy != 0;
    sweep.dominate_closed = config->dominate_closed != 0;
    sweep.force = config->force != 0;
    sweep.threads = rwdom::resolve_threads(config->threads);
    *out = new rwdom_report{rwdom::run_sweep(*graph->graph, sweep)};
  });
}

size_t rwdom_report_size(const rwdom_report* report) { return report ? report->rows.size() : 0; }

rwdom_status rwdom_report_row_at(const rwdom_report* report, size_t i, rwdom_report_row* out) {
  if (!report) return null_argument("report");
  if (!out) return null_argument("out");
  if (i >= report->rows.size()) return set_error(RWDOM_ERR_INVALID_ARGUMENT, "row index out of range");
  const auto& r = report->rows[i];
  *out = rwdom_report_row{r.algorithm.c_str(), r.k, r.walk_length, r.samples_select,
                          r.samples_eval, r.seed, r.aht, r.ehn, r.select_ms, r.eval_ms,
                          r.selected.data(), r.selected.size()};
  return RWDOM_OK;
}

rwdom_status rwdom_report_write_csv(const rwdom_report* report, const char* path) {
  if (!report) return null_argument("report");
  if (!path) return null_argument("path");
  return guarded([&] {
    std::ofstream out(path, std::ios::trunc);
    if (!out) rwdom::fail(rwdom::ErrorCode::kIo, std::string("cannot open ") + path);
    rwdom::write_report_csv(out, report->rows);
    if (!out) rwdom::fail(rwdom::ErrorCode::kIo, std::string("write error on ") + path);
  });
}

void rwdom_report_free(rwdom_report* report) { delete report; }

rwdom_status rwdom_index_build(const rwdom_graph* graph, uint32_t walk_length, uint64_t samples,
                               uint64_t seed, rwdom_problem problem, rwdom_index** out) {
  if (!graph) return null_argument("graph");
  if (!out) return null_argument("out");
  return guarded([&] {
    auto index = rwdom::WalkSampleIndex::build(*graph->graph, walk_length, samples, seed,
                                               to_problem(problem));
    *out = new rwdom_index{graph->graph, std::move(index)};
  });
}

rwdom_status rwdom_index_from_walks(const rwdom_graph* graph, uint32_t walk_length, uint64_t samples,
                                    rwdom_problem problem, const uint32_t* nodes,
                                    const uint64_t* offsets, size_t walk_count, rwdom_index** out) {
  if (!graph) return null_argument("graph");
  if (!out) return null_argument("out");
  if (walk_count > 0 && (!nodes || !offsets)) return null_argument("nodes/offsets");
  return guarded([&] {
    const rwdom::Graph& g = *graph->graph;
    const std::size_t n = g.num_nodes();
    rwdom::require(samples >= 1, "walk set is empty (need at least one replicate)");
    rwdom::require(walk_count == samples * n,
                   "expected " + std::to_string(samples * n) + " walks (R * n), got " +
                       std::to_string(walk_count));
    std::vector<std::vector<rwdom::Walk>> walks(samples, std::vector<rwdom::Walk>(n));
    for (size_t j = 0; j < walk_count; ++j) {
      rwdom::require(offsets[j] < offsets[j + 1], "walk " + std::to_string(j) + " is empty");
      const std::size_t i = j / n, w = j % n;
      rwdom::require(nodes[offsets[j]] == w, "walk " + std::to_string(j) +
                                                 " must start at node " + std::to_string(w));
      auto& walk = walks[i][w];
      walk.source = static_cast<rwdom::NodeId>(w);
      rwdom::NodeId prev = walk.source;
      for (uint64_t p = offsets[j] + 1; p < offsets[j + 1]; ++p) {
        const rwdom::NodeId v = nodes[p];
        rwdom::require(g.valid(v) && g.has_edge(prev, v),
                       "walk " + std::to_string(j) + " takes a step along a non-edge");
        walk.steps.push_back(v);
        prev = v;
      }
    }
    auto index = rwdom::WalkSampleIndex::from_walks(n, walk_length, walks, to_problem(problem));
    *out = new rwdom_index{graph->graph, std::move(index)};
  });
}

uint64_t rwdom_index_entry_count(const rwdom_index* index) {
  return index ? index->index.entry_count() : 0;
}

uint64_t rwdom_index_memory_bytes(const rwdom_index* index) {
  return index ? index->index.memory_bytes() : 0;
}

rwdom_status rwdom_index_dump(const rwdom_index* index, const char* path) {
  if (!index) return null_argument("index");
  if (!path) return null_argument("path");
  return guarded([&] {
    std::ofstream out(path, std::ios::trunc);
    if (!out) rwdom::fail(rwdom::ErrorCode::kIo, std::string("cannot open ") + path);
    index->index.dump(out, index->graph.get());
    if (!out) rwdom::fail(rwdom::ErrorCode::kIo, std::string("write error on ") + path);
  });
}

void rwdom_index_free(rwdom_index* index) { delete index; }

}  // extern "C"
