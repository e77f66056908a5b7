/*
 * rwdom: target-node selection for random-walk domination.
 *
 * C interface to the shared library. Objects are opaque handles released
 * with the matching *_free function. Every fallible call returns an
 * rwdom_status; on failure rwdom_last_error() describes the problem for the
 * calling thread until its next failing call. Node ids passed across this
 * interface are dense internal ids 0..n-1; use rwdom_graph_external_id and
 * rwdom_graph_find_node to translate from and to the ids in input files.
 */
#ifndef RWDOM_RWDOM_H
#define RWDOM_RWDOM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RWDOM_API __declspec(dllexport)
#else
#define RWDOM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rwdom_status {
  RWDOM_OK = 0,
  RWDOM_ERR_INVALID_ARGUMENT = 1,
  RWDOM_ERR_PARSE = 2,
  RWDOM_ERR_REJECTED_EDGE = 3,
  RWDOM_ERR_ISOLATED_NODE = 4,
  RWDOM_ERR_EMPTY_GRAPH = 5,
  RWDOM_ERR_IO = 6,
  RWDOM_ERR_SIZE_GUARD = 7,
  RWDOM_ERR_UNDEFINED_METRIC = 8,
  RWDOM_ERR_STATE = 9,
  RWDOM_ERR_INTERNAL = 10
} rwdom_status;

typedef enum rwdom_problem {
  RWDOM_PROBLEM_HITTING_TIME = 1,   /* F1: total truncated hitting time */
  RWDOM_PROBLEM_HIT_PROBABILITY = 2 /* F2: expected number of hit nodes */
} rwdom_problem;

typedef struct rwdom_graph rwdom_graph;
typedef struct rwdom_selection rwdom_selection;
typedef struct rwdom_index rwdom_index;
typedef struct rwdom_report rwdom_report;

RWDOM_API const char* rwdom_version(void);
RWDOM_API const char* rwdom_status_string(rwdom_status status);
RWDOM_API const char* rwdom_last_error(void);

/* ---- graphs ---------------------------------------------------------- */

typedef struct rwdom_graph_options {
  int skip_self_loops;     /* drop "u u" lines instead of failing */
  int permissive_isolated; /* keep isolated nodes as absorbing states */
} rwdom_graph_options;

RWDOM_API void rwdom_graph_options_init(rwdom_graph_options* options);

/* Edge-list text: "<u> <v>" per line, '#' comments. options may be NULL. */
RWDOM_API rwdom_status rwdom_graph_parse(const char* text, size_t length,
                                         const rwdom_graph_options* options, rwdom_graph** out);
RWDOM_API rwdom_status rwdom_graph_load(const char* path, const rwdom_graph_options* options,
                                        rwdom_graph** out);
/* Preferential-attachment power-law graph, deterministic in seed. */
RWDOM_API rwdom_status rwdom_graph_generate(uint64_t num_nodes, uint64_t edges_per_node,
                                            uint64_t seed, rwdom_graph** out);
/* Canonical edge list: sorted "u v" lines with u < v, trailing newline. */
RWDOM_API rwdom_status rwdom_graph_save(const rwdom_graph* graph, const char* path);
RWDOM_API void rwdom_graph_free(rwdom_graph* graph);

RWDOM_API uint64_t rwdom_graph_num_nodes(const rwdom_graph* graph);
RWDOM_API uint64_t rwdom_graph_num_edges(const rwdom_graph* graph);
RWDOM_API rwdom_status rwdom_graph_degree(const rwdom_graph* graph, uint32_t node, uint64_t* out);
RWDOM_API rwdom_status rwdom_graph_external_id(const rwdom_graph* graph, uint32_t node,
                                               uint64_t* out);
RWDOM_API rwdom_status rwdom_graph_find_node(const rwdom_graph* graph, uint64_t external_id,
                                             uint32_t* out);
RWDOM_API rwdom_status rwdom_transition_prob(const rwdom_graph* graph, uint32_t from, uint32_t to,
                                             double* out);

/* ---- exact objectives ------------------------------------------------ */

RWDOM_API rwdom_status rwdom_objective(const rwdom_graph* graph, const uint32_t* targets,
                                       size_t target_count, uint32_t walk_length,
                                       rwdom_problem problem, double* out);

/* ---- selection ------------------------------------------------------- */

typedef struct rwdom_select_config {
  const char* algorithm; /* dpf1 dpf2 samplef1 samplef2 approxf1 approxf2 degree dominate */
  uint64_t k;
  uint32_t walk_length;
  uint64_t samples; /* R for sampled and approx algorithms */
  uint64_t seed;
  int lazy;
  int trace;
  int dominate_closed; /* dominate: count S itself as covered */
  int force;           /* skip the size guard */
  unsigned threads;    /* 0 = all cores; RWDOM_THREADS overrides */
} rwdom_select_config;

RWDOM_API void rwdom_select_config_init(rwdom_select_config* config);

RWDOM_API rwdom_status rwdom_select(const rwdom_graph* graph, const rwdom_select_config* config,
                                    rwdom_selection** out);
/* Approximate greedy over a prebuilt index; uses k, lazy, trace and threads. */
RWDOM_API rwdom_status rwdom_select_indexed(const rwdom_index* index,
                                            const rwdom_select_config* config,
                                            rwdom_selection** out);

RWDOM_API size_t rwdom_selection_size(const rwdom_selection* selection);
RWDOM_API const uint32_t* rwdom_selection_nodes(const rwdom_selection* selection);
RWDOM_API const double* rwdom_selection_gains(const rwdom_selection* selection);
RWDOM_API size_t rwdom_selection_trace_size(const rwdom_selection* selection);
RWDOM_API const double* rwdom_selection_trace(const rwdom_selection* selection);
RWDOM_API double rwdom_selection_gain_offset(const rwdom_selection* selection);
RWDOM_API uint64_t rwdom_selection_oracle_calls(const rwdom_selection* selection);
/* Wall-clock of a phase ("index", "select"); negative when the phase did not run. */
RWDOM_API double rwdom_selection_elapsed_ms(const rwdom_selection* selection, const char* phase);
RWDOM_API size_t rwdom_selection_warning_count(const rwdom_selection* selection);
RWDOM_API const char* rwdom_selection_warning(const rwdom_selection* selection, size_t i);
RWDOM_API void rwdom_selection_free(rwdom_selection* selection);

/* ---- evaluation ------------------------------------------------------ */

typedef struct rwdom_metric_config {
  uint32_t walk_length;
  uint64_t samples; /* R_eval */
  uint64_t seed;
  int exact; /* dynamic program instead of sampling */
  unsigned threads;
} rwdom_metric_config;

RWDOM_API void rwdom_metric_config_init(rwdom_metric_config* config);

RWDOM_API rwdom_status rwdom_metric_aht(const rwdom_graph* graph, const uint32_t* targets,
                                        size_t target_count, const rwdom_metric_config* config,
                                        double* out);
RWDOM_API rwdom_status rwdom_metric_ehn(const rwdom_graph* graph, const uint32_t* targets,
                                        size_t target_count, const rwdom_metric_config* config,
                                        double* out);
RWDOM_API uint64_t rwdom_evaluation_seed(uint64_t seed, uint64_t k);

typedef struct rwdom_sweep_config {
  const char* const* algorithms;
  size_t algorithm_count;
  const uint64_t* k_values;
  size_t k_count;
  uint32_t walk_length;
  uint64_t samples_select;
  uint64_t samples_eval;
  uint64_t seed;
  int exact_metrics;
  int lazy;
  int dominate_closed;
  int force;
  unsigned threads;
} rwdom_sweep_config;

typedef struct rwdom_report_row {
  const char* algorithm;
  uint64_t k;
  uint32_t walk_length;
  uint64_t samples_select;
  uint64_t samples_eval;
  uint64_t seed;
  double aht;
  double ehn;
  double select_ms;
  double eval_ms;
  const uint32_t* selected;
  size_t selected_count;
} rwdom_report_row;

RWDOM_API void rwdom_sweep_config_init(rwdom_sweep_config* config);
RWDOM_API rwdom_status rwdom_sweep(const rwdom_graph* graph, const rwdom_sweep_config* config,
                                   rwdom_report** out);
RWDOM_API size_t rwdom_report_size(const rwdom_report* report);
RWDOM_API rwdom_status rwdom_report_row_at(const rwdom_report* report, size_t i,
                                           rwdom_report_row* out);
/* CSV header: algorithm,k,L,R_select,R_eval,seed,aht,ehn,select_ms,eval_ms */
RWDOM_API rwdom_status rwdom_report_write_csv(const rwdom_report* report, const char* path);
RWDOM_API void rwdom_report_free(rwdom_report* report);

/* ---- walk sample index ----------------------------------------------- */

RWDOM_API rwdom_status rwdom_index_build(const rwdom_graph* graph, uint32_t walk_length,
                                         uint64_t samples, uint64_t seed, rwdom_problem problem,
                                         rwdom_index** out);
/*
 * Index over caller-supplied walks. Walk j occupies
 * nodes[offsets[j] .. offsets[j+1]) and starts with its source; walks are
 * ordered replicate-major (replicate 0 for nodes 0..n-1, then replicate 1,
 * ...), so walk_count must equal samples * n. Consecutive nodes must be
 * adjacent in graph.
 */
RWDOM_API rwdom_status rwdom_index_from_walks(const rwdom_graph* graph, uint32_t walk_length,
                                              uint64_t samples, rwdom_problem problem,
                                              const uint32_t* nodes, const uint64_t* offsets,
                                              size_t walk_count, rwdom_index** out);
RWDOM_API uint64_t rwdom_index_entry_count(const rwdom_index* index);
RWDOM_API uint64_t rwdom_index_memory_bytes(const rwdom_index* index);
/* "replicate target source weight" lines, sorted, input ids. */
RWDOM_API rwdom_status rwdom_index_dump(const rwdom_index* index, const char* path);
RWDOM_API void rwdom_index_free(rwdom_index* index);

#ifdef __cplusplus
}
#endif

#endif /* RWDOM_RWDOM_H */
