// rwdom command-line front end. Talks to the library exclusively through the
// C API in rwdom/rwdom.h.

#include <sys/resource.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rwdom/rwdom.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitSizeGuard = 4;

// ---- error plumbing --------------------------------------------------------

struct CommandError {
  int exit_code;
  std::string message;
};

int exit_code_for(rwdom_status status) {
  switch (status) {
    case RWDOM_OK: return kExitOk;
    case RWDOM_ERR_INVALID_ARGUMENT: return kExitUsage;
    case RWDOM_ERR_SIZE_GUARD: return kExitSizeGuard;
    case RWDOM_ERR_INTERNAL: return kExitFailure;
    default: return kExitData;
  }
}

void check(rwdom_status status) {
  if (status != RWDOM_OK) throw CommandError{exit_code_for(status), rwdom_last_error()};
}

[[noreturn]] void usage_error(const std::string& message) { throw CommandError{kExitUsage, message}; }

[[noreturn]] void data_error(const std::string& message) { throw CommandError{kExitData, message}; }

struct GraphDeleter {
  void operator()(rwdom_graph* p) const { rwdom_graph_free(p); }
};
struct SelectionDeleter {
  void operator()(rwdom_selection* p) const { rwdom_selection_free(p); }
};
struct IndexDeleter {
  void operator()(rwdom_index* p) const { rwdom_index_free(p); }
};
struct ReportDeleter {
  void operator()(rwdom_report* p) const { rwdom_report_free(p); }
};
using GraphPtr = std::unique_ptr<rwdom_graph, GraphDeleter>;
using SelectionPtr = std::unique_ptr<rwdom_selection, SelectionDeleter>;
using IndexPtr = std::unique_ptr<rwdom_index, IndexDeleter>;
using ReportPtr = std::unique_ptr<rwdom_report, ReportDeleter>;

// ---- formatting helpers ----------------------------------------------------

// Objective values are written with 12 significant digits. The JSON writer
// emits the shortest round-trip form, so rounding first bounds the digits.
json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

long peak_rss_kb() {
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return usage.ru_maxrss;
}

// Writes to the named file, or to stdout when the name is empty or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::trunc);
      if (!file_) data_error("cannot open " + path + " for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void finish(const std::string& path) {
    stream().flush();
    if (!stream()) data_error("write error on " + (path.empty() ? std::string("stdout") : path));
  }

 private:
  std::ofstream file_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) data_error("cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

// ---- shared option groups -------------------------------------------------

struct GraphSource {
  std::string path;
  bool skip_self_loops = false;
  bool permissive_isolated = false;

  void add_options(CLI::App* cmd) {
    cmd->add_option("-g,--graph", path, "Edge-list file")->required()->check(CLI::ExistingFile);
    cmd->add_flag("--skip-self-loops", skip_self_loops, "Drop self-loop lines instead of failing");
    cmd->add_flag("--permissive-isolated", permissive_isolated,
                  "Keep isolated nodes as absorbing states instead of rejecting the graph");
  }

  GraphPtr load() const {
    rwdom_graph_options options;
    rwdom_graph_options_init(&options);
    options.skip_self_loops = skip_self_loops;
    options.permissive_isolated = permissive_isolated;
    rwdom_graph* g = nullptr;
    check(rwdom_graph_load(path.c_str(), &options, &g));
    return GraphPtr(g);
  }

  void echo(json& config) const {
    config["graph"] = path;
    config["skip_self_loops"] = skip_self_loops;
    config["permissive_isolated"] = permissive_isolated;
  }
};

uint32_t internal_id(const rwdom_graph* g, uint64_t external) {
  uint32_t id = 0;
  check(rwdom_graph_find_node(g, external, &id));
  return id;
}

uint64_t external_id(const rwdom_graph* g, uint32_t node) {
  uint64_t id = 0;
  check(rwdom_graph_external_id(g, node, &id));
  return id;
}

json external_ids(const rwdom_graph* g, const uint32_t* nodes, size_t count) {
  json out = json::array();
  for (size_t i = 0; i < count; ++i) out.push_back(external_id(g, nodes[i]));
  return out;
}

std::vector<uint64_t> parse_id_list(const std::string& text, const std::string& what) {
  std::vector<uint64_t> ids;
  std::string token;
  std::istringstream in(text);
  while (in >> token) {
    std::istringstream items(token);
    std::string item;
    while (std::getline(items, item, ',')) {
      if (item.empty()) continue;
      std::size_t used = 0;
      uint64_t value = 0;
      try {
        if (item[0] == '-') throw std::invalid_argument(item);
        value = std::stoull(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != item.size()) usage_error("invalid " + what + " '" + item + "'");
      ids.push_back(value);
    }
  }
  return ids;
}

std::string strip_comment(const std::string& line) {
  return line.substr(0, line.find('#'));
}

// Walk file: one walk per line, "<replicate> <source> <step1> ... <stepL>",
// replicates 0-based, nodes given by their edge-list ids. Every
// (replicate, node) pair must appear exactly once.
IndexPtr index_from_walk_file(const rwdom_graph* g, const std::string& path, uint32_t walk_length,
                              uint64_t samples, rwdom_problem problem) {
  const uint64_t n = rwdom_graph_num_nodes(g);
  std::vector<std::vector<uint32_t>> walks(samples * n);
  std::vector<char> seen(samples * n, 0);
  std::istringstream in(read_file(path));
  std::string line;
  for (size_t line_no = 1; std::getline(in, line); ++line_no) {
    std::istringstream fields(strip_comment(line));
    std::vector<uint64_t> values;
    uint64_t v = 0;
    while (fields >> v) values.push_back(v);
    if (!fields.eof()) data_error(path + ": line " + std::to_string(line_no) + ": expected integers");
    if (values.empty()) continue;
    if (values.size() < 2) {
      data_error(path + ": line " + std::to_string(line_no) + ": need a replicate and a source");
    }
    const uint64_t replicate = values[0];
    if (replicate >= samples) {
      data_error(path + ": line " + std::to_string(line_no) + ": replicate " +
                 std::to_string(replicate) + " is not below --samples " + std::to_string(samples));
    }
    std::vector<uint32_t> walk;
    for (size_t i = 1; i < values.size(); ++i) walk.push_back(internal_id(g, values[i]));
    const uint64_t slot = replicate * n + walk.front();
    if (seen[slot]) {
      data_error(path + ": line " + std::to_string(line_no) + ": duplicate walk for replicate " +
                 std::to_string(replicate) + " source " + std::to_string(values[1]));
    }
    seen[slot] = 1;
    walks[slot] = std::move(walk);
  }
  std::vector<uint32_t> nodes;
  std::vector<uint64_t> offsets{0};
  for (uint64_t slot = 0; slot < walks.size(); ++slot) {
    if (!seen[slot]) {
      data_error(path + ": missing walk for replicate " + std::to_string(slot / n) + " source " +
                 std::to_string(external_id(g, static_cast<uint32_t>(slot % n))));
    }
    nodes.insert(nodes.end(), walks[slot].begin(), walks[slot].end());
    offsets.push_back(nodes.size());
  }
  rwdom_index* index = nullptr;
  check(rwdom_index_from_walks(g, walk_length, samples, problem, nodes.data(), offsets.data(),
                               walks.size(), &index));
  return IndexPtr(index);
}

rwdom_problem problem_for_algorithm(const std::string& algorithm) {
  if (algorithm == "approxf1") return RWDOM_PROBLEM_HITTING_TIME;
  if (algorithm == "approxf2") return RWDOM_PROBLEM_HIT_PROBABILITY;
  usage_error("algorithm '" + algorithm + "' does not use a walk index (use approxf1 or approxf2)");
}

json artifact_header(const std::string& command) {
  json doc;
  doc["tool"] = "rwdom";
  doc["version"] = rwdom_version();
  doc["command"] = command;
  return doc;
}

std::string csv_preamble(const json& config) {
  return "# rwdom " + std::string(rwdom_version()) + " " + config.dump() + "\n";
}

const std::vector<std::string> kAlgorithms = {"dpf1",     "dpf2",     "samplef1", "samplef2",
                                              "approxf1", "approxf2", "degree",   "dominate"};

// ---- gen ------------------------------------------------------------------

struct GenArgs {
  uint64_t nodes = 0;
  uint64_t edges_per_node = 0;
  uint64_t seed = 1;
  std::string out;
};

int run_gen(const GenArgs& a) {
  rwdom_graph* raw = nullptr;
  check(rwdom_graph_generate(a.nodes, a.edges_per_node, a.seed, &raw));
  GraphPtr g(raw);
  check(rwdom_graph_save(g.get(), a.out.c_str()));
  std::cerr << "wrote " << a.out << ": n=" << rwdom_graph_num_nodes(g.get())
            << " m=" << rwdom_graph_num_edges(g.get()) << "\n";
  return kExitOk;
}

// ---- select ---------------------------------------------------------------

struct SelectArgs {
  GraphSource graph;
  std::string algorithm = "approxf1";
  uint64_t k = 10;
  uint32_t walk_length = 6;
  uint64_t samples = 100;
  uint64_t seed = 1;
  bool lazy = false;
  bool trace = false;
  bool dominate_closed = false;
  bool force = false;
  unsigned threads = 0;
  std::string walks;
  std::string out;
};

int run_select(const SelectArgs& a) {
  GraphPtr g = a.graph.load();
  rwdom_select_config config;
  rwdom_select_config_init(&config);
  config.algorithm = a.algorithm.c_str();
  config.k = a.k;
  config.walk_length = a.walk_length;
  config.samples = a.samples;
  config.seed = a.seed;
  config.lazy = a.lazy;
  config.trace = a.trace;
  config.dominate_closed = a.dominate_closed;
  config.force = a.force;
  config.threads = a.threads;

  rwdom_selection* raw = nullptr;
  std::optional<double> index_ms;
  if (!a.walks.empty()) {
    const auto start = std::chrono::steady_clock::now();
    IndexPtr index =
        index_from_walk_file(g.get(), a.walks, a.walk_length, a.samples, problem_for_algorithm(a.algorithm));
    index_ms = elapsed_ms(start);
    check(rwdom_select_indexed(index.get(), &config, &raw));
  } else {
    check(rwdom_select(g.get(), &config, &raw));
  }
  SelectionPtr sel(raw);

  json doc = artifact_header("select");
  json& cfg = doc["config"];
  a.graph.echo(cfg);
  cfg["algorithm"] = a.algorithm;
  cfg["k"] = a.k;
  cfg["walk_length"] = a.walk_length;
  cfg["samples"] = a.samples;
  cfg["seed"] = a.seed;
  cfg["lazy"] = a.lazy;
  cfg["trace"] = a.trace;
  cfg["dominate_closed"] = a.dominate_closed;
  cfg["force"] = a.force;
  cfg["threads"] = a.threads;
  cfg["walks"] = a.walks.empty() ? json(nullptr) : json(a.walks);

  const size_t count = rwdom_selection_size(sel.get());
  doc["selected"] = external_ids(g.get(), rwdom_selection_nodes(sel.get()), count);
  json gains = json::array();
  for (size_t i = 0; i < count; ++i) gains.push_back(number(rwdom_selection_gains(sel.get())[i]));
  doc["gains"] = gains;
  doc["gain_offset"] = number(rwdom_selection_gain_offset(sel.get()));
  json trace = json::array();
  for (size_t i = 0; i < rwdom_selection_trace_size(sel.get()); ++i) {
    trace.push_back(number(rwdom_selection_trace(sel.get())[i]));
  }
  doc["objective_trace"] = trace;
  doc["oracle_calls"] = rwdom_selection_oracle_calls(sel.get());
  json elapsed = json::object();
  if (index_ms) elapsed["index"] = number(*index_ms);
  for (const char* phase : {"index", "select"}) {
    const double ms = rwdom_selection_elapsed_ms(sel.get(), phase);
    if (ms >= 0) elapsed[phase] = number(ms);
  }
  doc["elapsed_ms"] = elapsed;
  json warnings = json::array();
  for (size_t i = 0; i < rwdom_selection_warning_count(sel.get()); ++i) {
    const char* w = rwdom_selection_warning(sel.get(), i);
    warnings.push_back(w);
    std::cerr << "warning: " << w << "\n";
  }
  doc["warnings"] = warnings;

  Output out(a.out);
  out.stream() << doc.dump(2) << "\n";
  out.finish(a.out);
  return kExitOk;
}

// ---- eval -----------------------------------------------------------------

struct EvalArgs {
  GraphSource graph;
  std::string targets;
  std::string targets_file;
  std::vector<std::string> algorithms;
  std::string ks;
  uint32_t walk_length = 6;
  uint64_t samples_select = 100;
  uint64_t samples_eval = 500;
  uint64_t seed = 1;
  bool exact = false;
  bool lazy = false;
  bool dominate_closed = false;
  bool force = false;
  unsigned threads = 0;
  std::string format = "csv";
  std::string out;
};

struct EvalRow {
  std::string algorithm;
  uint64_t k;
  uint64_t samples_select;
  uint64_t seed;
  double aht, ehn, select_ms, eval_ms;
  json selected;
};

double metric_or_nan(rwdom_status status, const double& value) {
  if (status == RWDOM_ERR_UNDEFINED_METRIC) return std::nan("");
  check(status);
  return value;
}

void write_eval(const EvalArgs& a, const json& config, const std::vector<EvalRow>& rows) {
  Output out(a.out);
  if (a.format == "json") {
    json doc = artifact_header("eval");
    doc["config"] = config;
    json array = json::array();
    for (const auto& r : rows) {
      json row;
      row["algorithm"] = r.algorithm;
      row["k"] = r.k;
      row["L"] = a.walk_length;
      row["R_select"] = r.samples_select;
      row["R_eval"] = a.samples_eval;
      row["seed"] = r.seed;
      row["aht"] = number(r.aht);
      row["ehn"] = number(r.ehn);
      row["select_ms"] = number(r.select_ms);
      row["eval_ms"] = number(r.eval_ms);
      row["selected"] = r.selected;
      array.push_back(row);
    }
    doc["rows"] = array;
    out.stream() << doc.dump(2) << "\n";
  } else {
    out.stream() << csv_preamble(config)
                 << "algorithm,k,L,R_select,R_eval,seed,aht,ehn,select_ms,eval_ms\n";
    for (const auto& r : rows) {
      out.stream() << r.algorithm << ',' << r.k << ',' << a.walk_length << ',' << r.samples_select << ','
                   << a.samples_eval << ',' << r.seed << ',' << csv_number(r.aht) << ','
                   << csv_number(r.ehn) << ',' << csv_number(r.select_ms) << ','
                   << csv_number(r.eval_ms) << '\n';
    }
  }
  out.finish(a.out);
}

int run_eval(const EvalArgs& a) {
  const bool sweep = !a.algorithms.empty();
  const bool targeted = !a.targets.empty() || !a.targets_file.empty();
  if (sweep == targeted) usage_error("eval needs exactly one of --targets/--targets-file or --algos");
  for (const auto& label : a.algorithms) {
    if (std::find(kAlgorithms.begin(), kAlgorithms.end(), label) == kAlgorithms.end()) {
      usage_error("unknown algorithm '" + label + "'");
    }
  }
  std::vector<uint64_t> ks = parse_id_list(a.ks, "k value");
  if (sweep && ks.empty()) usage_error("--algos requires --ks");

  GraphPtr g = a.graph.load();

  json config;
  a.graph.echo(config);
  config["walk_length"] = a.walk_length;
  config["samples_eval"] = a.samples_eval;
  config["seed"] = a.seed;
  config["exact_metrics"] = a.exact;
  config["threads"] = a.threads;

  std::vector<EvalRow> rows;
  if (targeted) {
    std::vector<uint64_t> ids;
    if (!a.targets.empty()) ids = parse_id_list(a.targets, "target id");
    if (!a.targets_file.empty()) {
      std::istringstream in(read_file(a.targets_file));
      std::string line, text;
      while (std::getline(in, line)) text += strip_comment(line) + "\n";
      auto more = parse_id_list(text, "target id");
      ids.insert(ids.end(), more.begin(), more.end());
    }
    if (ids.empty()) data_error("target set is empty");
    std::vector<uint32_t> nodes;
    for (uint64_t id : ids) nodes.push_back(internal_id(g.get(), id));
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    config["targets"] = external_ids(g.get(), nodes.data(), nodes.size());

    rwdom_metric_config mc;
    rwdom_metric_config_init(&mc);
    mc.walk_length = a.walk_length;
    mc.samples = a.samples_eval;
    mc.seed = a.seed;
    mc.exact = a.exact;
    mc.threads = a.threads;
    const auto start = std::chrono::steady_clock::now();
    double aht_value = 0, ehn_value = 0;
    const double aht =
        metric_or_nan(rwdom_metric_aht(g.get(), nodes.data(), nodes.size(), &mc, &aht_value), aht_value);
    const double ehn =
        metric_or_nan(rwdom_metric_ehn(g.get(), nodes.data(), nodes.size(), &mc, &ehn_value), ehn_value);
    if (std::isnan(aht)) std::cerr << "warning: AHT is undefined when every node is a target\n";
    rows.push_back({"given", nodes.size(), 0, a.seed, aht, ehn, 0.0, elapsed_ms(start),
                    external_ids(g.get(), nodes.data(), nodes.size())});
  } else {
    config["algorithms"] = a.algorithms;
    config["k_values"] = ks;
    config["samples_select"] = a.samples_select;
    config["lazy"] = a.lazy;
    config["dominate_closed"] = a.dominate_closed;
    config["force"] = a.force;
    std::vector<const char*> labels;
    for (const auto& s : a.algorithms) labels.push_back(s.c_str());
    rwdom_sweep_config sc;
    rwdom_sweep_config_init(&sc);
    sc.algorithms = labels.data();
    sc.algorithm_count = labels.size();
    sc.k_values = ks.data();
    sc.k_count = ks.size();
    sc.walk_length = a.walk_length;
    sc.samples_select = a.samples_select;
    sc.samples_eval = a.samples_eval;
    sc.seed = a.seed;
    sc.exact_metrics = a.exact;
    sc.lazy = a.lazy;
    sc.dominate_closed = a.dominate_closed;
    sc.force = a.force;
    sc.threads = a.threads;
    rwdom_report* raw = nullptr;
    check(rwdom_sweep(g.get(), &sc, &raw));
    ReportPtr report(raw);
    for (size_t i = 0; i < rwdom_report_size(report.get()); ++i) {
      rwdom_report_row r;
      check(rwdom_report_row_at(report.get(), i, &r));
      rows.push_back({r.algorithm, r.k, r.samples_select, r.seed, r.aht, r.ehn, r.select_ms, r.eval_ms,
                      external_ids(g.get(), r.selected, r.selected_count)});
    }
  }
  write_eval(a, config, rows);
  return kExitOk;
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
  std::vector<std::string> graphs;
  std::string gen_nodes;
  uint64_t edges_per_node = 10;
  uint64_t gen_seed = 1;
  std::vector<std::string> algorithms{"approxf1", "approxf2"};
  uint64_t k = 100;
  uint32_t walk_length = 6;
  uint64_t samples = 100;
  uint64_t seed = 1;
  bool lazy = true;
  unsigned threads = 0;
  std::string out;
};

int run_bench(const BenchArgs& a) {
  for (const auto& label : a.algorithms) problem_for_algorithm(label);
  std::vector<uint64_t> sizes = parse_id_list(a.gen_nodes, "node count");
  if (a.graphs.empty() == sizes.empty()) usage_error("bench needs exactly one of graph files or --gen-nodes");

  json config;
  config["graphs"] = a.graphs;
  config["gen_nodes"] = sizes;
  config["edges_per_node"] = a.edges_per_node;
  config["gen_seed"] = a.gen_seed;
  config["algorithms"] = a.algorithms;
  config["k"] = a.k;
  config["walk_length"] = a.walk_length;
  config["samples"] = a.samples;
  config["seed"] = a.seed;
  config["lazy"] = a.lazy;
  config["threads"] = a.threads;

  Output out(a.out);
  std::ostream& os = out.stream();
  os << csv_preamble(config)
     << "graph,n,m,algorithm,k,L,R,seed,load_ms,index_ms,select_ms,total_ms,index_entries,"
        "index_bytes,peak_rss_kb,status\n";
  os.flush();

  const size_t cells = std::max(a.graphs.size(), sizes.size());
  int failures = 0;
  for (size_t c = 0; c < cells; ++c) {
    const std::string name = a.graphs.empty() ? "gen:" + std::to_string(sizes[c]) : a.graphs[c];
    GraphPtr g;
    double load_ms = 0;
    std::string load_error;
    try {
      const auto start = std::chrono::steady_clock::now();
      rwdom_graph* raw = nullptr;
      if (a.graphs.empty()) {
        check(rwdom_graph_generate(sizes[c], a.edges_per_node, a.gen_seed, &raw));
      } else {
        check(rwdom_graph_load(a.graphs[c].c_str(), nullptr, &raw));
      }
      g.reset(raw);
      load_ms = elapsed_ms(start);
    } catch (const CommandError& e) {
      load_error = e.message;
    }
    const uint64_t n = g ? rwdom_graph_num_nodes(g.get()) : 0;
    const uint64_t m = g ? rwdom_graph_num_edges(g.get()) : 0;
    for (const auto& label : a.algorithms) {
      double index_ms = 0, select_ms = 0;
      uint64_t entries = 0, bytes = 0;
      std::string status = load_error.empty() ? "ok" : load_error;
      if (load_error.empty()) {
        try {
          auto start = std::chrono::steady_clock::now();
          rwdom_index* raw = nullptr;
          check(rwdom_index_build(g.get(), a.walk_length, a.samples, a.seed, problem_for_algorithm(label),
                                  &raw));
          IndexPtr index(raw);
          index_ms = elapsed_ms(start);
          entries = rwdom_index_entry_count(index.get());
          bytes = rwdom_index_memory_bytes(index.get());
          rwdom_select_config sc;
          rwdom_select_config_init(&sc);
          sc.algorithm = label.c_str();
          sc.k = a.k;
          sc.lazy = a.lazy;
          sc.threads = a.threads;
          start = std::chrono::steady_clock::now();
          rwdom_selection* sel = nullptr;
          check(rwdom_select_indexed(index.get(), &sc, &sel));
          rwdom_selection_free(sel);
          select_ms = elapsed_ms(start);
        } catch (const CommandError& e) {
          status = e.message;
        }
      }
      if (status != "ok") {
        ++failures;
        std::cerr << "bench: " << name << " " << label << ": " << status << "\n";
        for (char& ch : status) {
          if (ch == ',' || ch == '\n') ch = ';';
        }
      }
      os << name << ',' << n << ',' << m << ',' << label << ',' << a.k << ',' << a.walk_length << ','
         << a.samples << ',' << a.seed << ',' << csv_number(load_ms) << ',' << csv_number(index_ms) << ','
         << csv_number(select_ms) << ',' << csv_number(index_ms + select_ms) << ',' << entries << ','
         << bytes << ',' << peak_rss_kb() << ',' << status << '\n';
      os.flush();
    }
  }
  out.finish(a.out);
  return failures == 0 ? kExitOk : kExitData;
}

// ---- dump-index -------------------------------------------------------------

struct DumpArgs {
  GraphSource graph;
  std::string algorithm = "approxf1";
  uint32_t walk_length = 6;
  uint64_t samples = 100;
  uint64_t seed = 1;
  std::string walks;
  std::string out;
};

int run_dump(const DumpArgs& a) {
  GraphPtr g = a.graph.load();
  const rwdom_problem problem = problem_for_algorithm(a.algorithm);
  IndexPtr index;
  if (!a.walks.empty()) {
    index = index_from_walk_file(g.get(), a.walks, a.walk_length, a.samples, problem);
  } else {
    rwdom_index* raw = nullptr;
    check(rwdom_index_build(g.get(), a.walk_length, a.samples, a.seed, problem, &raw));
    index.reset(raw);
  }
  const std::string path = a.out.empty() ? "/dev/stdout" : a.out;
  check(rwdom_index_dump(index.get(), path.c_str()));
  std::cerr << "index: " << rwdom_index_entry_count(index.get()) << " entries, "
            << rwdom_index_memory_bytes(index.get()) << " bytes\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random-walk domination: choose k target nodes that random walks reach quickly"};
  app.set_version_flag("--version", std::string("rwdom ") + rwdom_version());
  app.require_subcommand(1);

  auto positive = CLI::PositiveNumber;
  auto algorithm_check = CLI::IsMember(kAlgorithms);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a preferential-attachment power-law graph");
  gen_cmd->add_option("--nodes", gen.nodes, "Number of nodes")->required()->check(positive);
  gen_cmd->add_option("--edges-per-node", gen.edges_per_node, "Edges added per new node")
      ->required()
      ->check(positive);
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  gen_cmd->add_option("-o,--out", gen.out, "Output edge-list file")->required();

  SelectArgs sel;
  auto* sel_cmd = app.add_subcommand("select", "Select k target nodes");
  sel.graph.add_options(sel_cmd);
  sel_cmd->add_option("-a,--algo", sel.algorithm, "Algorithm")->check(algorithm_check)->capture_default_str();
  sel_cmd->add_option("-k,--k", sel.k, "Number of targets")->capture_default_str();
  sel_cmd->add_option("-L,--walk-len", sel.walk_length, "Walk length L")->capture_default_str();
  sel_cmd->add_option("-R,--samples", sel.samples, "Walk samples R per node")
      ->check(positive)
      ->capture_default_str();
  sel_cmd->add_option("--seed", sel.seed, "Random seed")->capture_default_str();
  sel_cmd->add_flag("--lazy", sel.lazy, "Lazy (priority-queue) greedy evaluation");
  sel_cmd->add_flag("--trace", sel.trace, "Record the objective after every round");
  sel_cmd->add_flag("--dominate-closed", sel.dominate_closed, "dominate: count targets as covered");
  sel_cmd->add_flag("--force", sel.force, "Run exact algorithms beyond the size guard");
  sel_cmd->add_option("--threads", sel.threads, "Worker threads (0 = all cores)");
  sel_cmd->add_option("--walks", sel.walks, "Build the index from a walk file instead of sampling")
      ->check(CLI::ExistingFile);
  sel_cmd->add_option("-o,--out", sel.out, "Output JSON file (default stdout)");

  EvalArgs ev;
  auto* ev_cmd = app.add_subcommand("eval", "Evaluate AHT/EHN for a target set or an algorithm sweep");
  ev.graph.add_options(ev_cmd);
  ev_cmd->add_option("-t,--targets", ev.targets, "Comma-separated target node ids");
  ev_cmd->add_option("--targets-file", ev.targets_file, "File of target node ids")->check(CLI::ExistingFile);
  ev_cmd->add_option("--algos", ev.algorithms, "Algorithms to sweep")->delimiter(',')->check(algorithm_check);
  ev_cmd->add_option("--ks", ev.ks, "Comma-separated k values for the sweep");
  ev_cmd->add_option("-L,--walk-len", ev.walk_length, "Walk length L")->capture_default_str();
  ev_cmd->add_option("--samples-select", ev.samples_select, "R for sampled/approx selection")
      ->check(positive)
      ->capture_default_str();
  ev_cmd->add_option("-R,--samples,--samples-eval", ev.samples_eval, "R for metric estimation")
      ->check(positive)
      ->capture_default_str();
  ev_cmd->add_option("--seed", ev.seed, "Random seed")->capture_default_str();
  ev_cmd->add_flag("--exact", ev.exact, "Compute metrics with the dynamic program");
  ev_cmd->add_flag("--lazy", ev.lazy, "Lazy greedy evaluation during the sweep");
  ev_cmd->add_flag("--dominate-closed", ev.dominate_closed, "dominate: count targets as covered");
  ev_cmd->add_flag("--force", ev.force, "Run exact algorithms beyond the size guard");
  ev_cmd->add_option("--threads", ev.threads, "Worker threads (0 = all cores)");
  ev_cmd->add_option("--format", ev.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  ev_cmd->add_option("-o,--out", ev.out, "Output file (default stdout)");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time approximate greedy over a series of graphs");
  bench_cmd->add_option("graphs", bench.graphs, "Edge-list files")->check(CLI::ExistingFile);
  bench_cmd->add_option("--gen-nodes", bench.gen_nodes, "Comma-separated node counts to generate");
  bench_cmd->add_option("--edges-per-node", bench.edges_per_node, "Generator edges per node")
      ->check(positive)
      ->capture_default_str();
  bench_cmd->add_option("--gen-seed", bench.gen_seed, "Generator seed")->capture_default_str();
  bench_cmd->add_option("--algos", bench.algorithms, "approxf1 and/or approxf2")
      ->delimiter(',')
      ->check(CLI::IsMember({"approxf1", "approxf2"}));
  bench_cmd->add_option("-k,--k", bench.k, "Number of targets")->capture_default_str();
  bench_cmd->add_option("-L,--walk-len", bench.walk_length, "Walk length L")->capture_default_str();
  bench_cmd->add_option("-R,--samples", bench.samples, "Walk samples R per node")
      ->check(positive)
      ->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Walk seed")->capture_default_str();
  bench_cmd->add_flag("--lazy,!--no-lazy", bench.lazy, "Lazy greedy evaluation (default on)");
  bench_cmd->add_option("--threads", bench.threads, "Worker threads (0 = all cores)");
  bench_cmd->add_option("-o,--out", bench.out, "Output CSV file (default stdout)");

  DumpArgs dump;
  auto* dump_cmd = app.add_subcommand("dump-index", "Write the walk-sample inverted index as text");
  dump.graph.add_options(dump_cmd);
  dump_cmd->add_option("-a,--algo", dump.algorithm, "approxf1 or approxf2")
      ->check(CLI::IsMember({"approxf1", "approxf2"}))
      ->capture_default_str();
  dump_cmd->add_option("-L,--walk-len", dump.walk_length, "Walk length L")->capture_default_str();
  dump_cmd->add_option("-R,--samples", dump.samples, "Walk samples R per node")
      ->check(positive)
      ->capture_default_str();
  dump_cmd->add_option("--seed", dump.seed, "Random seed")->capture_default_str();
  dump_cmd->add_option("--walks", dump.walks, "Walk file to index instead of sampling")
      ->check(CLI::ExistingFile);
  dump_cmd->add_option("-o,--out", dump.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*sel_cmd) return run_select(sel);
    if (*ev_cmd) return run_eval(ev);
    if (*bench_cmd) return run_bench(bench);
    if (*dump_cmd) return run_dump(dump);
  } catch (const CommandError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
