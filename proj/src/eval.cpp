#include "rwdom/eval.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <limits>
#include <ostream>

#include "rwdom/approx.hpp"
#include "rwdom/baselines.hpp"
#include "rwdom/error.hpp"
#include "rwdom/sampling.hpp"

namespace rwdom {

namespace {

constexpr std::array<std::pair<std::string_view, Algorithm>, 8> kAlgorithms{{
    {"dpf1", Algorithm::kDpF1},
    {"dpf2", Algorithm::kDpF2},
    {"samplef1", Algorithm::kSampleF1},
    {"samplef2", Algorithm::kSampleF2},
    {"approxf1", Algorithm::kApproxF1},
    {"approxf2", Algorithm::kApproxF2},
    {"degree", Algorithm::kDegree},
    {"dominate", Algorithm::kDominate},
}};

Problem problem_of(Algorithm a) {
  switch (a) {
    case Algorithm::kDpF2:
    case Algorithm::kSampleF2:
    case Algorithm::kApproxF2:
      return Problem::kHitProbability;
    default:
      return Problem::kHittingTime;
  }
}

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Sweep cells with k = 0 or k = n have undefined metrics; they report NaN.
template <typename F>
double metric_or_nan(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kUndefinedMetric) throw;
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

std::optional<Algorithm> parse_algorithm(std::string_view label) {
  for (auto [name, a] : kAlgorithms) {
    if (name == label) return a;
  }
  return std::nullopt;
}

std::string_view to_string(Algorithm a) noexcept {
  for (auto [name, b] : kAlgorithms) {
    if (a == b) return name;
  }
  return "unknown";
}

void check_size_guard(const Graph& g, Algorithm algorithm, std::size_t k, std::uint32_t L,
                      std::uint64_t R) {
  const double n = static_cast<double>(g.num_nodes());
  const double m = static_cast<double>(g.num_edges());
  const double kk = static_cast<double>(std::min(k, g.num_nodes()));
  const double l = static_cast<double>(std::max<std::uint32_t>(L, 1));
  double work = 0.0;
  switch (algorithm) {
    case Algorithm::kDpF1:
    case Algorithm::kDpF2:
      work = n * m * l * kk;
      break;
    case Algorithm::kSampleF1:
    case Algorithm::kSampleF2:
      work = n * n * static_cast<double>(R) * l * kk;
      break;
    default:
      return;
  }
  if (work > kWorkGuard) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", work);
    fail(ErrorCode::kSizeGuard,
         std::string(to_string(algorithm)) + " would need about " + buf +
             " operations on this graph (limit 1e12); use an approx algorithm or force the run");
  }
}

SelectionResult run_selection(const Graph& g, const RunConfig& config, bool force) {
  const auto algorithm = parse_algorithm(config.algorithm);
  if (!algorithm) fail(ErrorCode::kInvalidArgument, "unknown algorithm '" + config.algorithm + "'");
  if (!force) check_size_guard(g, *algorithm, config.k, config.walk_length, config.samples);

  GreedyOptions options;
  options.lazy = config.lazy;
  options.trace = config.trace;
  options.threads = config.threads;
  const Problem kind = problem_of(*algorithm);

  SelectionResult result;
  switch (*algorithm) {
    case Algorithm::kDpF1:
    case Algorithm::kDpF2: {
      ExactGainOracle oracle(g, config.walk_length, kind);
      result = config.lazy ? lazy_greedy_select(config.k, oracle, options)
                           : greedy_select(config.k, oracle, options);
      break;
    }
    case Algorithm::kSampleF1:
    case Algorithm::kSampleF2: {
      SampledGainOracle oracle(g, config.walk_length, config.samples, config.seed, kind);
      result = config.lazy ? lazy_greedy_select(config.k, oracle, options)
                           : greedy_select(config.k, oracle, options);
      break;
    }
    case Algorithm::kApproxF1:
    case Algorithm::kApproxF2:
      result = approx_greedy(g, config.k, config.walk_length, config.samples, kind, config.seed,
                             options);
      break;
    case Algorithm::kDegree:
      result = degree_select(g, config.k);
      break;
    case Algorithm::kDominate:
      result = dominate_select(g, config.k, {config.dominate_closed});
      break;
  }
  result.config = config;
  return result;
}

double metric_aht(const Graph& g, std::span<const NodeId> targets, std::uint32_t L,
                  std::uint64_t R_eval, std::uint64_t seed, const MetricOptions& options) {
  const auto in_set = membership(g.num_nodes(), targets);
  const auto size = static_cast<std::size_t>(std::count(in_set.begin(), in_set.end(), 1));
  if (size == 0) fail(ErrorCode::kUndefinedMetric, "AHT is undefined for an empty target set");
  if (size == g.num_nodes()) fail(ErrorCode::kUndefinedMetric, "AHT is undefined when S = V");
  const double outside = static_cast<double>(g.num_nodes() - size);

  if (options.exact) {
    std::vector<double> values, scratch;
    hit_values(g, in_set, L, Problem::kHittingTime, values, scratch);
    double total = 0.0;
    for (std::size_t u = 0; u < values.size(); ++u) {
      if (!in_set[u]) total += values[u];
    }
    return total / outside;
  }
  const auto e = estimate_objectives(g, in_set, size, L, R_eval, seed, {false, options.threads});
  return e.hitting_total / outside;
}

double metric_ehn(const Graph& g, std::span<const NodeId> targets, std::uint32_t L,
                  std::uint64_t R_eval, std::uint64_t seed, const MetricOptions& options) {
  const auto in_set = membership(g.num_nodes(), targets);
  const auto size = static_cast<std::size_t>(std::count(in_set.begin(), in_set.end(), 1));
  if (size == 0) fail(ErrorCode::kUndefinedMetric, "EHN is undefined for an empty target set");
  if (options.exact) {
    std::vector<double> values, scratch;
    hit_values(g, in_set, L, Problem::kHitProbability, values, scratch);
    return objective_from_values(values, in_set, L, Problem::kHitProbability);
  }
  return estimate_objectives(g, in_set, size, L, R_eval, seed, {false, options.threads}).f2_hat;
}

std::uint64_t evaluation_seed(std::uint64_t seed, std::size_t k) noexcept {
  return derive_seed(seed, 0x6576616c00000000ULL + k);  // "eval" + k
}

std::vector<MetricReport> run_sweep(const Graph& g, const SweepConfig& config) {
  for (const auto& label : config.algorithms) {
    if (!parse_algorithm(label)) fail(ErrorCode::kInvalidArgument, "unknown algorithm '" + label + "'");
  }
  std::vector<std::string> algorithms = config.algorithms;
  std::sort(algorithms.begin(), algorithms.end());
  algorithms.erase(std::unique(algorithms.begin(), algorithms.end()), algorithms.end());
  std::vector<std::size_t> ks = config.k_values;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

  if (!config.force) {
    for (const auto& label : algorithms) {
      for (std::size_t k : ks) {
        check_size_guard(g, *parse_algorithm(label), k, config.walk_length, config.samples_select);
      }
    }
  }

  std::vector<MetricReport> rows;
  for (const auto& label : algorithms) {
    for (std::size_t k : ks) {
      RunConfig run;
      run.algorithm = label;
      run.k = k;
      run.walk_length = config.walk_length;
      run.samples = config.samples_select;
      run.seed = config.seed;
      run.lazy = config.lazy;
      run.dominate_closed = config.dominate_closed;
      run.threads = config.threads;

      auto start = Clock::now();
      SelectionResult selection = run_selection(g, run, true);
      MetricReport row;
      row.select_ms = ms_since(start);
      row.algorithm = label;
      row.k = k;
      row.walk_length = config.walk_length;
      row.samples_select = config.samples_select;
      row.samples_eval = config.samples_eval;
      row.seed = config.seed;
      row.exact = config.exact_metrics;
      row.selected = selection.selected;

      start = Clock::now();
      const MetricOptions metric{config.exact_metrics, config.threads};
      const std::uint64_t eval_seed = evaluation_seed(config.seed, k);
      row.aht = metric_or_nan([&] {
        return metric_aht(g, row.selected, config.walk_length, config.samples_eval, eval_seed, metric);
      });
      row.ehn = metric_or_nan([&] {
        return metric_ehn(g, row.selected, config.walk_length, config.samples_eval, eval_seed, metric);
      });
      row.eval_ms = ms_since(start);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_report_csv(std::ostream& out, std::span<const MetricReport> rows) {
  out << kReportCsvHeader << '\n';
  char buf[512];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%zu,%u,%llu,%llu,%llu,%.12g,%.12g,%.12g,%.12g\n",
                  r.algorithm.c_str(), r.k, r.walk_length,
                  static_cast<unsigned long long>(r.samples_select),
                  static_cast<unsigned long long>(r.samples_eval),
                  static_cast<unsigned long long>(r.seed), r.aht, r.ehn, r.select_ms, r.eval_ms);
    out << buf;
  }
}

}  // namespace rwdom
