#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rwdom/greedy.hpp"

namespace rwdom {

enum class Algorithm { kDpF1, kDpF2, kSampleF1, kSampleF2, kApproxF1, kApproxF2, kDegree, kDominate };

std::optional<Algorithm> parse_algorithm(std::string_view label);
std::string_view to_string(Algorithm a) noexcept;

/// Estimated work above which dynamic-program and per-candidate sampling
/// greedy runs are refused unless forced.
inline constexpr double kWorkGuard = 1e12;

/// Throws ErrorCode::kSizeGuard when the algorithm's estimated cost on g
/// exceeds kWorkGuard: n*m*L*k for dpf*, n*n*R*L*k for samplef*.
void check_size_guard(const Graph& g, Algorithm algorithm, std::size_t k, std::uint32_t L,
                      std::uint64_t R);

/// Runs the labelled selector with the given parameters; config is echoed in
/// the result.
SelectionResult run_selection(const Graph& g, const RunConfig& config, bool force = false);

struct MetricReport {
  std::string algorithm;
  std::size_t k = 0;
  std::uint32_t walk_length = 0;
  std::uint64_t samples_select = 0;
  std::uint64_t samples_eval = 0;
  std::uint64_t seed = 0;
  double aht = 0.0;
  double ehn = 0.0;
  double select_ms = 0.0;
  double eval_ms = 0.0;
  bool exact = false;
  std::vector<NodeId> selected;
};

struct MetricOptions {
  /// Use the dynamic program instead of sampling (noise-free, O(mL)).
  bool exact = false;
  unsigned threads = 1;
};

/// Average truncated hitting time over V \ S. S must be neither empty nor V.
double metric_aht(const Graph& g, std::span<const NodeId> targets, std::uint32_t L,
                  std::uint64_t R_eval, std::uint64_t seed, const MetricOptions& options = {});
/// Expected number of nodes whose walk hits S, members included. S nonempty.
double metric_ehn(const Graph& g, std::span<const NodeId> targets, std::uint32_t L,
                  std::uint64_t R_eval, std::uint64_t seed, const MetricOptions& options = {});

/// Seed used to score selections made with `seed` at budget k.
std::uint64_t evaluation_seed(std::uint64_t seed, std::size_t k) noexcept;

struct SweepConfig {
  std::vector<std::string> algorithms;
  std::vector<std::size_t> k_values;
  std::uint32_t walk_length = 6;
  std::uint64_t samples_select = 100;
  std::uint64_t samples_eval = 500;
  std::uint64_t seed = 1;
  bool exact_metrics = false;
  bool lazy = false;
  bool dominate_closed = false;
  bool force = false;
  unsigned threads = 1;
};

/// One row per (algorithm, k), sorted by (algorithm label, k).
std::vector<MetricReport> run_sweep(const Graph& g, const SweepConfig& config);

inline constexpr std::string_view kReportCsvHeader =
    "algorithm,k,L,R_select,R_eval,seed,aht,ehn,select_ms,eval_ms";

/// CSV with kReportCsvHeader, numbers at 12 significant digits.
void write_report_csv(std::ostream& out, std::span<const MetricReport> rows);

}  // namespace rwdom
