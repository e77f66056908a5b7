#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rwdom/exact.hpp"
#include "rwdom/graph.hpp"

namespace rwdom {

/// Parameters echoed into every selection and report.
struct RunConfig {
  std::string algorithm;
  std::size_t k = 0;
  std::uint32_t walk_length = 0;
  std::uint64_t samples = 0;  // R used during selection
  std::uint64_t seed = 0;
  bool lazy = false;
  bool trace = false;
  bool dominate_closed = false;
  unsigned threads = 1;
};

struct SelectionResult {
  std::vector<NodeId> selected;        // round order
  std::vector<double> gains;           // winning gain per round, as reported by the oracle
  std::vector<double> objective_trace; // objective after each round, when requested
  /// Reported gains equal true marginal gains plus this constant (the indexed
  /// problem-1 estimator omits the -L term).
  double gain_offset = 0.0;
  std::uint64_t oracle_calls = 0;
  std::vector<std::pair<std::string, double>> elapsed_ms;
  std::vector<std::string> warnings;
  RunConfig config;
};

/// Marginal-gain source for the greedy driver. gain() is evaluated against
/// the set built by prior commit() calls.
class GainOracle {
 public:
  virtual ~GainOracle() = default;

  virtual std::size_t num_nodes() const = 0;
  /// Must be safe to call concurrently when concurrent() is true.
  virtual double gain(NodeId u) const = 0;
  virtual void commit(NodeId u) = 0;
  /// Objective value of the current set, for traces.
  virtual double objective() const = 0;
  virtual bool concurrent() const { return true; }
  virtual double gain_offset() const { return 0.0; }
};

/// Exact gains from the dynamic program: F(S + u) - F(S).
class ExactGainOracle final : public GainOracle {
 public:
  ExactGainOracle(const Graph& g, std::uint32_t L, Problem kind);

  std::size_t num_nodes() const override { return g_.num_nodes(); }
  double gain(NodeId u) const override;
  void commit(NodeId u) override;
  double objective() const override { return current_; }

 private:
  const Graph& g_;
  std::uint32_t L_;
  Problem kind_;
  std::vector<char> in_set_;
  double current_ = 0.0;
};

/// Monte-Carlo gains F_hat(S + u) - F_hat(S). Both terms draw the same
/// per-(node, replicate) walks, so the difference only reflects u.
class SampledGainOracle final : public GainOracle {
 public:
  SampledGainOracle(const Graph& g, std::uint32_t L, std::uint64_t R, std::uint64_t seed,
                    Problem kind);

  std::size_t num_nodes() const override { return g_.num_nodes(); }
  double gain(NodeId u) const override;
  void commit(NodeId u) override;
  double objective() const override { return current_; }

 private:
  double estimate(std::span<const char> in_set, std::size_t size) const;

  const Graph& g_;
  std::uint32_t L_;
  std::uint64_t R_;
  std::uint64_t seed_;
  Problem kind_;
  std::vector<char> in_set_;
  std::size_t size_ = 0;
  double current_ = 0.0;
};

struct GreedyOptions {
  bool lazy = false;
  bool trace = false;
  unsigned threads = 1;
};

/// Gains closer than this are ties, resolved towards the lowest node id.
inline constexpr double kGainTieTolerance = 1e-9;

/// k rounds; each evaluates every remaining candidate and commits the argmax.
SelectionResult greedy_select(std::size_t k, GainOracle& oracle, const GreedyOptions& options = {});

/// Stale-bound priority queue variant. For submodular oracles it returns the
/// same selection and gains as greedy_select with fewer gain evaluations.
SelectionResult lazy_greedy_select(std::size_t k, GainOracle& oracle,
                                   const GreedyOptions& options = {});

}  // namespace rwdom
