#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rwdom/error.hpp"
#include "rwdom/graph.hpp"
#include "rwdom/rng.hpp"

namespace rwdom {

/// Positions visited after the source, one per step. Shorter than L only when
/// the walk starts on an isolated node of a permissive graph.
struct Walk {
  NodeId source = 0;
  std::vector<NodeId> steps;

  friend bool operator==(const Walk&, const Walk&) = default;
};

/// Core stepping loop shared by every sampler. Calls visit(step, node) for
/// steps 1..L; stops early when visit returns true. Returns the number of
/// steps taken.
template <typename Visit>
std::uint32_t walk_from(const Graph& g, NodeId source, std::uint32_t L, CounterStream& rng,
                        Visit&& visit) {
  const auto offsets = g.offsets();
  const auto adjacency = g.adjacency();
  NodeId u = source;
  for (std::uint32_t j = 1; j <= L; ++j) {
    const std::size_t begin = offsets[u];
    const std::size_t degree = offsets[u + 1] - begin;
    if (degree == 0) {
      if (g.isolated_policy() == IsolatedPolicy::kReject) {
        fail(ErrorCode::kIsolatedNode, "walk reached isolated node " + std::to_string(u));
      }
      return j - 1;
    }
    u = adjacency[begin + rng.uniform(degree)];
    if (visit(j, u)) return j;
  }
  return L;
}

Walk run_walk(const Graph& g, NodeId u, std::uint32_t L, CounterStream& rng);

/// The walk owned by (seed, node, replicate); every sampler in the library
/// draws replicate i of node u from this stream.
Walk replicate_walk(const Graph& g, NodeId u, std::uint32_t L, std::uint64_t seed,
                    std::uint64_t replicate);

/// (sum of first-hit hops + (R - r) L) / R over R walks from u.
double estimate_hitting(const Graph& g, NodeId u, std::span<const NodeId> targets,
                        std::uint32_t L, std::uint64_t R, std::uint64_t seed);

struct SourceTally {
  NodeId source = 0;
  std::uint64_t hits = 0;     // r: walks that entered S
  std::uint64_t hop_sum = 0;  // t: summed first-entry hops of those walks
};

struct ObjectiveEstimate {
  double f1_hat = 0.0;
  double f2_hat = 0.0;
  double hitting_total = 0.0;  // sum of h_hat over nodes outside S
  std::uint64_t samples_used = 0;
  std::vector<SourceTally> per_node;  // filled on request, nodes outside S only
};

struct EstimateOptions {
  bool per_node = false;
  unsigned threads = 1;
};

ObjectiveEstimate estimate_objectives(const Graph& g, std::span<const NodeId> targets,
                                      std::uint32_t L, std::uint64_t R, std::uint64_t seed,
                                      const EstimateOptions& options = {});

/// Same estimator over a membership bitmap with |S| = set_size.
ObjectiveEstimate estimate_objectives(const Graph& g, std::span<const char> in_set,
                                      std::size_t set_size, std::uint32_t L, std::uint64_t R,
                                      std::uint64_t seed, const EstimateOptions& options = {});

/// Hoeffding sample sizes: ceil(ln((n - s) / delta) / (2 eps^2)) and
/// ceil(ln(n / delta) / (2 eps^2)), clamped to at least 1.
std::uint64_t sample_size_f1(double eps, double delta, std::uint64_t n, std::uint64_t s);
std::uint64_t sample_size_f2(double eps, double delta, std::uint64_t n);

}  // namespace rwdom
