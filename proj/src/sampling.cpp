#include "rwdom/sampling.hpp"

#include <cmath>

#include "rwdom/exact.hpp"
#include "rwdom/parallel.hpp"

namespace rwdom {

Walk run_walk(const Graph& g, NodeId u, std::uint32_t L, CounterStream& rng) {
  require(g.valid(u), "node id out of range");
  Walk walk{u, {}};
  walk.steps.reserve(L);
  walk_from(g, u, L, rng, [&](std::uint32_t, NodeId v) {
    walk.steps.push_back(v);
    return false;
  });
  return walk;
}

Walk replicate_walk(const Graph& g, NodeId u, std::uint32_t L, std::uint64_t seed,
                    std::uint64_t replicate) {
  CounterStream rng(stream_key(seed, u, replicate));
  return run_walk(g, u, L, rng);
}

namespace {

// r and t for R walks from u against the bitmap.
SourceTally tally_source(const Graph& g, NodeId u, std::span<const char> in_set,
                         std::uint32_t L, std::uint64_t R, std::uint64_t seed) {
  SourceTally tally{u, 0, 0};
  for (std::uint64_t i = 0; i < R; ++i) {
    CounterStream rng(stream_key(seed, u, i));
    std::uint32_t hit_step = 0;
    walk_from(g, u, L, rng, [&](std::uint32_t j, NodeId v) {
      if (in_set[v]) {
        hit_step = j;
        return true;
      }
      return false;
    });
    if (hit_step > 0) {
      ++tally.hits;
      tally.hop_sum += hit_step;
    }
  }
  return tally;
}

}  // namespace

double estimate_hitting(const Graph& g, NodeId u, std::span<const NodeId> targets,
                        std::uint32_t L, std::uint64_t R, std::uint64_t seed) {
  require(g.valid(u), "node id out of range");
  require(R >= 1, "sample count R must be at least 1");
  const auto in_set = membership(g.num_nodes(), targets);
  require(!in_set[u], "source node must lie outside the target set");
  const SourceTally tally = tally_source(g, u, in_set, L, R, seed);
  const double Rd = static_cast<double>(R);
  return static_cast<double>(tally.hop_sum) / Rd +
         (1.0 - static_cast<double>(tally.hits) / Rd) * static_cast<double>(L);
}

ObjectiveEstimate estimate_objectives(const Graph& g, std::span<const NodeId> targets,
                                      std::uint32_t L, std::uint64_t R, std::uint64_t seed,
                                      const EstimateOptions& options) {
  const auto in_set = membership(g.num_nodes(), targets);
  std::size_t size = 0;
  for (char c : in_set) size += c != 0;
  return estimate_objectives(g, in_set, size, L, R, seed, options);
}

ObjectiveEstimate estimate_objectives(const Graph& g, std::span<const char> in_set,
                                      std::size_t set_size, std::uint32_t L, std::uint64_t R,
                                      std::uint64_t seed, const EstimateOptions& options) {
  require(R >= 1, "sample count R must be at least 1");
  const std::size_t n = g.num_nodes();
  std::vector<SourceTally> tallies(n);
  parallel_for(n, options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t u = begin; u < end; ++u) {
      if (in_set[u]) continue;
      tallies[u] = tally_source(g, static_cast<NodeId>(u), in_set, L, R, seed);
    }
  });

  // Fixed node order keeps the sums bit-identical across thread counts.
  const double Rd = static_cast<double>(R);
  const double Ld = static_cast<double>(L);
  double hitting_total = 0.0;
  double probability_total = 0.0;
  ObjectiveEstimate estimate;
  estimate.samples_used = R;
  for (std::size_t u = 0; u < n; ++u) {
    if (in_set[u]) continue;
    const auto& t = tallies[u];
    hitting_total += (static_cast<double>(t.hop_sum) + static_cast<double>(R - t.hits) * Ld) / Rd;
    probability_total += static_cast<double>(t.hits) / Rd;
    if (options.per_node) estimate.per_node.push_back(t);
  }
  // Members of S contribute L each to F1 = nL - sum h, and 1 each to F2.
  estimate.f1_hat = static_cast<double>(n) * Ld - hitting_total;
  estimate.hitting_total = hitting_total;
  estimate.f2_hat = probability_total + static_cast<double>(set_size);
  return estimate;
}

namespace {

std::uint64_t hoeffding_size(double eps, double delta, double population) {
  require(eps > 0.0 && eps < 1.0, "eps must lie in (0, 1)");
  require(delta > 0.0, "delta must be positive");
  const double r = std::ceil(std::log(population / delta) / (2.0 * eps * eps));
  return r < 1.0 ? 1 : static_cast<std::uint64_t>(r);
}

}  // namespace

std::uint64_t sample_size_f1(double eps, double delta, std::uint64_t n, std::uint64_t s) {
  require(s < n, "current set size must be below n");
  return hoeffding_size(eps, delta, static_cast<double>(n - s));
}

std::uint64_t sample_size_f2(double eps, double delta, std::uint64_t n) {
  require(n >= 1, "n must be positive");
  return hoeffding_size(eps, delta, static_cast<double>(n));
}

}  // namespace rwdom
