#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "rwdom/graph.hpp"

namespace rwdom {

/// Problem 1 minimizes total truncated hitting time (objective F1); problem 2
/// maximizes the expected number of nodes whose walk hits the targets (F2).
enum class Problem { kHittingTime, kHitProbability };

std::string_view to_string(Problem p) noexcept;

/// Membership bitmap over the nodes of a graph.
std::vector<char> membership(std::size_t num_nodes, std::span<const NodeId> targets);

/// Per-node expected truncated hitting time (problem 1) or hit probability
/// (problem 2) for a fixed target set and horizon.
struct HitProfile {
  Problem kind = Problem::kHittingTime;
  std::uint32_t horizon = 0;
  std::vector<NodeId> targets;
  std::vector<double> values;
};

/// Expected hops until a walk from u first reaches v, capped at L.
double hitting_time_pair(const Graph& g, NodeId u, NodeId v, std::uint32_t L);

/// Dynamic program over horizons 1..L keeping two length-n buffers.
HitProfile hit_profile(const Graph& g, std::span<const NodeId> targets, std::uint32_t L,
                       Problem kind);

/// Same recursion keeping every horizon: table[t][u] for t = 0..L. Debug aid.
std::vector<std::vector<double>> hit_profile_table(const Graph& g,
                                                   std::span<const NodeId> targets,
                                                   std::uint32_t L, Problem kind);

/// Like hit_profile but takes a ready membership bitmap and writes into the
/// caller's buffers; used on hot paths that evaluate many sets.
void hit_values(const Graph& g, std::span<const char> in_set, std::uint32_t L, Problem kind,
                std::vector<double>& values, std::vector<double>& scratch);

/// F1(S) = nL - sum over u outside S of h_uS.
double objective_f1(const Graph& g, std::span<const NodeId> targets, std::uint32_t L);
/// F2(S) = sum over u of p_uS.
double objective_f2(const Graph& g, std::span<const NodeId> targets, std::uint32_t L);
double objective(const Graph& g, std::span<const NodeId> targets, std::uint32_t L, Problem kind);

/// Folds a profile into its objective value.
double objective_from_values(std::span<const double> values, std::span<const char> in_set,
                             std::uint32_t L, Problem kind);

// Enumeration oracles. These never touch the dynamic program.

inline constexpr std::uint64_t kMaxEnumeratedWalks = 10'000'000;
inline constexpr std::uint64_t kMaxEnumeratedSubsets = 1'000'000;

/// E[T_uS] by summing over every walk prefix that stops at the first hit or at
/// L. Exact integer accumulation when the common denominator fits, otherwise
/// compensated summation.
double brute_force_hitting(const Graph& g, NodeId u, std::span<const NodeId> targets,
                           std::uint32_t L);
/// Pr[walk from u reaches S within L steps], same enumeration.
double brute_force_hit_probability(const Graph& g, NodeId u, std::span<const NodeId> targets,
                                   std::uint32_t L);

struct OptimalSet {
  std::vector<NodeId> nodes;
  double value = 0.0;
};

/// Exhaustive maximum of F1 or F2 over k-subsets; ties go to the
/// lexicographically smallest subset.
OptimalSet brute_force_optimal(const Graph& g, std::size_t k, std::uint32_t L, Problem kind);

}  // namespace rwdom
