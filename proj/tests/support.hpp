#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "rwdom/graph.hpp"

namespace rwdom::testing {

using EdgeList = std::vector<std::pair<NodeId, NodeId>>;

inline Graph make_graph(std::size_t n, const EdgeList& edges,
                        IsolatedPolicy policy = IsolatedPolicy::kReject) {
  return Graph::from_edges(n, edges, policy);
}

inline Graph path_graph(std::size_t n) {
  EdgeList edges;
  for (NodeId u = 0; u + 1 < n; ++u) edges.emplace_back(u, u + 1);
  return make_graph(n, edges);
}

inline Graph cycle_graph(std::size_t n) {
  EdgeList edges;
  for (NodeId u = 0; u < n; ++u) edges.emplace_back(u, static_cast<NodeId>((u + 1) % n));
  return make_graph(n, edges);
}

/// K_{1,leaves} with the centre at node 0.
inline Graph star_graph(std::size_t leaves) {
  EdgeList edges;
  for (NodeId v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return make_graph(leaves + 1, edges);
}

inline Graph complete_graph(std::size_t n) {
  EdgeList edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return make_graph(n, edges);
}

/// Erdos-Renyi style graph with every node given at least one edge, so it is
/// valid in strict mode. Not necessarily connected.
inline Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
  EdgeList edges;
  std::vector<int> degree(n, 0);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (coin(rng)) {
        edges.emplace_back(u, v);
        ++degree[u];
        ++degree[v];
      }
    }
  }
  for (NodeId u = 0; u < n; ++u) {
    if (degree[u] > 0) continue;
    NodeId v = pick(rng);
    while (v == u) v = pick(rng);
    edges.emplace_back(u, v);
    ++degree[u];
    ++degree[v];
  }
  return make_graph(n, edges);
}

/// Uniformly random subset of {0..n-1} with the given size, sorted.
inline std::vector<NodeId> random_subset(std::size_t n, std::size_t size, std::mt19937_64& rng) {
  std::vector<NodeId> all(n);
  for (NodeId u = 0; u < n; ++u) all[u] = u;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(size);
  std::sort(all.begin(), all.end());
  return all;
}

/// All subsets of {0..n-1} with at most max_size elements.
inline std::vector<std::vector<NodeId>> small_subsets(std::size_t n, std::size_t max_size) {
  std::vector<std::vector<NodeId>> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) > max_size) continue;
    std::vector<NodeId> s;
    for (NodeId u = 0; u < n; ++u) {
      if (mask & (1u << u)) s.push_back(u);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace rwdom::testing
