#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rwdom {

using NodeId = std::uint32_t;
using ExternalId = std::uint64_t;

/// How nodes without neighbours are handled. kReject refuses such graphs;
/// kSelfLoop keeps them and treats the node as absorbing, so a walk started
/// there never moves.
enum class IsolatedPolicy { kReject, kSelfLoop };

struct ParseOptions {
  /// Drop "u u" lines instead of failing. The node is still declared.
  bool skip_self_loops = false;
  IsolatedPolicy isolated = IsolatedPolicy::kReject;
};

/// Immutable undirected simple graph in compressed adjacency form. Nodes are
/// dense 0..n-1; the original identifiers are kept for output.
class Graph {
 public:
  Graph() = default;

  /// Builds from undirected edges over dense ids [0, num_nodes). Duplicate and
  /// reversed edges collapse; self-loops are rejected.
  static Graph from_edges(std::size_t num_nodes,
                          std::span<const std::pair<NodeId, NodeId>> edges,
                          IsolatedPolicy isolated = IsolatedPolicy::kReject,
                          std::vector<ExternalId> external_ids = {});

  std::size_t num_nodes() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return adjacency_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId u) const noexcept {
    return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
  }
  std::size_t degree(NodeId u) const noexcept { return offsets_[u + 1] - offsets_[u]; }
  std::size_t max_degree() const noexcept;
  bool has_edge(NodeId u, NodeId w) const;
  bool is_isolated(NodeId u) const noexcept { return degree(u) == 0; }
  bool has_isolated_nodes() const noexcept { return isolated_count_ > 0; }
  IsolatedPolicy isolated_policy() const noexcept { return policy_; }

  /// Probability that one walk step from u moves to w. An isolated node
  /// (permissive graphs only) stays put with probability one.
  double transition_prob(NodeId u, NodeId w) const;

  bool valid(NodeId u) const noexcept { return u < num_nodes(); }
  ExternalId external_id(NodeId u) const noexcept {
    return external_ids_.empty() ? ExternalId{u} : external_ids_[u];
  }
  /// Dense id of an input identifier, or false when absent.
  bool find_node(ExternalId id, NodeId& out) const noexcept;

  std::span<const std::size_t> offsets() const noexcept { return offsets_; }
  std::span<const NodeId> adjacency() const noexcept { return adjacency_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.offsets_ == b.offsets_ && a.adjacency_ == b.adjacency_;
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
  std::vector<ExternalId> external_ids_;  // empty means identity
  IsolatedPolicy policy_ = IsolatedPolicy::kReject;
  std::size_t isolated_count_ = 0;
};

Graph parse_edge_list(std::string_view text, const ParseOptions& options = {});
Graph load_edge_list(const std::string& path, const ParseOptions& options = {});

/// Canonical form: one "u v" line per edge with u < v in input ids, sorted by
/// (u, v), trailing newline.
void write_edge_list(const Graph& g, std::ostream& out);
std::string to_edge_list(const Graph& g);
void save_edge_list(const Graph& g, const std::string& path);

/// Preferential-attachment graph: a clique on edges_per_node + 1 seed nodes,
/// then every new node links to edges_per_node distinct existing nodes picked
/// proportionally to degree. Deterministic in seed.
Graph generate_power_law(std::size_t num_nodes, std::size_t edges_per_node,
                         std::uint64_t seed);

}  // namespace rwdom
