#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "rwdom/exact.hpp"
#include "rwdom/graph.hpp"
#include "rwdom/greedy.hpp"
#include "rwdom/huge_pages.hpp"
#include "rwdom/sampling.hpp"

namespace rwdom {

/// One inverted-list entry: replicate i's walk from `source` first visits the
/// list's node at step `weight` (weight is 1 in problem-2 indexes).
struct IndexEntry {
  std::uint32_t replicate = 0;
  NodeId source = 0;
  std::uint32_t weight = 0;

  friend bool operator==(const IndexEntry&, const IndexEntry&) = default;
};

/// Materialized walks as inverted lists I[i][v]. Entries of all replicates
/// for a node sit in one contiguous run ordered by (replicate, source), each
/// packed into one or two 32-bit words.
class WalkSampleIndex {
 public:
  /// One walk of length L per (node, replicate), drawn from the shared
  /// per-(seed, node, replicate) streams.
  static WalkSampleIndex build(const Graph& g, std::uint32_t L, std::uint64_t R,
                               std::uint64_t seed, Problem kind);

  /// Same indexing over caller-supplied walks: walks[i][w] is replicate i's
  /// walk from node w.
  static WalkSampleIndex from_walks(std::size_t num_nodes, std::uint32_t L,
                                    std::span<const std::vector<Walk>> walks, Problem kind);

  std::size_t num_nodes() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::uint64_t replicates() const noexcept { return replicates_; }
  std::uint32_t horizon() const noexcept { return horizon_; }
  Problem kind() const noexcept { return kind_; }
  std::size_t entry_count() const noexcept { return entry_count_; }
  std::size_t memory_bytes() const noexcept;

  /// f(replicate, source, weight) for every entry indexed under `target`.
  template <typename F>
  void for_each(NodeId target, F&& f) const {
    const std::size_t begin = offsets_[target] * stride_;
    const std::size_t end = offsets_[target + 1] * stride_;
    if (stride_ == 1) {
      for (std::size_t p = begin; p < end; ++p) decode(words_[p], f);
    } else {
      for (std::size_t p = begin; p < end; p += 2) {
        decode(static_cast<std::uint64_t>(words_[p]) |
                   (static_cast<std::uint64_t>(words_[p + 1]) << 32),
               f);
      }
    }
  }

  /// I[replicate][target] materialized, for tests and debugging.
  std::vector<IndexEntry> list(std::uint64_t replicate, NodeId target) const;

  /// "replicate target source weight" per entry, sorted, using the graph's
  /// input ids when one is given.
  void dump(std::ostream& out, const Graph* g = nullptr) const;

 private:
  template <typename Producer>
  static WalkSampleIndex assemble(std::size_t num_nodes, std::uint32_t L, std::uint64_t R,
                                  Problem kind, Producer&& produce);

  template <typename F>
  void decode(std::uint64_t word, F& f) const {
    const auto weight = static_cast<std::uint32_t>(word & weight_mask_);
    const auto source = static_cast<NodeId>((word >> weight_bits_) & source_mask_);
    const auto replicate = static_cast<std::uint32_t>(word >> (weight_bits_ + source_bits_));
    f(replicate, source, weight);
  }

  HugeVector<std::size_t> offsets_;  // per node, in entries
  HugeVector<std::uint32_t> words_;
  std::size_t entry_count_ = 0;
  std::uint64_t replicates_ = 0;
  std::uint32_t horizon_ = 0;
  Problem kind_ = Problem::kHittingTime;
  unsigned stride_ = 1;
  unsigned weight_bits_ = 0;
  unsigned source_bits_ = 0;
  std::uint64_t weight_mask_ = 0;
  std::uint64_t source_mask_ = 0;
};

/// D[i][u]: per-replicate hop count to the current set capped at L
/// (problem 1, starts at L) or hit bit (problem 2, starts at 0).
class GainState {
 public:
  explicit GainState(const WalkSampleIndex& index);

  Problem kind() const noexcept { return kind_; }
  std::uint32_t value(std::uint64_t replicate, NodeId u) const noexcept {
    const std::size_t slot = static_cast<std::size_t>(u) * replicates_ + replicate;
    if (kind_ == Problem::kHittingTime) return hops_[slot];
    return static_cast<std::uint32_t>((bits_[slot >> 6] >> (slot & 63)) & 1);
  }
  bool contains(NodeId u) const noexcept { return in_set_[u] != 0; }
  std::span<const NodeId> selected() const noexcept { return selected_; }
  /// (1/R) * sum of D over all replicates and nodes.
  double mean_total() const;

 private:
  friend double approx_gain(const WalkSampleIndex&, const GainState&, NodeId);
  friend void apply_update(const WalkSampleIndex&, GainState&, NodeId);

  void set_hops(std::size_t slot, std::uint32_t v) noexcept { hops_[slot] = static_cast<std::uint16_t>(v); }
  void set_bit(std::size_t slot) noexcept { bits_[slot >> 6] |= std::uint64_t{1} << (slot & 63); }

  Problem kind_;
  std::uint64_t replicates_;
  HugeVector<std::uint16_t> hops_;  // node-major: [u * R + i]
  HugeVector<std::uint64_t> bits_;
  std::vector<char> in_set_;
  std::vector<NodeId> selected_;
};

/// Index-based marginal gain of adding u; reads index and state only.
/// Problem 1: (1/R) sum_i [D[i][u] + sum over (v, w) in I[i][u] with
/// w < D[i][v] of (D[i][v] - w)]. Problem 2: (1/R) sum_i [(1 - D[i][u]) +
/// #{(v, 1) in I[i][u] : D[i][v] = 0}].
double approx_gain(const WalkSampleIndex& index, const GainState& state, NodeId u);

/// Folds u into the state: D[i][u] becomes 0 (problem 1) or 1 (problem 2),
/// and every walk that reaches u sooner than the current set is shortened.
void apply_update(const WalkSampleIndex& index, GainState& state, NodeId u);

/// Gain oracle over a shared index; commit() applies the update.
class IndexedGainOracle final : public GainOracle {
 public:
  explicit IndexedGainOracle(const WalkSampleIndex& index) : index_(index), state_(index) {}

  std::size_t num_nodes() const override { return index_.num_nodes(); }
  double gain(NodeId u) const override { return approx_gain(index_, state_, u); }
  void commit(NodeId u) override { apply_update(index_, state_, u); }
  double objective() const override;
  const GainState& state() const noexcept { return state_; }

 private:
  const WalkSampleIndex& index_;
  GainState state_;
};

/// Builds the index once, then runs the greedy rounds over it.
SelectionResult approx_greedy(const Graph& g, std::size_t k, std::uint32_t L, std::uint64_t R,
                              Problem kind, std::uint64_t seed, const GreedyOptions& options = {});

/// Greedy rounds over an existing index.
SelectionResult approx_greedy(const WalkSampleIndex& index, std::size_t k,
                              const GreedyOptions& options = {});

}  // namespace rwdom
