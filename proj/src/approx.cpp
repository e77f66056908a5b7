#include "rwdom/approx.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <ostream>
#include <tuple>

#include "rwdom/error.hpp"

namespace rwdom {

namespace {

constexpr std::size_t kWalkBlock = 64;
constexpr std::uint32_t kPrefixScanLimit = 16;

unsigned bits_for(std::uint64_t max_value) {
  return static_cast<unsigned>(std::bit_width(max_value));
}

}  // namespace

template <typename Producer>
WalkSampleIndex WalkSampleIndex::assemble(std::size_t num_nodes, std::uint32_t L,
                                          std::uint64_t R, Problem kind, Producer&& produce) {
  require(num_nodes >= 1, "index needs at least one node");
  require(L >= 1, "walk length L must be at least 1");
  require(L <= 0xffff, "walk length L must not exceed 65535");
  require(R >= 1, "sample count R must be at least 1");

  WalkSampleIndex index;
  index.replicates_ = R;
  index.horizon_ = L;
  index.kind_ = kind;
  index.weight_bits_ = kind == Problem::kHittingTime ? bits_for(L) : 1;
  index.source_bits_ = std::max(1u, bits_for(num_nodes - 1));
  const unsigned replicate_bits = bits_for(R - 1);
  const unsigned total_bits = index.weight_bits_ + index.source_bits_ + replicate_bits;
  require(total_bits <= 64, "index entry does not fit in 64 bits");
  index.stride_ = total_bits <= 32 ? 1 : 2;
  index.weight_mask_ = (std::uint64_t{1} << index.weight_bits_) - 1;
  index.source_mask_ = (std::uint64_t{1} << index.source_bits_) - 1;

  // Walks are produced a block at a time into `steps` (row b holds the walk
  // from source first + b) and then replayed in source order. Each walk
  // indexes a node once, at its first visit, and never indexes its own
  // source. Short walks check for repeats by scanning their own prefix;
  // long ones use a stamp array.
  const bool scan_prefix = L <= kPrefixScanLimit;
  std::vector<NodeId> steps(kWalkBlock * static_cast<std::size_t>(L));
  std::vector<std::uint32_t> lengths(kWalkBlock);
  std::vector<std::uint64_t> stamp(scan_prefix ? 0 : num_nodes, 0);
  std::uint64_t walk_id = 0;
  auto for_each_first_visit = [&](auto&& sink) {
    walk_id = 0;
    std::fill(stamp.begin(), stamp.end(), 0);
    for (std::uint64_t i = 0; i < R; ++i) {
      for (std::size_t first = 0; first < num_nodes; first += kWalkBlock) {
        const std::size_t count = std::min(kWalkBlock, num_nodes - first);
        produce(i, static_cast<NodeId>(first), count, steps.data(), lengths.data());
        for (std::size_t b = 0; b < count; ++b) {
          const auto w = static_cast<NodeId>(first + b);
          const NodeId* walk = steps.data() + b * L;
          const std::uint64_t id = ++walk_id;
          if (!scan_prefix) stamp[w] = id;
          for (std::uint32_t j = 0; j < lengths[b]; ++j) {
            const NodeId v = walk[j];
            bool repeat;
            if (scan_prefix) {
              repeat = v == w || std::find(walk, walk + j, v) != walk + j;
            } else {
              repeat = stamp[v] == id;
              stamp[v] = id;
            }
            if (!repeat) sink(i, w, j + 1, v);
          }
        }
      }
    }
  };

  index.offsets_.assign(num_nodes + 1, 0);
  for_each_first_visit([&](std::uint64_t, NodeId, std::uint32_t, NodeId v) {
    ++index.offsets_[v + 1];
  });
  for (std::size_t v = 0; v < num_nodes; ++v) index.offsets_[v + 1] += index.offsets_[v];
  index.entry_count_ = index.offsets_.back();
  index.words_.resize(index.entry_count_ * index.stride_);

  HugeVector<std::size_t> cursor(index.offsets_.begin(), index.offsets_.end() - 1);
  const std::uint64_t source_shift = index.weight_bits_;
  const std::uint64_t replicate_shift = index.weight_bits_ + index.source_bits_;
  for_each_first_visit([&](std::uint64_t i, NodeId w, std::uint32_t j, NodeId v) {
    const std::uint32_t weight = kind == Problem::kHittingTime ? j : 1;
    const std::uint64_t word = (i << replicate_shift) |
                               (static_cast<std::uint64_t>(w) << source_shift) | weight;
    const std::size_t slot = cursor[v]++ * index.stride_;
    index.words_[slot] = static_cast<std::uint32_t>(word);
    if (index.stride_ == 2) index.words_[slot + 1] = static_cast<std::uint32_t>(word >> 32);
  });
  return index;
}

WalkSampleIndex WalkSampleIndex::build(const Graph& g, std::uint32_t L, std::uint64_t R,
                                       std::uint64_t seed, Problem kind) {
  // Walks of a block advance in lockstep so that their cache misses overlap;
  // each walk still consumes its own stream exactly as walk_from would.
  const auto offsets = g.offsets();
  const auto adjacency = g.adjacency();
  const bool strict = g.isolated_policy() == IsolatedPolicy::kReject;
  std::vector<CounterStream> rngs;
  std::vector<NodeId> at(kWalkBlock);
  std::vector<std::size_t> slot(kWalkBlock);
  auto produce = [&](std::uint64_t i, NodeId first, std::size_t count, NodeId* steps,
                     std::uint32_t* lengths) {
    rngs.clear();
    for (std::size_t b = 0; b < count; ++b) {
      rngs.emplace_back(stream_key(seed, first + b, i));
      at[b] = first + static_cast<NodeId>(b);
      lengths[b] = L;
    }
    for (std::uint32_t j = 0; j < L; ++j) {
      for (std::size_t b = 0; b < count; ++b) {
        if (lengths[b] < j + 1) continue;
        const std::size_t begin = offsets[at[b]];
        const std::size_t degree = offsets[at[b] + 1] - begin;
        if (degree == 0) {
          if (strict) {
            fail(ErrorCode::kIsolatedNode, "walk reached isolated node " + std::to_string(at[b]));
          }
          lengths[b] = j;
          continue;
        }
        slot[b] = begin + rngs[b].uniform(degree);
        __builtin_prefetch(adjacency.data() + slot[b]);
      }
      for (std::size_t b = 0; b < count; ++b) {
        if (lengths[b] < j + 1) continue;
        at[b] = adjacency[slot[b]];
        steps[b * L + j] = at[b];
        __builtin_prefetch(offsets.data() + at[b]);
      }
    }
  };
  return assemble(g.num_nodes(), L, R, kind, produce);
}

WalkSampleIndex WalkSampleIndex::from_walks(std::size_t num_nodes, std::uint32_t L,
                                            std::span<const std::vector<Walk>> walks,
                                            Problem kind) {
  require(!walks.empty(), "walk set is empty (need at least one replicate)");
  for (std::size_t i = 0; i < walks.size(); ++i) {
    require(walks[i].size() == num_nodes,
            "replicate " + std::to_string(i) + " has " + std::to_string(walks[i].size()) +
                " walks, expected one per node (" + std::to_string(num_nodes) + ")");
    for (std::size_t w = 0; w < num_nodes; ++w) {
      const Walk& walk = walks[i][w];
      require(walk.source == w, "replicate " + std::to_string(i) + " walk " +
                                    std::to_string(w) + " starts at the wrong node");
      require(walk.steps.size() <= L, "walk longer than L");
      for (NodeId v : walk.steps) require(v < num_nodes, "walk visits an unknown node");
    }
  }
  return assemble(num_nodes, L, walks.size(), kind,
                  [&](std::uint64_t i, NodeId first, std::size_t count, NodeId* steps,
                      std::uint32_t* lengths) {
                    for (std::size_t b = 0; b < count; ++b) {
                      const auto& walk = walks[i][first + b].steps;
                      std::copy(walk.begin(), walk.end(), steps + b * L);
                      lengths[b] = static_cast<std::uint32_t>(walk.size());
                    }
                  });
}

std::size_t WalkSampleIndex::memory_bytes() const noexcept {
  return words_.size() * sizeof(std::uint32_t) + offsets_.size() * sizeof(std::size_t);
}

std::vector<IndexEntry> WalkSampleIndex::list(std::uint64_t replicate, NodeId target) const {
  require(target < num_nodes(), "node id out of range");
  std::vector<IndexEntry> out;
  for_each(target, [&](std::uint32_t i, NodeId source, std::uint32_t weight) {
    if (i == replicate) out.push_back({i, source, weight});
  });
  return out;
}

void WalkSampleIndex::dump(std::ostream& out, const Graph* g) const {
  struct Row {
    std::uint32_t replicate;
    NodeId target;
    NodeId source;
    std::uint32_t weight;
  };
  std::vector<Row> rows;
  rows.reserve(entry_count_);
  for (std::size_t v = 0; v < num_nodes(); ++v) {
    for_each(static_cast<NodeId>(v), [&](std::uint32_t i, NodeId source, std::uint32_t weight) {
      rows.push_back({i, static_cast<NodeId>(v), source, weight});
    });
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.replicate, a.target, a.source) < std::tie(b.replicate, b.target, b.source);
  });
  auto id = [&](NodeId u) { return g ? g->external_id(u) : ExternalId{u}; };
  for (const auto& r : rows) {
    out << r.replicate << ' ' << id(r.target) << ' ' << id(r.source) << ' ' << r.weight << '\n';
  }
}

GainState::GainState(const WalkSampleIndex& index)
    : kind_(index.kind()), replicates_(index.replicates()), in_set_(index.num_nodes(), 0) {
  const std::size_t slots = index.num_nodes() * replicates_;
  if (kind_ == Problem::kHittingTime) {
    hops_.assign(slots, static_cast<std::uint16_t>(index.horizon()));
  } else {
    bits_.assign((slots + 63) / 64, 0);
  }
}

double GainState::mean_total() const {
  std::uint64_t total = 0;
  if (kind_ == Problem::kHittingTime) {
    for (auto h : hops_) total += h;
  } else {
    for (auto w : bits_) total += static_cast<std::uint64_t>(std::popcount(w));
  }
  return static_cast<double>(total) / static_cast<double>(replicates_);
}

double approx_gain(const WalkSampleIndex& index, const GainState& state, NodeId u) {
  require(u < index.num_nodes(), "node id out of range");
  const std::uint64_t R = index.replicates();
  std::uint64_t total = 0;
  if (state.kind_ == Problem::kHittingTime) {
    const std::uint16_t* own = state.hops_.data() + static_cast<std::size_t>(u) * R;
    for (std::uint64_t i = 0; i < R; ++i) total += own[i];
    const std::uint16_t* hops = state.hops_.data();
    index.for_each(u, [&](std::uint32_t i, NodeId v, std::uint32_t weight) {
      const std::uint32_t current = hops[static_cast<std::size_t>(v) * R + i];
      if (weight < current) total += current - weight;
    });
  } else {
    for (std::uint64_t i = 0; i < R; ++i) total += 1 - state.value(i, u);
    index.for_each(u, [&](std::uint32_t i, NodeId v, std::uint32_t) {
      total += 1 - state.value(i, v);
    });
  }
  return static_cast<double>(total) / static_cast<double>(R);
}

void apply_update(const WalkSampleIndex& index, GainState& state, NodeId u) {
  require(u < index.num_nodes(), "node id out of range");
  if (state.in_set_[u]) fail(ErrorCode::kState, "node " + std::to_string(u) + " is already selected");
  state.in_set_[u] = 1;
  state.selected_.push_back(u);
  const std::uint64_t R = index.replicates();
  const std::size_t base = static_cast<std::size_t>(u) * R;
  if (state.kind_ == Problem::kHittingTime) {
    for (std::uint64_t i = 0; i < R; ++i) state.set_hops(base + i, 0);
    index.for_each(u, [&](std::uint32_t i, NodeId v, std::uint32_t weight) {
      const std::size_t slot = static_cast<std::size_t>(v) * R + i;
      if (weight < state.hops_[slot]) state.set_hops(slot, weight);
    });
  } else {
    for (std::uint64_t i = 0; i < R; ++i) state.set_bit(base + i);
    index.for_each(u, [&](std::uint32_t i, NodeId v, std::uint32_t) {
      state.set_bit(static_cast<std::size_t>(v) * R + i);
    });
  }
}

double IndexedGainOracle::objective() const {
  const double total = state_.mean_total();
  if (index_.kind() == Problem::kHittingTime) {
    return static_cast<double>(index_.num_nodes()) * index_.horizon() - total;
  }
  return total;
}

SelectionResult approx_greedy(const Graph& g, std::size_t k, std::uint32_t L, std::uint64_t R,
                              Problem kind, std::uint64_t seed, const GreedyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const WalkSampleIndex index = WalkSampleIndex::build(g, L, R, seed, kind);
  const double index_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  SelectionResult result = approx_greedy(index, k, options);
  result.elapsed_ms.insert(result.elapsed_ms.begin(), {"index", index_ms});
  return result;
}

SelectionResult approx_greedy(const WalkSampleIndex& index, std::size_t k,
                              const GreedyOptions& options) {
  IndexedGainOracle oracle(index);
  return options.lazy ? lazy_greedy_select(k, oracle, options)
                      : greedy_select(k, oracle, options);
}

}  // namespace rwdom
