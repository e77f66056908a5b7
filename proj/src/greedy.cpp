#include "rwdom/greedy.hpp"

#include <algorithm>
#include <chrono>
#include <queue>

#include "rwdom/error.hpp"
#include "rwdom/parallel.hpp"
#include "rwdom/sampling.hpp"

namespace rwdom {

ExactGainOracle::ExactGainOracle(const Graph& g, std::uint32_t L, Problem kind)
    : g_(g), L_(L), kind_(kind), in_set_(g.num_nodes(), 0) {
  current_ = rwdom::objective(g_, {}, L_, kind_);
}

double ExactGainOracle::gain(NodeId u) const {
  std::vector<char> in_set = in_set_;
  in_set[u] = 1;
  std::vector<double> values, scratch;
  hit_values(g_, in_set, L_, kind_, values, scratch);
  return objective_from_values(values, in_set, L_, kind_) - current_;
}

void ExactGainOracle::commit(NodeId u) {
  require(!in_set_[u], "node already selected");
  in_set_[u] = 1;
  std::vector<double> values, scratch;
  hit_values(g_, in_set_, L_, kind_, values, scratch);
  current_ = objective_from_values(values, in_set_, L_, kind_);
}

SampledGainOracle::SampledGainOracle(const Graph& g, std::uint32_t L, std::uint64_t R,
                                     std::uint64_t seed, Problem kind)
    : g_(g), L_(L), R_(R), seed_(seed), kind_(kind), in_set_(g.num_nodes(), 0) {
  require(R >= 1, "sample count R must be at least 1");
  current_ = estimate(in_set_, 0);
}

double SampledGainOracle::estimate(std::span<const char> in_set, std::size_t size) const {
  const auto e = estimate_objectives(g_, in_set, size, L_, R_, seed_);
  return kind_ == Problem::kHittingTime ? e.f1_hat : e.f2_hat;
}

double SampledGainOracle::gain(NodeId u) const {
  std::vector<char> in_set = in_set_;
  in_set[u] = 1;
  return estimate(in_set, size_ + 1) - current_;
}

void SampledGainOracle::commit(NodeId u) {
  require(!in_set_[u], "node already selected");
  in_set_[u] = 1;
  ++size_;
  current_ = estimate(in_set_, size_);
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::size_t clamp_budget(std::size_t k, std::size_t n, SelectionResult& result) {
  if (k > n) {
    result.warnings.push_back("budget k=" + std::to_string(k) + " exceeds node count " +
                              std::to_string(n) + "; clamped");
    return n;
  }
  return k;
}

void record_round(SelectionResult& result, GainOracle& oracle, NodeId winner, double gain,
                  bool trace) {
  oracle.commit(winner);
  result.selected.push_back(winner);
  result.gains.push_back(gain);
  if (trace) result.objective_trace.push_back(oracle.objective());
}

}  // namespace

SelectionResult greedy_select(std::size_t k, GainOracle& oracle, const GreedyOptions& options) {
  const auto start = Clock::now();
  SelectionResult result;
  result.gain_offset = oracle.gain_offset();
  const std::size_t n = oracle.num_nodes();
  k = clamp_budget(k, n, result);

  std::vector<char> chosen(n, 0);
  std::vector<double> gains(n, 0.0);
  const unsigned threads = oracle.concurrent() ? options.threads : 1;
  for (std::size_t round = 0; round < k; ++round) {
    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t u = begin; u < end; ++u) {
        if (!chosen[u]) gains[u] = oracle.gain(static_cast<NodeId>(u));
      }
    });
    result.oracle_calls += n - round;

    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t u = 0; u < n; ++u) {
      if (!chosen[u]) best = std::max(best, gains[u]);
    }
    std::size_t winner = n;
    for (std::size_t u = 0; u < n; ++u) {
      if (!chosen[u] && gains[u] >= best - kGainTieTolerance) {
        winner = u;
        break;
      }
    }
    chosen[winner] = 1;
    record_round(result, oracle, static_cast<NodeId>(winner), gains[winner], options.trace);
  }
  result.elapsed_ms.emplace_back("select", ms_since(start));
  return result;
}

SelectionResult lazy_greedy_select(std::size_t k, GainOracle& oracle,
                                   const GreedyOptions& options) {
  const auto start = Clock::now();
  SelectionResult result;
  result.gain_offset = oracle.gain_offset();
  const std::size_t n = oracle.num_nodes();
  k = clamp_budget(k, n, result);
  if (k == 0) {
    result.elapsed_ms.emplace_back("select", ms_since(start));
    return result;
  }

  struct Entry {
    double bound;
    NodeId node;
    std::size_t round;  // round in which bound was computed
  };
  // Highest bound first; equal bounds pop the lowest id first.
  auto lower = [](const Entry& a, const Entry& b) {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.node > b.node;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(lower)> heap(lower);

  {
    std::vector<double> gains(n);
    const unsigned threads = oracle.concurrent() ? options.threads : 1;
    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t u = begin; u < end; ++u) gains[u] = oracle.gain(static_cast<NodeId>(u));
    });
    result.oracle_calls += n;
    for (std::size_t u = 0; u < n; ++u) heap.push({gains[u], static_cast<NodeId>(u), 0});
  }

  std::vector<Entry> fresh, parked;
  for (std::size_t round = 0; round < k; ++round) {
    fresh.clear();
    parked.clear();
    double best = -std::numeric_limits<double>::infinity();
    // Lowest id among fresh gains within the tie tolerance of best.
    auto leader = [&]() -> const Entry* {
      const Entry* w = nullptr;
      for (const auto& e : fresh) {
        if (e.bound >= best - kGainTieTolerance && (!w || e.node < w->node)) w = &e;
      }
      return w;
    };
    // Settle every candidate whose bound could still reach the best fresh
    // gain within the tie tolerance, so tie-breaking matches the plain scan.
    // A stale bound that cannot raise best and belongs to a higher id than
    // the current leader would lose the tie anyway, so it is parked unread.
    for (;;) {
      while (!heap.empty()) {
        if (!fresh.empty() && heap.top().bound < best - kGainTieTolerance) break;
        Entry top = heap.top();
        heap.pop();
        if (top.round != round) {
          if (!fresh.empty() && top.bound <= best && top.node > leader()->node) {
            parked.push_back(top);
            continue;
          }
          top.bound = oracle.gain(top.node);
          top.round = round;
          ++result.oracle_calls;
          heap.push(top);
          continue;
        }
        fresh.push_back(top);
        best = std::max(best, top.bound);
      }
      // A later rise of best can change the leader; parked bounds that
      // could now win the tie go back for evaluation.
      const NodeId lead = leader()->node;
      const auto contender = [&](const Entry& e) {
        return e.bound >= best - kGainTieTolerance && e.node < lead;
      };
      if (std::none_of(parked.begin(), parked.end(), contender)) break;
      std::erase_if(parked, [&](const Entry& e) {
        if (!contender(e)) return false;
        heap.push(e);
        return true;
      });
    }

    const Entry chosen = *leader();
    for (const auto& e : fresh) {
      if (e.node != chosen.node) heap.push(e);
    }
    for (const auto& e : parked) heap.push(e);
    record_round(result, oracle, chosen.node, chosen.bound, options.trace);
  }
  result.elapsed_ms.emplace_back("select", ms_since(start));
  return result;
}

}  // namespace rwdom
