#include "rwdom/exact.hpp"

#include <cmath>
#include <numeric>

#include "rwdom/error.hpp"
#include "rwdom/rng.hpp"

namespace rwdom {

std::string_view to_string(Problem p) noexcept {
  return p == Problem::kHittingTime ? "hitting-time" : "hit-probability";
}

std::vector<char> membership(std::size_t num_nodes, std::span<const NodeId> targets) {
  std::vector<char> in_set(num_nodes, 0);
  for (NodeId s : targets) {
    require(s < num_nodes, "target node " + std::to_string(s) + " out of range");
    in_set[s] = 1;
  }
  return in_set;
}

void hit_values(const Graph& g, std::span<const char> in_set, std::uint32_t L, Problem kind,
                std::vector<double>& values, std::vector<double>& scratch) {
  const std::size_t n = g.num_nodes();
  values.resize(n);
  scratch.resize(n);
  const auto offsets = g.offsets();
  const auto adjacency = g.adjacency();

  if (kind == Problem::kHittingTime) {
    std::fill(values.begin(), values.end(), 0.0);
    for (std::uint32_t t = 1; t <= L; ++t) {
      for (std::size_t u = 0; u < n; ++u) {
        if (in_set[u]) {
          scratch[u] = 0.0;
          continue;
        }
        const std::size_t begin = offsets[u], end = offsets[u + 1];
        if (begin == end) {
          scratch[u] = 1.0 + values[u];
          continue;
        }
        double sum = 0.0;
        for (std::size_t e = begin; e < end; ++e) sum += values[adjacency[e]];
        scratch[u] = 1.0 + sum / static_cast<double>(end - begin);
      }
      values.swap(scratch);
    }
  } else {
    for (std::size_t u = 0; u < n; ++u) values[u] = in_set[u] ? 1.0 : 0.0;
    for (std::uint32_t t = 1; t <= L; ++t) {
      for (std::size_t u = 0; u < n; ++u) {
        if (in_set[u]) {
          scratch[u] = 1.0;
          continue;
        }
        const std::size_t begin = offsets[u], end = offsets[u + 1];
        if (begin == end) {
          scratch[u] = values[u];
          continue;
        }
        double sum = 0.0;
        for (std::size_t e = begin; e < end; ++e) sum += values[adjacency[e]];
        scratch[u] = sum / static_cast<double>(end - begin);
      }
      values.swap(scratch);
    }
  }
}

double hitting_time_pair(const Graph& g, NodeId u, NodeId v, std::uint32_t L) {
  require(g.valid(u) && g.valid(v), "node id out of range");
  const NodeId target[] = {v};
  return hit_profile(g, target, L, Problem::kHittingTime).values[u];
}

HitProfile hit_profile(const Graph& g, std::span<const NodeId> targets, std::uint32_t L,
                       Problem kind) {
  HitProfile profile;
  profile.kind = kind;
  profile.horizon = L;
  profile.targets.assign(targets.begin(), targets.end());
  const auto in_set = membership(g.num_nodes(), targets);
  std::vector<double> scratch;
  hit_values(g, in_set, L, kind, profile.values, scratch);
  return profile;
}

std::vector<std::vector<double>> hit_profile_table(const Graph& g,
                                                   std::span<const NodeId> targets,
                                                   std::uint32_t L, Problem kind) {
  std::vector<std::vector<double>> table;
  table.reserve(L + 1);
  for (std::uint32_t t = 0; t <= L; ++t) table.push_back(hit_profile(g, targets, t, kind).values);
  return table;
}

double objective_from_values(std::span<const double> values, std::span<const char> in_set,
                             std::uint32_t L, Problem kind) {
  double total = 0.0;
  if (kind == Problem::kHittingTime) {
    for (std::size_t u = 0; u < values.size(); ++u) {
      if (!in_set[u]) total += static_cast<double>(L) - values[u];
      else total += static_cast<double>(L);
    }
  } else {
    for (double v : values) total += v;
  }
  return total;
}

double objective_f1(const Graph& g, std::span<const NodeId> targets, std::uint32_t L) {
  return objective(g, targets, L, Problem::kHittingTime);
}

double objective_f2(const Graph& g, std::span<const NodeId> targets, std::uint32_t L) {
  return objective(g, targets, L, Problem::kHitProbability);
}

double objective(const Graph& g, std::span<const NodeId> targets, std::uint32_t L,
                 Problem kind) {
  const auto in_set = membership(g.num_nodes(), targets);
  std::vector<double> values, scratch;
  hit_values(g, in_set, L, kind, values, scratch);
  return objective_from_values(values, in_set, L, kind);
}

namespace {

using u128 = uint128;

struct NeumaierSum {
  double sum = 0.0;
  double compensation = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) compensation += (sum - t) + x;
    else compensation += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + compensation; }
};

// Walks every prefix from the source that ends at the first visit to S or at
// step L, calling leaf(step_weights, steps_taken, hit).
class WalkEnumerator {
 public:
  WalkEnumerator(const Graph& g, std::span<const char> in_set, std::uint32_t L)
      : g_(g), in_set_(in_set), L_(L) {}

  template <typename Leaf>
  void run(NodeId source, Leaf&& leaf) {
    leaves_ = 0;
    visit(source, 0, leaf);
  }

  // Degrees along the current prefix; the prefix probability is their
  // reciprocal product.
  std::span<const std::size_t> degrees() const noexcept { return degrees_; }

 private:
  template <typename Leaf>
  void visit(NodeId u, std::uint32_t t, Leaf& leaf) {
    if (in_set_[u] || t == L_) {
      if (++leaves_ > kMaxEnumeratedWalks) {
        fail(ErrorCode::kSizeGuard, "walk enumeration exceeds " +
                                        std::to_string(kMaxEnumeratedWalks) + " paths");
      }
      leaf(t, in_set_[u] != 0);
      return;
    }
    auto nb = g_.neighbors(u);
    if (nb.empty()) {
      degrees_.push_back(1);
      visit(u, t + 1, leaf);
      degrees_.pop_back();
      return;
    }
    degrees_.push_back(nb.size());
    for (NodeId w : nb) visit(w, t + 1, leaf);
    degrees_.pop_back();
  }

  const Graph& g_;
  std::span<const char> in_set_;
  std::uint32_t L_;
  std::uint64_t leaves_ = 0;
  std::vector<std::size_t> degrees_;
};

// Common denominator for all walk probabilities: lcm(degrees)^L, when it and
// the weighted sums fit in 128 bits.
bool exact_denominator(const Graph& g, std::uint32_t L, u128& unit, u128& denominator) {
  std::uint64_t l = 1;
  for (std::size_t u = 0; u < g.num_nodes(); ++u) {
    const std::uint64_t d = std::max<std::size_t>(1, g.degree(static_cast<NodeId>(u)));
    const std::uint64_t next = l / std::gcd(l, d) * d;
    if (next > (1ULL << 40)) return false;
    l = next;
  }
  const double bits = static_cast<double>(L) * std::log2(static_cast<double>(l)) +
                      std::log2(static_cast<double>(L) + 1.0);
  if (bits > 120.0) return false;
  unit = l;
  denominator = 1;
  for (std::uint32_t t = 0; t < L; ++t) denominator *= l;
  return true;
}

double ratio(u128 num, u128 den) {
  const u128 q = num / den;
  const u128 r = num % den;
  return static_cast<double>(q) + static_cast<double>(r) / static_cast<double>(den);
}

// Accumulates E[value(T, hit)] over the enumeration.
template <typename Value>
double enumerate_expectation(const Graph& g, NodeId u, std::span<const NodeId> targets,
                             std::uint32_t L, Value value) {
  require(g.valid(u), "node id out of range");
  const auto in_set = membership(g.num_nodes(), targets);
  WalkEnumerator walker(g, in_set, L);

  u128 unit = 0, denominator = 0;
  if (exact_denominator(g, L, unit, denominator)) {
    u128 total = 0;
    walker.run(u, [&](std::uint32_t t, bool hit) {
      const std::uint64_t v = value(t, hit);
      if (v == 0) return;
      u128 mass = 1;
      for (std::size_t d : walker.degrees()) mass *= unit / d;
      for (std::uint32_t s = t; s < L; ++s) mass *= unit;
      total += mass * v;
    });
    return ratio(total, denominator);
  }

  NeumaierSum total;
  walker.run(u, [&](std::uint32_t t, bool hit) {
    double p = 1.0;
    for (std::size_t d : walker.degrees()) p /= static_cast<double>(d);
    total.add(p * static_cast<double>(value(t, hit)));
  });
  return total.value();
}

}  // namespace

double brute_force_hitting(const Graph& g, NodeId u, std::span<const NodeId> targets,
                           std::uint32_t L) {
  return enumerate_expectation(g, u, targets, L,
                               [](std::uint32_t t, bool) { return std::uint64_t{t}; });
}

double brute_force_hit_probability(const Graph& g, NodeId u, std::span<const NodeId> targets,
                                   std::uint32_t L) {
  return enumerate_expectation(g, u, targets, L,
                               [](std::uint32_t, bool hit) { return std::uint64_t{hit}; });
}

OptimalSet brute_force_optimal(const Graph& g, std::size_t k, std::uint32_t L, Problem kind) {
  const std::size_t n = g.num_nodes();
  require(k <= n, "budget exceeds node count");

  // C(n, k) with early exit once past the guard.
  double subsets = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    subsets = subsets * static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  if (subsets > static_cast<double>(kMaxEnumeratedSubsets) + 0.5) {
    fail(ErrorCode::kSizeGuard, "C(" + std::to_string(n) + ", " + std::to_string(k) +
                                    ") subsets exceed the enumeration limit");
  }

  std::vector<NodeId> combo(k);
  std::iota(combo.begin(), combo.end(), NodeId{0});
  std::vector<char> in_set(n, 0);
  std::vector<double> values, scratch;

  OptimalSet best;
  bool have_best = false;
  while (true) {
    std::fill(in_set.begin(), in_set.end(), 0);
    for (NodeId s : combo) in_set[s] = 1;
    hit_values(g, in_set, L, kind, values, scratch);
    const double value = objective_from_values(values, in_set, L, kind);
    if (!have_best || value > best.value + 1e-9) {
      best.nodes = combo;
      best.value = value;
      have_best = true;
    }

    // Next combination in lexicographic order.
    std::size_t i = k;
    while (i > 0 && combo[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++combo[i - 1];
    for (std::size_t j = i; j < k; ++j) combo[j] = combo[j - 1] + 1;
  }
  return best;
}

}  // namespace rwdom
