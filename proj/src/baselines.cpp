#include "rwdom/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace rwdom {

namespace {

using Clock = std::chrono::steady_clock;

// Neighbour coverage as a gain oracle. Coverage is submodular, so the lazy
// driver returns the plain greedy answer.
class CoverageOracle final : public GainOracle {
 public:
  CoverageOracle(const Graph& g, bool closed) : g_(g), closed_(closed), covered_(g.num_nodes(), 0) {}

  std::size_t num_nodes() const override { return g_.num_nodes(); }

  double gain(NodeId u) const override {
    std::size_t fresh = 0;
    for (NodeId v : g_.neighbors(u)) fresh += !covered_[v];
    if (closed_) fresh += !covered_[u];
    return static_cast<double>(fresh);
  }

  void commit(NodeId u) override {
    for (NodeId v : g_.neighbors(u)) mark(v);
    if (closed_) mark(u);
  }

  double objective() const override { return static_cast<double>(count_); }

 private:
  void mark(NodeId v) {
    if (!covered_[v]) {
      covered_[v] = 1;
      ++count_;
    }
  }

  const Graph& g_;
  bool closed_;
  std::vector<char> covered_;
  std::size_t count_ = 0;
};

}  // namespace

SelectionResult degree_select(const Graph& g, std::size_t k) {
  const auto start = Clock::now();
  SelectionResult result;
  const std::size_t n = g.num_nodes();
  if (k > n) {
    result.warnings.push_back("budget k=" + std::to_string(k) + " exceeds node count " +
                              std::to_string(n) + "; clamped");
    k = n;
  }
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    [&](NodeId a, NodeId b) {
                      if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
                      return a < b;
                    });
  order.resize(k);
  result.selected = std::move(order);
  for (NodeId u : result.selected) result.gains.push_back(static_cast<double>(g.degree(u)));
  result.elapsed_ms.emplace_back(
      "select", std::chrono::duration<double, std::milli>(Clock::now() - start).count());
  return result;
}

SelectionResult dominate_select(const Graph& g, std::size_t k, const DominateOptions& options) {
  CoverageOracle oracle(g, options.closed_neighborhood);
  return lazy_greedy_select(k, oracle);
}

}  // namespace rwdom
