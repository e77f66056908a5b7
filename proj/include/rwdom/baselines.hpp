#pragma once

#include <cstddef>

#include "rwdom/graph.hpp"
#include "rwdom/greedy.hpp"

namespace rwdom {

/// Top-k nodes by (degree descending, id ascending).
SelectionResult degree_select(const Graph& g, std::size_t k);

struct DominateOptions {
  /// Count a selected node as covering itself (S plus N(S)) instead of the
  /// neighbour-only N(S).
  bool closed_neighborhood = false;
};

/// k rounds of argmax |N(u) - N(S)|, lowest id on ties. Reported gains are the
/// per-round new-coverage counts.
SelectionResult dominate_select(const Graph& g, std::size_t k, const DominateOptions& options = {});

}  // namespace rwdom
