#include "rwdom/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "rwdom/error.hpp"
#include "rwdom/rng.hpp"

namespace rwdom {

Graph Graph::from_edges(std::size_t num_nodes,
                        std::span<const std::pair<NodeId, NodeId>> edges,
                        IsolatedPolicy isolated, std::vector<ExternalId> external_ids) {
  if (num_nodes == 0) fail(ErrorCode::kEmptyGraph, "graph has no nodes");
  require(external_ids.empty() || external_ids.size() == num_nodes,
          "external id table size does not match node count");

  std::vector<std::pair<NodeId, NodeId>> normalized;
  normalized.reserve(edges.size());
  for (auto [u, v] : edges) {
    require(u < num_nodes && v < num_nodes, "edge endpoint out of range");
    if (u == v) {
      fail(ErrorCode::kRejectedEdge, "self-loop on node " + std::to_string(u));
    }
    normalized.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(normalized.begin(), normalized.end());
  normalized.erase(std::unique(normalized.begin(), normalized.end()), normalized.end());

  Graph g;
  g.policy_ = isolated;
  g.external_ids_ = std::move(external_ids);
  g.offsets_.assign(num_nodes + 1, 0);
  for (auto [u, v] : normalized) {
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (std::size_t i = 0; i < num_nodes; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.adjacency_.resize(g.offsets_.back());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Normalized edges are sorted by (min, max), so filling in this order
  // leaves every adjacency list sorted.
  for (auto [u, v] : normalized) g.adjacency_[cursor[u]++] = v;
  for (auto [u, v] : normalized) g.adjacency_[cursor[v]++] = u;
  for (std::size_t u = 0; u < num_nodes; ++u) {
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u + 1]));
  }

  for (std::size_t u = 0; u < num_nodes; ++u) {
    if (g.offsets_[u] == g.offsets_[u + 1]) {
      if (isolated == IsolatedPolicy::kReject) {
        fail(ErrorCode::kIsolatedNode,
             "node " + std::to_string(g.external_id(static_cast<NodeId>(u))) +
                 " has no neighbours (use permissive isolated-node mode to keep it)");
      }
      ++g.isolated_count_;
    }
  }
  return g;
}

std::size_t Graph::max_degree() const noexcept {
  std::size_t best = 0;
  for (std::size_t u = 0; u < num_nodes(); ++u) best = std::max(best, degree(static_cast<NodeId>(u)));
  return best;
}

bool Graph::has_edge(NodeId u, NodeId w) const {
  require(valid(u) && valid(w), "node id out of range");
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), w);
}

double Graph::transition_prob(NodeId u, NodeId w) const {
  require(valid(u) && valid(w), "node id out of range");
  if (is_isolated(u)) {
    if (policy_ == IsolatedPolicy::kReject) {
      fail(ErrorCode::kIsolatedNode, "transition from isolated node " + std::to_string(u));
    }
    return u == w ? 1.0 : 0.0;
  }
  return has_edge(u, w) ? 1.0 / static_cast<double>(degree(u)) : 0.0;
}

bool Graph::find_node(ExternalId id, NodeId& out) const noexcept {
  if (external_ids_.empty()) {
    if (id >= num_nodes()) return false;
    out = static_cast<NodeId>(id);
    return true;
  }
  auto it = std::lower_bound(external_ids_.begin(), external_ids_.end(), id);
  if (it == external_ids_.end() || *it != id) return false;
  out = static_cast<NodeId>(it - external_ids_.begin());
  return true;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  fail(ErrorCode::kParse, "line " + std::to_string(line) + ": " + what);
}

}  // namespace

Graph parse_edge_list(std::string_view text, const ParseOptions& options) {
  std::vector<std::pair<ExternalId, ExternalId>> raw;
  std::vector<ExternalId> declared;  // nodes seen only on skipped self-loops

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    std::size_t i = 0;
    while (i < line.size() && is_space(line[i])) ++i;
    if (i == line.size() || line[i] == '#') continue;

    ExternalId ids[2];
    int count = 0;
    while (i < line.size()) {
      if (count == 2) parse_error(line_no, "expected exactly two node ids");
      const char* first = line.data() + i;
      const char* last = line.data() + line.size();
      auto [ptr, ec] = std::from_chars(first, last, ids[count]);
      if (ec != std::errc() || (ptr != last && !is_space(*ptr))) {
        std::size_t end = i;
        while (end < line.size() && !is_space(line[end])) ++end;
        parse_error(line_no, "invalid node id '" + std::string(line.substr(i, end - i)) + "'");
      }
      ++count;
      i = static_cast<std::size_t>(ptr - line.data());
      while (i < line.size() && is_space(line[i])) ++i;
    }
    if (count != 2) parse_error(line_no, "expected exactly two node ids");

    if (ids[0] == ids[1]) {
      if (!options.skip_self_loops) {
        fail(ErrorCode::kRejectedEdge,
             "line " + std::to_string(line_no) + ": self-loop on node " + std::to_string(ids[0]));
      }
      declared.push_back(ids[0]);
      continue;
    }
    raw.emplace_back(ids[0], ids[1]);
  }

  std::vector<ExternalId> ids;
  ids.reserve(raw.size() * 2 + declared.size());
  for (auto [u, v] : raw) {
    ids.push_back(u);
    ids.push_back(v);
  }
  ids.insert(ids.end(), declared.begin(), declared.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.empty()) fail(ErrorCode::kEmptyGraph, "edge list contains no edges");
  if (ids.size() > std::numeric_limits<NodeId>::max()) {
    fail(ErrorCode::kInvalidArgument, "too many distinct nodes");
  }

  const bool dense = ids.back() == ids.size() - 1;
  auto dense_id = [&](ExternalId id) {
    if (dense) return static_cast<NodeId>(id);
    return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(raw.size());
  for (auto [u, v] : raw) edges.emplace_back(dense_id(u), dense_id(v));
  raw.clear();
  raw.shrink_to_fit();

  const std::size_t n = ids.size();
  if (dense) ids.clear();
  return Graph::from_edges(n, edges, options.isolated, std::move(ids));
}

Graph load_edge_list(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) fail(ErrorCode::kIo, "read error on " + path);
  return parse_edge_list(buffer.view(), options);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  // External ids are sorted with the dense ids, so dense order is canonical.
  std::string buf;
  char tmp[48];
  for (std::size_t u = 0; u < g.num_nodes(); ++u) {
    const auto uid = static_cast<NodeId>(u);
    for (NodeId v : g.neighbors(uid)) {
      if (v <= uid) continue;
      auto* p = std::to_chars(tmp, tmp + sizeof tmp, g.external_id(uid)).ptr;
      *p++ = ' ';
      p = std::to_chars(p, tmp + sizeof tmp, g.external_id(v)).ptr;
      *p++ = '\n';
      buf.append(tmp, p);
      if (buf.size() > (1 << 20)) {
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
        buf.clear();
      }
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  write_edge_list(g, out);
  return std::move(out).str();
}

void save_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot open " + path + " for writing");
  write_edge_list(g, out);
  out.flush();
  if (!out) fail(ErrorCode::kIo, "write error on " + path);
}

Graph generate_power_law(std::size_t num_nodes, std::size_t edges_per_node, std::uint64_t seed) {
  require(edges_per_node >= 1, "edges_per_node must be at least 1");
  require(num_nodes >= edges_per_node + 1,
          "node count must exceed edges_per_node (got n=" + std::to_string(num_nodes) +
              ", edges_per_node=" + std::to_string(edges_per_node) + ")");
  require(num_nodes <= std::numeric_limits<NodeId>::max(), "node count too large");

  const std::size_t core = edges_per_node + 1;
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(core * (core - 1) / 2 + (num_nodes - core) * edges_per_node);
  // Every endpoint occurrence; sampling uniformly from it is degree-proportional.
  std::vector<NodeId> endpoints;
  endpoints.reserve(2 * edges.capacity());
  for (NodeId u = 0; u < core; ++u) {
    for (NodeId v = u + 1; v < core; ++v) {
      edges.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }

  CounterStream rng(mix64(seed ^ 0x5851f42d4c957f2dULL));
  std::vector<NodeId> picked;
  picked.reserve(edges_per_node);
  for (std::size_t i = core; i < num_nodes; ++i) {
    const auto node = static_cast<NodeId>(i);
    picked.clear();
    while (picked.size() < edges_per_node) {
      const NodeId target = endpoints[rng.uniform(endpoints.size())];
      if (std::find(picked.begin(), picked.end(), target) == picked.end()) {
        picked.push_back(target);
      }
    }
    for (NodeId target : picked) {
      edges.emplace_back(target, node);
      endpoints.push_back(target);
      endpoints.push_back(node);
    }
  }
  endpoints.clear();
  endpoints.shrink_to_fit();
  return Graph::from_edges(num_nodes, edges);
}

}  // namespace rwdom
