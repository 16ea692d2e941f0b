#include "ksigraph/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "ksigraph/errors.hpp"

namespace ksigraph {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges,
                        std::vector<std::string> labels) {
  if (labels.empty()) {
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  } else if (labels.size() != n) {
    throw std::invalid_argument("label count does not match node count");
  }

  std::vector<Edge> canon;
  canon.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n ||
        static_cast<std::size_t>(v) >= n)
      throw std::invalid_argument("edge endpoint outside [0, n)");
    if (u == v) throw std::invalid_argument("self-loop in simple graph");
    canon.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());

  Graph g;
  g.labels_ = std::move(labels);
  g.offsets_.assign(n + 1, 0);
  for (auto [u, v] : canon) {
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.targets_.resize(2 * canon.size());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (auto [u, v] : canon) {
    g.targets_[fill[u]++] = v;
    g.targets_[fill[v]++] = u;
  }
  for (std::size_t i = 0; i < n; ++i)
    std::sort(g.targets_.begin() + g.offsets_[i],
              g.targets_.begin() + g.offsets_[i + 1]);
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; static_cast<std::size_t>(u) < node_count(); ++u)
    for (NodeId v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

namespace {

bool is_comment(std::string_view line,
                const std::vector<std::string>& prefixes) {
  for (const auto& p : prefixes)
    if (!p.empty() && line.starts_with(p)) return true;
  return false;
}

}  // namespace

Graph load_edge_list(std::istream& in, const IngestOptions& opts,
                     IngestStats* stats) {
  IngestStats local;
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  std::vector<Edge> edges;

  auto id_of = [&](const std::string& label) {
    auto [it, inserted] = ids.try_emplace(label, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    ++local.lines;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) {
      ++local.blank_lines;
      continue;
    }
    if (is_comment(std::string_view(line).substr(first), opts.comment_prefixes)) {
      ++local.comment_lines;
      continue;
    }
    std::istringstream tokens(line);
    std::string a, b;
    if (!(tokens >> a >> b))
      throw InputError("line " + std::to_string(line_no) +
                       ": expected two endpoint tokens");
    if (a == b) {
      if (!opts.drop_self_loops)
        throw InputError("line " + std::to_string(line_no) + ": self-loop on '" +
                         a + "'");
      ++local.self_loops;
      continue;
    }
    const NodeId u = id_of(a);
    const NodeId v = id_of(b);
    edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  if (in.bad()) throw InputError("read error after line " + std::to_string(line_no));
  if (labels.empty()) throw InputError("edge list contains no edges");

  const std::size_t raw = edges.size();
  const std::size_t n = labels.size();
  Graph g = Graph::from_edges(n, edges, std::move(labels));
  local.duplicate_edges = raw - g.edge_count();
  if (stats) *stats = local;
  return opts.take_lcc ? largest_connected_component(g) : g;
}

Graph load_edge_list(const std::filesystem::path& path,
                     const IngestOptions& opts, IngestStats* stats) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open");
  try {
    return load_edge_list(in, opts, stats);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (auto [u, v] : g.edges()) out << g.label(u) << ' ' << g.label(v) << '\n';
}

std::int64_t boundary_edge_count(const Graph& g, NodeId i) {
  if (!g.contains(i)) throw std::out_of_range("node id out of range");
  auto nb = g.neighbors(i);
  std::int64_t degree_sum = 0;
  std::int64_t inner = 0;  // each edge inside N(i) seen from both ends
  for (NodeId j : nb) {
    auto nj = g.neighbors(j);
    degree_sum += static_cast<std::int64_t>(nj.size());
    // Both lists sorted: merge-count the common neighbors.
    auto a = nb.begin();
    auto b = nj.begin();
    while (a != nb.end() && b != nj.end()) {
      if (*a < *b) {
        ++a;
      } else if (*b < *a) {
        ++b;
      } else {
        ++inner;
        ++a;
        ++b;
      }
    }
  }
  return degree_sum - inner;
}

std::vector<std::size_t> connected_components(const Graph& g,
                                              std::size_t* count) {
  const std::size_t n = g.node_count();
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> comp(n, unset);
  std::vector<NodeId> stack;
  std::size_t next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] != unset) continue;
    comp[s] = next;
    stack.push_back(static_cast<NodeId>(s));
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      for (NodeId v : g.neighbors(u))
        if (comp[v] == unset) {
          comp[v] = next;
          stack.push_back(v);
        }
    }
    ++next;
  }
  if (count) *count = next;
  return comp;
}

bool is_connected(const Graph& g) {
  std::size_t count = 0;
  connected_components(g, &count);
  return count <= 1;
}

Graph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
  std::vector<NodeId> keep(nodes.begin(), nodes.end());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::vector<NodeId> remap(g.node_count(), -1);
  std::vector<std::string> labels;
  labels.reserve(keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    if (!g.contains(keep[k])) throw std::out_of_range("node id out of range");
    remap[keep[k]] = static_cast<NodeId>(k);
    labels.push_back(g.label(keep[k]));
  }
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges())
    if (remap[u] >= 0 && remap[v] >= 0) edges.emplace_back(remap[u], remap[v]);
  return Graph::from_edges(keep.size(), edges, std::move(labels));
}

Graph largest_connected_component(const Graph& g) {
  std::size_t count = 0;
  const auto comp = connected_components(g, &count);
  if (count <= 1) return g;
  std::vector<std::size_t> sizes(count, 0);
  for (auto c : comp) ++sizes[c];
  // Components are numbered by smallest member, so max_element's first-hit
  // rule is the tie-break.
  const auto best = static_cast<std::size_t>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  std::vector<NodeId> nodes;
  for (std::size_t i = 0; i < comp.size(); ++i)
    if (comp[i] == best) nodes.push_back(static_cast<NodeId>(i));
  return induced_subgraph(g, nodes);
}

}  // namespace ksigraph
