#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ksigraph {

using NodeId = std::int32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Immutable simple undirected graph in compressed sparse row form.
///
/// Node ids are dense in [0, node_count()). Every node carries a string label
/// (the identifier it had in the source edge list, or its decimal id for
/// generated graphs). Neighbor lists are sorted and free of duplicates and
/// self-loops, so the degree of i is neighbors(i).size().
class Graph {
 public:
  Graph() = default;

  // Duplicates (in either orientation) collapse; self-loops and ids outside
  // [0, n) throw std::invalid_argument. Empty `labels` means "0".."n-1".
  static Graph from_edges(std::size_t n, std::span<const Edge> edges,
                          std::vector<std::string> labels = {});

  std::size_t node_count() const { return labels_.size(); }
  std::size_t edge_count() const { return targets_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId i) const {
    return {targets_.data() + offsets_[i], targets_.data() + offsets_[i + 1]};
  }
  std::size_t degree(NodeId i) const { return offsets_[i + 1] - offsets_[i]; }
  bool has_edge(NodeId u, NodeId v) const;

  const std::string& label(NodeId i) const { return labels_[i]; }
  std::span<const std::string> labels() const { return labels_; }

  // Each undirected edge once as (u, v) with u < v, lexicographically sorted.
  std::vector<Edge> edges() const;

  bool contains(NodeId i) const {
    return i >= 0 && static_cast<std::size_t>(i) < node_count();
  }

  bool operator==(const Graph&) const = default;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> targets_;
  std::vector<std::string> labels_;
};

struct IngestOptions {
  std::vector<std::string> comment_prefixes{"#", "%"};
  bool drop_self_loops = true;
  bool take_lcc = false;
};

struct IngestStats {
  std::size_t lines = 0;
  std::size_t comment_lines = 0;
  std::size_t blank_lines = 0;
  std::size_t duplicate_edges = 0;
  std::size_t self_loops = 0;
};

// Whitespace-separated edge list; first two tokens of a line are endpoint
// labels, the rest is ignored. LF and CRLF both work. Labels get dense ids in
// order of first appearance. Throws InputError with the line number on a
// malformed line, on a self-loop when drop_self_loops is off, and on input
// with no edges.
Graph load_edge_list(std::istream& in, const IngestOptions& opts = {},
                     IngestStats* stats = nullptr);
Graph load_edge_list(const std::filesystem::path& path,
                     const IngestOptions& opts = {},
                     IngestStats* stats = nullptr);

// Canonical form: one "label_u label_v" line per edge, in edges() order.
void write_edge_list(std::ostream& out, const Graph& g);

/// Number of edges with exactly one endpoint in the neighborhood N(i).
///
/// Node i lies outside N(i), so its d_i incident edges are counted. Equals
/// sum of d_j over j in N(i), minus twice the number of edges inside N(i).
/// Throws std::out_of_range for an invalid node.
std::int64_t boundary_edge_count(const Graph& g, NodeId i);

// Component index per node; components are numbered by their smallest node.
std::vector<std::size_t> connected_components(const Graph& g,
                                              std::size_t* count = nullptr);
bool is_connected(const Graph& g);

// Node-induced subgraph; nodes keep their labels and relative order.
Graph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

// Largest component; ties go to the component with the smallest node id.
Graph largest_connected_component(const Graph& g);

}  // namespace ksigraph
