#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ksigraph/graph.hpp"
#include "ksigraph/random.hpp"

namespace ksigraph::testing {

// G(n, q) with q itself drawn uniformly, so sparse and dense graphs both show up.
inline Graph random_graph(Rng& rng, std::size_t n) {
  const double q = rng.uniform();
  std::vector<Edge> edges;
  for (NodeId u = 0; u < static_cast<NodeId>(n); ++u)
    for (NodeId v = u + 1; v < static_cast<NodeId>(n); ++v)
      if (rng.uniform() < q) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

inline std::vector<std::vector<std::int64_t>> dense_adjacency(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(n, 0));
  for (auto [u, v] : g.edges()) a[u][v] = a[v][u] = 1;
  return a;
}

// Scratch directory under the system temp dir, emptied on construction.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("ksigraph-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace ksigraph::testing
