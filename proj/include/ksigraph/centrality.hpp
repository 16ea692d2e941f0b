#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "ksigraph/graph.hpp"

namespace ksigraph {

enum class CentralityKind { ksi, normalized_ksi };

std::string_view to_string(CentralityKind kind);

/// Per-node ksi or normalized ksi with the exact rational behind each value.
///
/// values[i] == numerators[i] / denominators[i]. For ksi the pair is
/// (boundary edges, d_i); for normalized ksi (boundary edges, d_i (n - d_i)).
/// Isolated nodes use the conventions 1/1 and 1/n. `average` is the plain
/// mean over all nodes (the average ksi coefficient, or its normalized form).
struct CentralityVector {
  CentralityKind kind = CentralityKind::ksi;
  std::vector<double> values;
  std::vector<std::int64_t> numerators;
  std::vector<std::int64_t> denominators;
  double average = 0.0;
};

double ksi(const Graph& g, NodeId i);
double normalized_ksi(const Graph& g, NodeId i);

// Boundary edge counts of all nodes by neighbor marking; parallel over nodes,
// identical output for any thread count.
std::vector<std::int64_t> boundary_edge_counts(const Graph& g,
                                               std::size_t threads = 1);

CentralityVector centrality_all(const Graph& g, CentralityKind kind,
                                std::size_t threads = 1);

// Builds either centrality from precomputed boundary counts.
CentralityVector centrality_from_boundary(const Graph& g,
                                          const std::vector<std::int64_t>& boundary,
                                          CentralityKind kind);

}  // namespace ksigraph
