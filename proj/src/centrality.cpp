#include "ksigraph/centrality.hpp"

#include <stdexcept>

#include "ksigraph/parallel.hpp"

namespace ksigraph {

std::string_view to_string(CentralityKind kind) {
  return kind == CentralityKind::ksi ? "ksi" : "normalized_ksi";
}

double ksi(const Graph& g, NodeId i) {
  const std::int64_t b = boundary_edge_count(g, i);
  const auto d = static_cast<std::int64_t>(g.degree(i));
  return d == 0 ? 1.0 : static_cast<double>(b) / static_cast<double>(d);
}

double normalized_ksi(const Graph& g, NodeId i) {
  const std::int64_t b = boundary_edge_count(g, i);
  const auto n = static_cast<std::int64_t>(g.node_count());
  const auto d = static_cast<std::int64_t>(g.degree(i));
  if (d == 0) return 1.0 / static_cast<double>(n);
  return static_cast<double>(b) / static_cast<double>(d * (n - d));
}

std::vector<std::int64_t> boundary_edge_counts(const Graph& g, std::size_t threads) {
  const std::size_t n = g.node_count();
  std::vector<std::int64_t> out(n, 0);
  parallel_chunks(n, threads, [&](std::size_t begin, std::size_t end) {
    std::vector<unsigned char> mark(n, 0);
    for (std::size_t i = begin; i < end; ++i) {
      auto nb = g.neighbors(static_cast<NodeId>(i));
      for (NodeId j : nb) mark[j] = 1;
      std::int64_t degree_sum = 0;
      std::int64_t inner = 0;
      for (NodeId j : nb) {
        auto nj = g.neighbors(j);
        degree_sum += static_cast<std::int64_t>(nj.size());
        for (NodeId k : nj) inner += mark[k];
      }
      for (NodeId j : nb) mark[j] = 0;
      out[i] = degree_sum - inner;
    }
  });
  return out;
}

CentralityVector centrality_from_boundary(const Graph& g,
                                          const std::vector<std::int64_t>& boundary,
                                          CentralityKind kind) {
  const std::size_t n = g.node_count();
  if (boundary.size() != n)
    throw std::invalid_argument("boundary count vector has wrong length");
  const auto nn = static_cast<std::int64_t>(n);

  CentralityVector out;
  out.kind = kind;
  out.values.resize(n);
  out.numerators.resize(n);
  out.denominators.resize(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = static_cast<std::int64_t>(g.degree(static_cast<NodeId>(i)));
    std::int64_t num = boundary[i];
    std::int64_t den = kind == CentralityKind::ksi ? d : d * (nn - d);
    if (d == 0) {
      num = 1;
      den = kind == CentralityKind::ksi ? 1 : nn;
    }
    out.numerators[i] = num;
    out.denominators[i] = den;
    out.values[i] = static_cast<double>(num) / static_cast<double>(den);
    sum += out.values[i];
  }
  out.average = n ? sum / static_cast<double>(n) : 0.0;
  return out;
}

CentralityVector centrality_all(const Graph& g, CentralityKind kind,
                                std::size_t threads) {
  return centrality_from_boundary(g, boundary_edge_counts(g, threads), kind);
}

}  // namespace ksigraph
