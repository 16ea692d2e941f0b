#include "ksigraph/spectral.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "ksigraph/centrality.hpp"
#include "ksigraph/errors.hpp"
#include "ksigraph/parallel.hpp"

namespace ksigraph {

double algebraic_connectivity(const Graph& g, std::size_t limit) {
  const std::size_t n = g.node_count();
  if (n < 2) throw DomainError("algebraic connectivity needs at least 2 nodes");
  if (n > limit)
    throw DomainError("algebraic connectivity: " + std::to_string(n) +
                      " nodes exceeds the eigensolver limit of " + std::to_string(limit));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian<double>(g),
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw DomainError("Laplacian eigensolve did not converge");
  return std::max(0.0, solver.eigenvalues()(1));
}

namespace {

struct Best {
  std::int64_t cut = 0;
  std::int64_t size = 0;  // 0 = nothing seen yet

  void offer(std::int64_t c, std::int64_t s) {
    if (size == 0 || c * size < cut * s) {
      cut = c;
      size = s;
    }
  }
};

}  // namespace

CheegerRatio cheeger_ratio(const Graph& g, std::size_t limit, std::size_t threads) {
  const std::size_t n = g.node_count();
  if (n < 2) throw DomainError("Cheeger number needs at least 2 nodes");
  if (n > limit || n > 30)
    throw DomainError("Cheeger number: " + std::to_string(n) +
                      " nodes exceeds the enumeration limit of " + std::to_string(limit));

  std::vector<std::uint32_t> nbmask(n, 0);
  std::vector<std::int64_t> degree(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (NodeId w : g.neighbors(static_cast<NodeId>(v))) nbmask[v] |= 1u << w;
    degree[v] = static_cast<std::int64_t>(g.degree(static_cast<NodeId>(v)));
  }
  const auto half = static_cast<std::int64_t>(n);  // compare 2|S| <= n

  const std::uint64_t total = std::uint64_t{1} << n;
  const std::size_t chunks = std::max<std::size_t>(1, threads) * 4;
  std::vector<Best> best(chunks);
  const std::uint64_t step = (total + chunks - 1) / chunks;

  parallel_for(chunks, threads, [&](std::size_t c) {
    const std::uint64_t begin = std::max<std::uint64_t>(1, c * step);
    const std::uint64_t end = std::min<std::uint64_t>(total, (c + 1) * step);
    if (begin >= end) return;
    auto set = static_cast<std::uint32_t>(begin ^ (begin >> 1));
    std::int64_t size = std::popcount(set);
    std::int64_t cut = 0;
    for (std::size_t v = 0; v < n; ++v)
      if (set >> v & 1u) cut += std::popcount(nbmask[v] & ~set);
    Best local;
    if (2 * size <= half) local.offer(cut, size);
    for (std::uint64_t i = begin + 1; i < end; ++i) {
      const int v = std::countr_zero(i);
      const std::uint32_t bit = 1u << v;
      if (set & bit) {
        set &= ~bit;
        cut -= degree[v] - 2 * std::popcount(nbmask[v] & set);
        --size;
      } else {
        cut += degree[v] - 2 * std::popcount(nbmask[v] & set);
        set |= bit;
        ++size;
      }
      if (2 * size <= half) local.offer(cut, size);
    }
    best[c] = local;
  });

  Best overall;
  for (const auto& b : best)
    if (b.size) overall.offer(b.cut, b.size);
  const std::int64_t div = std::gcd(overall.cut, overall.size);
  return {overall.cut / div, overall.size / div};
}

double cheeger_number(const Graph& g, std::size_t limit, std::size_t threads) {
  return cheeger_ratio(g, limit, threads).value();
}

BoundsReport verify_bounds(const Graph& g, std::size_t threads) {
  BoundsReport report;
  const std::size_t n = g.node_count();
  report.n = n;
  report.connected = is_connected(g);
  report.cheeger = cheeger_ratio(g, kCheegerLimit, threads);
  report.lambda2 = algebraic_connectivity(g);

  const auto boundary = boundary_edge_counts(g, threads);
  const auto xi = centrality_from_boundary(g, boundary, CentralityKind::ksi);
  const auto xi_hat = centrality_from_boundary(g, boundary, CentralityKind::normalized_ksi);
  report.avg_normalized_ksi = xi_hat.average;

  const double spectral = report.lambda2 / static_cast<double>(n);
  const double slack = 1e-9 * std::max(1.0, spectral);
  const std::int64_t h_num = report.cheeger.cut;
  const std::int64_t h_den = report.cheeger.size;
  const auto nn = static_cast<std::int64_t>(n);

  report.nodes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    NodeBoundCheck rec;
    rec.node = static_cast<NodeId>(i);
    rec.degree = g.degree(rec.node);
    rec.ksi = xi.values[i];
    rec.normalized_ksi = xi_hat.values[i];
    const auto d = static_cast<std::int64_t>(rec.degree);
    rec.cheeger_bound_applicable = 2 * d <= nn;

    rec.lambda2_bound = rec.normalized_ksi >= spectral - slack;
    if (rec.cheeger_bound_applicable) {
      rec.cheeger_bound = xi.numerators[i] * h_den >= h_num * xi.denominators[i];
      rec.normalized_cheeger_bound =
          xi_hat.numerators[i] * h_den * (nn - d) >= h_num * xi_hat.denominators[i];
    } else {
      rec.normalized_cheeger_bound =
          xi_hat.numerators[i] * h_den * d >= h_num * xi_hat.denominators[i];
    }
    rec.bounds_satisfied =
        rec.lambda2_bound && rec.cheeger_bound && rec.normalized_cheeger_bound;
    if (!rec.bounds_satisfied) ++report.violations;
    report.nodes.push_back(rec);
  }
  report.average_bound = report.avg_normalized_ksi >= spectral - slack;
  if (!report.average_bound) ++report.violations;
  return report;
}

}  // namespace ksigraph
