#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ksigraph/graph.hpp"

namespace ksigraph {

inline constexpr std::size_t kEigenLimit = 2000;
inline constexpr std::size_t kCheegerLimit = 22;

template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> laplacian(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> l =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  for (auto [u, v] : g.edges()) {
    l(u, v) = Scalar(-1);
    l(v, u) = Scalar(-1);
    l(u, u) += Scalar(1);
    l(v, v) += Scalar(1);
  }
  return l;
}

// Second-smallest eigenvalue of L = D - A by dense symmetric eigensolve.
// Needs 2 <= n <= limit, else DomainError.
double algebraic_connectivity(const Graph& g, std::size_t limit = kEigenLimit);

// h(G) as the exact fraction cut / size, reduced.
struct CheegerRatio {
  std::int64_t cut = 0;
  std::int64_t size = 1;
  double value() const { return static_cast<double>(cut) / static_cast<double>(size); }
};

/// Cheeger number min |E(S, V\S)| / |S| over nonempty S with |S| <= n/2.
///
/// Exhaustive: all 2^n subsets in Gray-code order, the cut updated per flipped
/// vertex from neighbor bitmasks. Needs 2 <= n <= limit (at most 22 by
/// default); chunks of the code sequence run on separate threads.
CheegerRatio cheeger_ratio(const Graph& g, std::size_t limit = kCheegerLimit,
                           std::size_t threads = 1);
double cheeger_number(const Graph& g, std::size_t limit = kCheegerLimit,
                      std::size_t threads = 1);

struct NodeBoundCheck {
  NodeId node = 0;
  std::size_t degree = 0;
  double ksi = 0.0;
  double normalized_ksi = 0.0;
  bool cheeger_bound_applicable = false;  // d_i <= n/2
  bool lambda2_bound = true;              // normalized ksi >= lambda2 / n
  bool cheeger_bound = true;              // ksi >= h, when applicable
  bool normalized_cheeger_bound = true;   // normalized ksi >= h/(n-d) or h/d
  bool bounds_satisfied = true;
};

struct BoundsReport {
  std::size_t n = 0;
  bool connected = false;
  double lambda2 = 0.0;
  CheegerRatio cheeger;
  double avg_normalized_ksi = 0.0;
  bool average_bound = true;  // average normalized ksi >= lambda2 / n
  std::vector<NodeBoundCheck> nodes;
  std::size_t violations = 0;  // failing nodes, plus one for the average

  bool ok() const { return violations == 0; }
};

/// Checks every node against the spectral and Cheeger lower bounds:
///   normalized ksi_i >= lambda2 / n              (every node, and the average)
///   ksi_i >= h                                   (d_i <= n/2)
///   normalized ksi_i >= h / (n - d_i)            (d_i <= n/2)
///   normalized ksi_i >= h / d_i                  (otherwise)
/// Cheeger comparisons are exact in integers; the lambda2 comparison allows a
/// relative slack of 1e-9 for the eigensolver.
BoundsReport verify_bounds(const Graph& g, std::size_t threads = 1);

}  // namespace ksigraph
