#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>

#include "ksigraph/centrality.hpp"
#include "ksigraph/errors.hpp"

namespace ksigraph {

inline constexpr std::size_t kDenseLimit = 5000;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar = std::int64_t>
DenseMatrix<Scalar> adjacency_matrix(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  DenseMatrix<Scalar> a = DenseMatrix<Scalar>::Zero(n, n);
  for (auto [u, v] : g.edges()) {
    a(u, v) = Scalar(1);
    a(v, u) = Scalar(1);
  }
  return a;
}

/// Ksi through dense products: xi_i = (A^2 (J - A))_ii / (A^2)_ii, with J the
/// all-ones matrix. Used as an independent check of the sparse path, so it
/// follows the matrix formula literally. Throws DomainError above
/// `dense_limit` nodes.
template <typename Scalar = std::int64_t>
CentralityVector ksi_matrix(const Graph& g, std::size_t dense_limit = kDenseLimit) {
  const std::size_t n = g.node_count();
  if (n > dense_limit)
    throw DomainError("ksi_matrix: " + std::to_string(n) +
                      " nodes exceeds the dense limit of " +
                      std::to_string(dense_limit) + "; use centrality_all");

  const DenseMatrix<Scalar> a = adjacency_matrix<Scalar>(g);
  const DenseMatrix<Scalar> complement =
      DenseMatrix<Scalar>::Ones(a.rows(), a.cols()) - a;
  const DenseMatrix<Scalar> a2 = a * a;

  CentralityVector out;
  out.kind = CentralityKind::ksi;
  out.values.resize(n);
  out.numerators.resize(n);
  out.denominators.resize(n);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const Scalar num = a2.row(i).dot(complement.col(i));
    const Scalar den = a2(i, i);
    std::int64_t p = 1, q = 1;
    if (den != Scalar(0)) {
      p = static_cast<std::int64_t>(std::llround(static_cast<double>(num)));
      q = static_cast<std::int64_t>(std::llround(static_cast<double>(den)));
    }
    out.numerators[i] = p;
    out.denominators[i] = q;
    out.values[i] = static_cast<double>(p) / static_cast<double>(q);
    sum += out.values[i];
  }
  out.average = n ? sum / static_cast<double>(n) : 0.0;
  return out;
}

}  // namespace ksigraph
