#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace ksigraph {

// Closed forms for G(n, p). Arguments outside n >= 1, p in [0, 1] throw
// std::invalid_argument.

// E|E(N(i), V \ N(i))| = p (n-1) (1 + p (1-p) (n-2)).
double expected_boundary_edges(std::size_t n, double p);

// E(normalized ksi) = p (1 - (1-p)^(n-1)) + (1 - p^n) / n; also the
// expectation of the graph average.
double expected_normalized_ksi(std::size_t n, double p);

// Leading term (1 + lambda (1 - e^-lambda)) / n of the above at p = lambda/n.
double sparse_asymptotic(double lambda, std::size_t n);

struct ErExpectation {
  std::size_t n = 0;
  double p = 0.0;
  double expected_boundary = 0.0;
  double expected_normalized_ksi = 0.0;
};

ErExpectation er_expectation(std::size_t n, double p);

struct EnsembleEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample sd / sqrt(samples)
  std::size_t samples = 0;
};

// Monte-Carlo over `reps` seeded G(n, p) graphs (graph r uses
// derive_seed(seed, r)). Per graph: the normalized ksi coefficient, or the
// mean boundary edge count over nodes.
EnsembleEstimate simulate_normalized_ksi(std::size_t n, double p, std::size_t reps,
                                         std::uint64_t seed, std::size_t threads = 1);
EnsembleEstimate simulate_boundary_edges(std::size_t n, double p, std::size_t reps,
                                         std::uint64_t seed, std::size_t threads = 1);

// Mean and standard error of a sample, summed in index order.
EnsembleEstimate estimate(std::span<const double> values);

}  // namespace ksigraph
