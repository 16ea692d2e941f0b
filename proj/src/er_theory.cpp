#include "ksigraph/er_theory.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ksigraph/centrality.hpp"
#include "ksigraph/generators.hpp"
#include "ksigraph/parallel.hpp"
#include "ksigraph/random.hpp"

namespace ksigraph {

namespace {

void check_args(std::size_t n, double p) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
}

// base^exponent for base in [0, 1], exact at the endpoints.
double unit_power(double base, std::size_t exponent) {
  if (exponent == 0) return 1.0;
  if (base <= 0.0) return 0.0;
  if (base >= 1.0) return 1.0;
  return std::exp(static_cast<double>(exponent) * std::log(base));
}

// (1 - p)^exponent via log1p so that small p keeps full precision.
double complement_power(double p, std::size_t exponent) {
  if (exponent == 0) return 1.0;
  if (p <= 0.0) return 1.0;
  if (p >= 1.0) return 0.0;
  return std::exp(static_cast<double>(exponent) * std::log1p(-p));
}

template <typename PerGraph>
EnsembleEstimate simulate(std::size_t n, double p, std::size_t reps,
                          std::uint64_t seed, std::size_t threads, PerGraph per_graph) {
  check_args(n, p);
  std::vector<double> samples(reps);
  parallel_for(reps, threads, [&](std::size_t r) {
    samples[r] = per_graph(erdos_renyi(n, p, derive_seed(seed, r)));
  });
  return estimate(samples);
}

}  // namespace

double expected_boundary_edges(std::size_t n, double p) {
  check_args(n, p);
  const double nn = static_cast<double>(n);
  return p * (nn - 1.0) * (1.0 + p * (1.0 - p) * (nn - 2.0));
}

double expected_normalized_ksi(std::size_t n, double p) {
  check_args(n, p);
  return p * (1.0 - complement_power(p, n - 1)) +
         (1.0 - unit_power(p, n)) / static_cast<double>(n);
}

double sparse_asymptotic(double lambda, std::size_t n) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  return (1.0 - lambda * std::expm1(-lambda)) / static_cast<double>(n);
}

ErExpectation er_expectation(std::size_t n, double p) {
  return {n, p, expected_boundary_edges(n, p), expected_normalized_ksi(n, p)};
}

EnsembleEstimate estimate(std::span<const double> values) {
  const std::size_t count = values.size();
  EnsembleEstimate e;
  e.samples = count;
  if (count == 0) return e;
  double sum = 0.0;
  for (std::size_t i = 0; i < count; ++i) sum += values[i];
  e.mean = sum / static_cast<double>(count);
  if (count > 1) {
    double ss = 0.0;
    for (std::size_t i = 0; i < count; ++i) ss += (values[i] - e.mean) * (values[i] - e.mean);
    e.std_error = std::sqrt(ss / static_cast<double>(count - 1) / static_cast<double>(count));
  }
  return e;
}

EnsembleEstimate simulate_normalized_ksi(std::size_t n, double p, std::size_t reps,
                                         std::uint64_t seed, std::size_t threads) {
  return simulate(n, p, reps, seed, threads, [](const Graph& g) {
    return centrality_all(g, CentralityKind::normalized_ksi).average;
  });
}

EnsembleEstimate simulate_boundary_edges(std::size_t n, double p, std::size_t reps,
                                         std::uint64_t seed, std::size_t threads) {
  return simulate(n, p, reps, seed, threads, [](const Graph& g) {
    const auto b = boundary_edge_counts(g);
    double sum = 0.0;
    for (auto x : b) sum += static_cast<double>(x);
    return sum / static_cast<double>(b.size());
  });
}

}  // namespace ksigraph
