#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ksigraph {

/// Pearson's moment coefficient of skewness with population (1/n) moments:
/// m3 / m2^(3/2). Needs at least 2 values (std::invalid_argument) and nonzero
/// variance (DomainError "degenerate sample").
double skewness(std::span<const double> values);

struct WeibullFit {
  double shape = 0.0;
  double scale = 0.0;
  double log_likelihood = 0.0;
  int iterations = 0;
};

double weibull_log_likelihood(std::span<const double> values, double shape, double scale);
double weibull_quantile(double q, double shape, double scale);

/// Two-parameter Weibull maximum likelihood.
///
/// The scale is profiled out, leaving the shape equation
///   sum x^k ln x / sum x^k - 1/k - mean(ln x) = 0,
/// which is increasing in k. It is bracketed by doubling and solved by Newton
/// steps that fall back to bisection, until |residual| < tolerance. Values are
/// rescaled by the sample maximum first so x^k cannot overflow.
/// Errors: fewer than 10 values or a non-positive value (std::invalid_argument),
/// a constant sample or no convergence in max_iterations (DomainError).
WeibullFit weibull_mle(std::span<const double> values, double tolerance = 1e-8,
                       int max_iterations = 200);

struct QqPair {
  double theoretical = 0.0;
  double empirical = 0.0;
};

// (F^-1((i - 0.5)/n), x_(i)) for the sorted sample against Weibull(shape, scale).
std::vector<QqPair> qq_pairs(std::span<const double> values, double shape, double scale);

// Least-squares slope of empirical on theoretical quantiles.
double qq_slope(std::span<const QqPair> pairs);

struct Histogram {
  std::vector<double> edges;  // bins + 1, strictly increasing
  std::vector<std::size_t> counts;

  std::size_t bins() const { return counts.size(); }
  double center(std::size_t b) const { return 0.5 * (edges[b] + edges[b + 1]); }
};

// Equal-width bins over [min, max], last bin closed. A constant sample has no
// width to split and throws DomainError.
Histogram histogram(std::span<const double> values, std::size_t bins);

// ceil(log2 n) + 1.
std::size_t sturges_bins(std::size_t n);

struct LogLinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double tail_point = 0.0;  // exp(mean ln x), the geometric mean
  double mean_log = 0.0;    // mean ln x
  std::size_t first_bin = 0;  // the modal bin, where the window starts
  std::size_t bins_used = 0;
  Histogram histogram;
};

/// Straight line through (bin center, ln count) for the nonempty bins from the
/// modal bin up to the tail point exp(mean ln x), bin centers compared. The
/// counts come from histogram(values, bins).
/// Needs positive values and size >= bins >= 5 (std::invalid_argument), and at
/// least 3 usable bins (DomainError).
LogLinearFit log_histogram_fit(std::span<const double> values, std::size_t bins);

enum class Verdict { real_like, artificial_like };

std::string_view to_string(Verdict verdict);

// real-like iff skewness > 1.
Verdict classify(double skewness);

struct SummaryOptions {
  std::size_t bins = 0;  // 0: max(5, Sturges)
  bool shift = false;    // fit x - 1 instead of x
};

/// Everything reported about one centrality distribution. Steps that cannot
/// run on the given sample (a constant sample has no skewness, a star has too
/// few bins below its tail point) leave their field empty and record why.
struct DistributionSummary {
  std::size_t sample_size = 0;
  bool shifted = false;
  std::optional<double> skewness;
  std::optional<WeibullFit> weibull;
  std::vector<QqPair> qq_pairs;
  std::optional<double> qq_slope;
  Histogram histogram;
  std::optional<LogLinearFit> loglinear;
  std::optional<double> tail_point;
  std::optional<double> mean_log;
  std::optional<Verdict> verdict;
  std::vector<std::string> notes;  // "<step>: <reason>" for skipped steps
};

DistributionSummary summarize(std::span<const double> values,
                              const SummaryOptions& options = {});

std::optional<Verdict> classify(const DistributionSummary& summary);

}  // namespace ksigraph
