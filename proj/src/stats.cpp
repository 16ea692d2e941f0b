#include "ksigraph/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ksigraph/errors.hpp"

namespace ksigraph {

double skewness(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) throw std::invalid_argument("skewness needs at least 2 values");
  double mean = 0.0;
  for (double x : values) mean += x;
  mean /= static_cast<double>(n);
  double m2 = 0.0, m3 = 0.0;
  for (double x : values) {
    const double d = x - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= static_cast<double>(n);
  m3 /= static_cast<double>(n);
  if (!(m2 > 0.0)) throw DomainError("degenerate sample: zero variance");
  return m3 / std::pow(m2, 1.5);
}

double weibull_log_likelihood(std::span<const double> values, double shape, double scale) {
  const double log_shape = std::log(shape);
  const double log_scale = std::log(scale);
  double ll = 0.0;
  for (double x : values) {
    const double z = std::log(x) - log_scale;
    ll += log_shape - log_scale + (shape - 1.0) * z - std::exp(shape * z);
  }
  return ll;
}

double weibull_quantile(double q, double shape, double scale) {
  return scale * std::pow(-std::log1p(-q), 1.0 / shape);
}

namespace {

struct ShapeEquation {
  std::vector<double> logs;  // ln(x / max x), all <= 0
  double mean_log = 0.0;

  // Residual and derivative at shape k.
  std::pair<double, double> operator()(double k) const {
    double a0 = 0.0, a1 = 0.0, a2 = 0.0;
    for (double l : logs) {
      const double w = std::exp(k * l);
      a0 += w;
      a1 += w * l;
      a2 += w * l * l;
    }
    const double ratio = a1 / a0;
    return {ratio - 1.0 / k - mean_log, a2 / a0 - ratio * ratio + 1.0 / (k * k)};
  }
};

}  // namespace

WeibullFit weibull_mle(std::span<const double> values, double tolerance, int max_iterations) {
  if (values.size() < 10) throw std::invalid_argument("Weibull fit needs at least 10 values");
  double x_max = 0.0, x_min = values[0];
  for (double x : values) {
    if (!(x > 0.0)) throw std::invalid_argument("Weibull fit needs positive values");
    x_max = std::max(x_max, x);
    x_min = std::min(x_min, x);
  }
  if (x_min == x_max) throw DomainError("degenerate sample: all values equal");

  ShapeEquation eq;
  eq.logs.reserve(values.size());
  for (double x : values) eq.logs.push_back(std::log(x / x_max));
  for (double l : eq.logs) eq.mean_log += l;
  eq.mean_log /= static_cast<double>(values.size());

  int iterations = 0;
  double lo = 0.0, hi = 0.0;
  double k = 1.0;
  auto [g, dg] = eq(k);
  // Bracket the root: the residual runs from -inf (k -> 0) to -mean_log > 0.
  while (std::abs(g) >= tolerance && iterations < max_iterations) {
    ++iterations;
    if (g < 0.0) {
      lo = k;
      if (hi > 0.0) break;
      k *= 2.0;
    } else {
      hi = k;
      if (lo > 0.0) break;
      k *= 0.5;
    }
    std::tie(g, dg) = eq(k);
  }
  while (std::abs(g) >= tolerance) {
    if (++iterations > max_iterations)
      throw DomainError("Weibull shape equation did not converge");
    if (g < 0.0)
      lo = k;
    else
      hi = k;
    double next = k - g / dg;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    k = next;
    std::tie(g, dg) = eq(k);
  }

  double a0 = 0.0;
  for (double l : eq.logs) a0 += std::exp(k * l);
  WeibullFit fit;
  fit.shape = k;
  fit.scale = x_max * std::pow(a0 / static_cast<double>(values.size()), 1.0 / k);
  fit.log_likelihood = weibull_log_likelihood(values, fit.shape, fit.scale);
  fit.iterations = iterations;
  return fit;
}

std::vector<QqPair> qq_pairs(std::span<const double> values, double shape, double scale) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  std::vector<QqPair> out;
  out.reserve(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double q = (static_cast<double>(i) + 0.5) / n;
    out.push_back({weibull_quantile(q, shape, scale), sorted[i]});
  }
  return out;
}

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

}  // namespace

double qq_slope(std::span<const QqPair> pairs) {
  std::vector<double> x, y;
  x.reserve(pairs.size());
  y.reserve(pairs.size());
  for (const auto& p : pairs) {
    x.push_back(p.theoretical);
    y.push_back(p.empirical);
  }
  return least_squares(x, y).slope;
}

Histogram histogram(std::span<const double> values, std::size_t bins) {
  if (bins == 0) throw std::invalid_argument("histogram needs at least one bin");
  if (values.empty()) throw std::invalid_argument("histogram of an empty sample");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it, hi = *hi_it;
  if (!(hi > lo)) throw DomainError("degenerate sample: histogram range is empty");
  const double width = (hi - lo) / static_cast<double>(bins);

  Histogram h;
  h.edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) h.edges[b] = lo + width * static_cast<double>(b);
  h.edges.back() = hi;
  h.counts.assign(bins, 0);
  for (double x : values) {
    auto b = static_cast<std::size_t>((x - lo) / width);
    ++h.counts[std::min(b, bins - 1)];
  }
  return h;
}

std::size_t sturges_bins(std::size_t n) {
  if (n <= 1) return 1;
  return static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n)))) + 1;
}

LogLinearFit log_histogram_fit(std::span<const double> values, std::size_t bins) {
  if (bins < 5) throw std::invalid_argument("log-linear fit needs at least 5 bins");
  if (values.size() < bins)
    throw std::invalid_argument("log-linear fit needs at least as many values as bins");
  double mean_log = 0.0;
  for (double x : values) {
    if (!(x > 0.0)) throw std::invalid_argument("log-linear fit needs positive values");
    mean_log += std::log(x);
  }
  mean_log /= static_cast<double>(values.size());

  LogLinearFit fit;
  fit.mean_log = mean_log;
  fit.tail_point = std::exp(mean_log);
  fit.histogram = histogram(values, bins);

  // The straight part of the log plot is the descent from the mode.
  const auto& counts = fit.histogram.counts;
  fit.first_bin = static_cast<std::size_t>(
      std::max_element(counts.begin(), counts.end()) - counts.begin());
  std::vector<double> x, y;
  for (std::size_t b = fit.first_bin; b < fit.histogram.bins(); ++b) {
    const double c = fit.histogram.center(b);
    if (counts[b] == 0 || c > fit.tail_point) continue;
    x.push_back(c);
    y.push_back(std::log(static_cast<double>(fit.histogram.counts[b])));
  }
  if (x.size() < 3)
    throw DomainError("log-linear fit: only " + std::to_string(x.size()) +
                      " nonempty bins between the mode and the tail point");
  const LineFit line = least_squares(x, y);
  fit.slope = line.slope;
  fit.intercept = line.intercept;
  fit.r_squared = line.r_squared;
  fit.bins_used = x.size();
  return fit;
}

std::string_view to_string(Verdict verdict) {
  return verdict == Verdict::real_like ? "real-like" : "artificial-like";
}

Verdict classify(double skewness) {
  return skewness > 1.0 ? Verdict::real_like : Verdict::artificial_like;
}

std::optional<Verdict> classify(const DistributionSummary& summary) {
  if (!summary.skewness) return std::nullopt;
  return classify(*summary.skewness);
}

DistributionSummary summarize(std::span<const double> values, const SummaryOptions& options) {
  if (values.empty()) throw std::invalid_argument("cannot summarize an empty sample");
  DistributionSummary s;
  s.sample_size = values.size();
  s.shifted = options.shift;

  std::vector<double> sample(values.begin(), values.end());
  if (options.shift)
    for (double& x : sample) x -= 1.0;

  auto attempt = [&](const char* step, auto&& body) {
    try {
      body();
    } catch (const std::invalid_argument& e) {
      s.notes.push_back(std::string(step) + ": " + e.what());
    } catch (const DomainError& e) {
      s.notes.push_back(std::string(step) + ": " + e.what());
    }
  };

  const std::size_t bins =
      options.bins ? options.bins : std::max<std::size_t>(5, sturges_bins(sample.size()));

  attempt("skewness", [&] {
    s.skewness = skewness(sample);
    s.verdict = classify(*s.skewness);
  });
  attempt("weibull", [&] {
    s.weibull = weibull_mle(sample);
    s.qq_pairs = qq_pairs(sample, s.weibull->shape, s.weibull->scale);
    s.qq_slope = qq_slope(s.qq_pairs);
  });
  attempt("histogram", [&] { s.histogram = histogram(sample, bins); });
  attempt("tail_point", [&] {
    double acc = 0.0;
    for (double x : sample) {
      if (!(x > 0.0)) throw std::invalid_argument("needs positive values");
      acc += std::log(x);
    }
    s.mean_log = acc / static_cast<double>(sample.size());
    s.tail_point = std::exp(*s.mean_log);
  });
  attempt("loglinear", [&] { s.loglinear = log_histogram_fit(sample, bins); });
  return s;
}

}  // namespace ksigraph
