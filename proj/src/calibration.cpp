#include "ksigraph/calibration.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>
#include <unsupported/Eigen/SpecialFunctions>

#include "ksigraph/centrality.hpp"
#include "ksigraph/er_theory.hpp"
#include "ksigraph/errors.hpp"
#include "ksigraph/generators.hpp"
#include "ksigraph/parallel.hpp"
#include "ksigraph/random.hpp"

namespace ksigraph {

namespace {

constexpr std::size_t kTerms = 5;
// log alpha, log beta per term. The weights enter linearly and are solved
// exactly for every trial shape set (variable projection).
constexpr int kParams = 2 * kTerms;
constexpr double kMinStdError = 1e-4;
constexpr double kRidge = 1e-3;

Eigen::ArrayXd mixture_values(const BetaMixture& f, const Eigen::ArrayXd& x) {
  Eigen::ArrayXd y = Eigen::ArrayXd::Zero(x.size());
  for (const auto& t : f.terms) {
    if (t.weight == 0.0) continue;
    const Eigen::ArrayXd a = Eigen::ArrayXd::Constant(x.size(), t.alpha);
    const Eigen::ArrayXd b = Eigen::ArrayXd::Constant(x.size(), t.beta);
    y += t.weight * Eigen::betainc(a, b, x);
  }
  return y;
}

std::array<std::pair<double, double>, kTerms> shapes(const Eigen::VectorXd& theta) {
  std::array<std::pair<double, double>, kTerms> out;
  for (std::size_t k = 0; k < kTerms; ++k)
    out[k] = {std::exp(std::clamp(theta(2 * k), -7.0, 9.0)),
              std::exp(std::clamp(theta(2 * k + 1), -7.0, 9.0))};
  return out;
}

// Column k holds I_x(alpha_k, beta_k) at every data point.
Eigen::MatrixXd basis(const Eigen::VectorXd& theta, const Eigen::ArrayXd& x) {
  Eigen::MatrixXd cols(x.size(), kTerms);
  const auto sh = shapes(theta);
  for (std::size_t k = 0; k < kTerms; ++k) {
    const Eigen::ArrayXd a = Eigen::ArrayXd::Constant(x.size(), sh[k].first);
    const Eigen::ArrayXd b = Eigen::ArrayXd::Constant(x.size(), sh[k].second);
    cols.col(static_cast<Eigen::Index>(k)) = Eigen::betainc(a, b, x).matrix();
  }
  return cols;
}

// min |B w - t| over w >= 0, sum w = 1, by trying every active set: each is a
// small equality-constrained solve, and a single term (w = e_k) is always
// feasible.
Eigen::VectorXd simplex_least_squares(const Eigen::MatrixXd& b, const Eigen::VectorXd& t) {
  const auto cols = static_cast<std::size_t>(b.cols());
  Eigen::VectorXd best = Eigen::VectorXd::Zero(b.cols());
  double best_norm = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask < (1u << cols); ++mask) {
    std::vector<Eigen::Index> idx;
    for (std::size_t k = 0; k < cols; ++k)
      if (mask >> k & 1u) idx.push_back(static_cast<Eigen::Index>(k));
    const auto s = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd bs(b.rows(), s);
    for (Eigen::Index j = 0; j < s; ++j) bs.col(j) = b.col(idx[j]);
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(s + 1, s + 1);
    kkt.topLeftCorner(s, s) = bs.transpose() * bs;
    kkt.topRightCorner(s, 1).setOnes();
    kkt.bottomLeftCorner(1, s).setOnes();
    Eigen::VectorXd rhs(s + 1);
    rhs.head(s) = bs.transpose() * t;
    rhs(s) = 1.0;
    const auto lu = kkt.fullPivLu();
    if (!lu.isInvertible()) continue;
    const Eigen::VectorXd sol = lu.solve(rhs);
    if ((sol.head(s).array() < -1e-12).any()) continue;
    Eigen::VectorXd w = Eigen::VectorXd::Zero(b.cols());
    for (Eigen::Index j = 0; j < s; ++j) w(idx[j]) = std::max(0.0, sol(j));
    w /= w.sum();
    const double norm = (b * w - t).norm();
    if (norm < best_norm) {
      best_norm = norm;
      best = w;
    }
  }
  return best;
}

// Residuals: standardized data misfits followed by a weak ridge toward the
// starting shapes, which keeps the problem overdetermined for short grids.
struct MixtureResiduals {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  Eigen::ArrayXd x, y, sigma;
  Eigen::VectorXd anchor;

  int inputs() const { return kParams; }
  int values() const { return static_cast<int>(x.size()) + kParams; }

  Eigen::VectorXd weights(const Eigen::VectorXd& theta) const {
    const Eigen::MatrixXd b = basis(theta, x).array().colwise() / sigma;
    return simplex_least_squares(b, (y / sigma).matrix());
  }

  BetaMixture mixture(const Eigen::VectorXd& theta) const {
    BetaMixture f;
    const auto sh = shapes(theta);
    const Eigen::VectorXd w = weights(theta);
    for (std::size_t k = 0; k < kTerms; ++k)
      f.terms[k] = {w(static_cast<Eigen::Index>(k)), sh[k].first, sh[k].second};
    return f;
  }

  int operator()(const Eigen::VectorXd& theta, Eigen::VectorXd& r) const {
    const Eigen::MatrixXd b = basis(theta, x).array().colwise() / sigma;
    const Eigen::VectorXd t = (y / sigma).matrix();
    r.resize(values());
    r.head(x.size()) = b * simplex_least_squares(b, t) - t;
    r.tail(kParams) = kRidge * (theta - anchor);
    return 0;
  }
};

// The same misfit over all parameters at once: 4 weight logits (the fifth is
// pinned at 0) followed by the shapes. Smooth, so it polishes the projected fit.
struct FullResiduals {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  static constexpr int kFull = kParams + kTerms - 1;

  Eigen::ArrayXd x, y, sigma;
  Eigen::VectorXd anchor;

  int inputs() const { return kFull; }
  int values() const { return static_cast<int>(x.size()) + kFull; }

  BetaMixture mixture(const Eigen::VectorXd& theta) const {
    BetaMixture f;
    Eigen::ArrayXd logits = Eigen::ArrayXd::Zero(kTerms);
    logits.head(kTerms - 1) = theta.head(kTerms - 1).array();
    const Eigen::ArrayXd w = (logits - logits.maxCoeff()).exp();
    const auto sh = shapes(theta.tail(kParams));
    for (std::size_t k = 0; k < kTerms; ++k)
      f.terms[k] = {w(static_cast<Eigen::Index>(k)) / w.sum(), sh[k].first, sh[k].second};
    return f;
  }

  int operator()(const Eigen::VectorXd& theta, Eigen::VectorXd& r) const {
    r.resize(values());
    r.head(x.size()) = ((mixture_values(mixture(theta), x) - y) / sigma).matrix();
    r.tail(kFull) = kRidge * (theta - anchor);
    return 0;
  }
};

// Logits reproducing the given weights, relative to the last term.
Eigen::VectorXd full_parameters(const BetaMixture& f, const Eigen::VectorXd& shape_theta) {
  Eigen::VectorXd theta(FullResiduals::kFull);
  const double last = std::log(std::max(f.terms[kTerms - 1].weight, 1e-9));
  for (std::size_t k = 0; k + 1 < kTerms; ++k)
    theta(static_cast<Eigen::Index>(k)) = std::log(std::max(f.terms[k].weight, 1e-9)) - last;
  theta.tail(kParams) = shape_theta;
  return theta;
}

template <typename Functor>
Eigen::LevenbergMarquardtSpace::Status minimize(const Functor& functor, Eigen::VectorXd& theta,
                                               int max_evaluations) {
  Eigen::NumericalDiff<Functor> numeric(functor);
  Eigen::LevenbergMarquardt<Eigen::NumericalDiff<Functor>> lm(numeric);
  lm.parameters.maxfev = max_evaluations;
  return lm.minimize(theta);
}

bool converged(Eigen::LevenbergMarquardtSpace::Status info) {
  using namespace Eigen::LevenbergMarquardtSpace;
  return info == RelativeReductionTooSmall || info == RelativeErrorTooSmall ||
         info == RelativeErrorAndReductionTooSmall || info == CosinusTooSmall ||
         info == FtolTooSmall || info == XtolTooSmall || info == GtolTooSmall;
}

Eigen::VectorXd initial_guess(double concentration) {
  // Component means spread over the decades the grid spans.
  constexpr std::array<double, kTerms> means{0.005, 0.03, 0.15, 0.5, 0.97};
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(kParams);
  for (std::size_t k = 0; k < kTerms; ++k) {
    theta(2 * k) = std::log(means[k] * concentration);
    theta(2 * k + 1) = std::log((1.0 - means[k]) * concentration);
  }
  return theta;
}

// Forward selection of kTerms shapes from a log-spaced grid, each step adding
// the candidate that most reduces the weighted misfit.
Eigen::VectorXd greedy_guess(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y,
                             const Eigen::ArrayXd& sigma) {
  std::vector<std::pair<double, double>> grid;
  for (int i = 0; i <= 12; ++i)
    for (int j = 0; j <= 10; ++j) grid.emplace_back(-5.0 + 11.0 * i / 12.0, -3.0 + j);
  Eigen::MatrixXd cand(x.size(), static_cast<Eigen::Index>(grid.size()));
  for (std::size_t c = 0; c < grid.size(); ++c) {
    const Eigen::ArrayXd a = Eigen::ArrayXd::Constant(x.size(), std::exp(grid[c].first));
    const Eigen::ArrayXd b = Eigen::ArrayXd::Constant(x.size(), std::exp(grid[c].second));
    cand.col(static_cast<Eigen::Index>(c)) = (Eigen::betainc(a, b, x) / sigma).matrix();
  }
  const Eigen::VectorXd t = (y / sigma).matrix();
  std::vector<std::size_t> chosen;
  while (chosen.size() < kTerms) {
    std::size_t pick = 0;
    double pick_norm = std::numeric_limits<double>::infinity();
    Eigen::MatrixXd b(x.size(), static_cast<Eigen::Index>(chosen.size() + 1));
    for (std::size_t j = 0; j < chosen.size(); ++j)
      b.col(static_cast<Eigen::Index>(j)) = cand.col(static_cast<Eigen::Index>(chosen[j]));
    for (std::size_t c = 0; c < grid.size(); ++c) {
      if (std::find(chosen.begin(), chosen.end(), c) != chosen.end()) continue;
      b.col(b.cols() - 1) = cand.col(static_cast<Eigen::Index>(c));
      const double norm = (b * simplex_least_squares(b, t) - t).norm();
      if (norm < pick_norm) {
        pick_norm = norm;
        pick = c;
      }
    }
    chosen.push_back(pick);
  }
  Eigen::VectorXd theta(kParams);
  for (std::size_t k = 0; k < kTerms; ++k) {
    theta(2 * k) = grid[chosen[k]].first;
    theta(2 * k + 1) = grid[chosen[k]].second;
  }
  return theta;
}

double rmse(const std::vector<double>& errors) {
  if (errors.empty()) return std::numeric_limits<double>::quiet_NaN();
  double ss = 0.0;
  for (double e : errors) ss += e * e;
  return std::sqrt(ss / static_cast<double>(errors.size()));
}

double piecewise_linear(std::span<const double> xs, std::span<const double> ys, double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t j = static_cast<std::size_t>(it - xs.begin());
  const double t = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
  return ys[j - 1] + t * (ys[j] - ys[j - 1]);
}

// Through (0, 0), the sampled points and (1, 1), like the mixture; a running
// maximum keeps it monotone when neighbors are within noise.
double monotone_interpolant(std::span<const double> xs, std::span<const double> ys, double x) {
  std::vector<double> px{0.0}, py{0.0};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] <= px.back()) continue;
    px.push_back(xs[i]);
    py.push_back(std::max(ys[i], py.back()));
  }
  if (px.back() < 1.0) {
    px.push_back(1.0);
    py.push_back(std::max(1.0, py.back()));
  }
  return piecewise_linear(px, py, x);
}

}  // namespace

double BetaMixture::operator()(double x) const {
  x = std::clamp(x, 0.0, 1.0);
  Eigen::ArrayXd xs(1);
  xs << x;
  return mixture_values(*this, xs)(0);
}

XiHatSample sample_xi_hat(std::size_t n, std::size_t m, std::size_t reps,
                          std::uint64_t seed, std::size_t threads) {
  if (reps == 0) throw std::invalid_argument("reps must be >= 1");
  GeneratorSpec{.model = Model::ba, .n = n, .m = m}.validate();
  std::vector<double> values(reps);
  parallel_for(reps, threads, [&](std::size_t r) {
    const Graph g = barabasi_albert(n, m, derive_seed(seed, r));
    values[r] = centrality_all(g, CentralityKind::normalized_ksi).average;
  });
  const auto e = estimate(values);
  return {e.mean, e.std_error};
}

std::vector<std::size_t> default_m_grid(std::size_t n, std::size_t count) {
  if (n < 2) throw std::invalid_argument("calibration needs n >= 2");
  std::vector<std::size_t> grid;
  const std::size_t top = n - 1;
  if (count == 0) return grid;
  if (top <= count) {
    for (std::size_t m = 1; m <= top; ++m) grid.push_back(m);
    return grid;
  }
  const double ratio =
      count > 1 ? std::pow(static_cast<double>(top), 1.0 / static_cast<double>(count - 1)) : 1.0;
  for (std::size_t i = 0; i < count; ++i) {
    auto m = static_cast<std::size_t>(std::llround(std::pow(ratio, static_cast<double>(i))));
    if (!grid.empty()) m = std::max(m, grid.back() + 1);
    grid.push_back(std::min(m, top));
  }
  // Nudging up can collide with the top near the end; walk back down.
  for (std::size_t i = grid.size() - 1; i-- > 0;)
    grid[i] = std::min(grid[i], grid[i + 1] - 1);
  return grid;
}

std::optional<BetaMixture> fit_beta_mixture(std::span<const double> x,
                                            std::span<const double> y,
                                            std::span<const double> std_errors,
                                            std::string* status) {
  if (x.size() != y.size() || x.size() != std_errors.size())
    throw std::invalid_argument("fit_beta_mixture: length mismatch");
  if (x.size() < 3) {
    if (status) *status = "too few points for the beta mixture";
    return std::nullopt;
  }
  MixtureResiduals base;
  base.x = Eigen::Map<const Eigen::ArrayXd>(x.data(), static_cast<Eigen::Index>(x.size()));
  base.y = Eigen::Map<const Eigen::ArrayXd>(y.data(), static_cast<Eigen::Index>(y.size()));
  base.sigma = Eigen::Map<const Eigen::ArrayXd>(std_errors.data(),
                                                static_cast<Eigen::Index>(std_errors.size()))
                   .max(kMinStdError);

  std::optional<BetaMixture> best;
  double best_norm = std::numeric_limits<double>::infinity();
  std::string best_status = "Levenberg-Marquardt failed from every start";
  std::vector<std::pair<std::string, Eigen::VectorXd>> starts{
      {"greedy", greedy_guess(base.x, base.y, base.sigma)}};
  for (double concentration : {1.0, 4.0, 16.0})
    starts.emplace_back("concentration " + std::to_string(static_cast<int>(concentration)),
                        initial_guess(concentration));
  for (const auto& [start_name, start] : starts) {
    // Shapes first with the weights projected out, then everything together.
    MixtureResiduals projected = base;
    projected.anchor = start;
    Eigen::VectorXd shape_theta = start;
    minimize(projected, shape_theta, 3000);

    FullResiduals full;
    full.x = base.x;
    full.y = base.y;
    full.sigma = base.sigma;
    full.anchor = full_parameters(projected.mixture(shape_theta), shape_theta);
    Eigen::VectorXd theta = full.anchor;
    const auto info = minimize(full, theta, 20000);
    if (!converged(info)) continue;
    Eigen::VectorXd r;
    full(theta, r);
    const double norm = r.head(base.x.size()).norm();
    if (!std::isfinite(norm)) continue;
    if (norm < best_norm) {
      best_norm = norm;
      best = full.mixture(theta);
      std::ostringstream s;
      s << "converged (" << start_name << " start, LM status " << static_cast<int>(info)
        << ", chi " << norm << ")";
      best_status = s.str();
    }
  }
  if (status) *status = best_status;
  return best;
}

double CalibrationCurve::interpolate(double m_over_n) const {
  std::vector<double> xs, ys;
  for (const auto& p : points) {
    xs.push_back(p.m_over_n);
    ys.push_back(p.xi_hat_mean);
  }
  return monotone_interpolant(xs, ys, m_over_n);
}

double CalibrationCurve::evaluate(double m_over_n) const {
  if (points.empty()) throw std::logic_error("empty calibration curve");
  return fit ? (*fit)(m_over_n) : interpolate(m_over_n);
}

double CalibrationCurve::min_xi_hat() const {
  double v = std::numeric_limits<double>::infinity();
  for (const auto& p : points) v = std::min(v, p.xi_hat_mean);
  return v;
}

double CalibrationCurve::max_xi_hat() const {
  double v = -std::numeric_limits<double>::infinity();
  for (const auto& p : points) v = std::max(v, p.xi_hat_mean);
  return v;
}

CalibrationCurve build_curve(std::size_t n, std::span<const std::size_t> m_grid,
                             std::size_t reps, std::uint64_t seed, std::size_t threads,
                             bool cross_validate) {
  if (m_grid.empty()) throw std::invalid_argument("m grid is empty");
  if (reps == 0) throw std::invalid_argument("reps must be >= 1");
  for (std::size_t i = 0; i < m_grid.size(); ++i) {
    if (m_grid[i] < 1 || m_grid[i] >= n)
      throw std::invalid_argument("m grid values must lie in [1, n-1]");
    if (i > 0 && m_grid[i] <= m_grid[i - 1])
      throw std::invalid_argument("m grid must be strictly increasing");
  }

  // Flatten (point, rep) so every task is independent; reduce in grid order.
  const std::size_t points = m_grid.size();
  std::vector<double> values(points * reps);
  parallel_for(points * reps, threads, [&](std::size_t task) {
    const std::size_t i = task / reps;
    const std::size_t r = task % reps;
    const Graph g = barabasi_albert(n, m_grid[i], derive_seed(derive_seed(seed, m_grid[i]), r));
    values[task] = centrality_all(g, CentralityKind::normalized_ksi).average;
  });

  CalibrationCurve curve;
  curve.n = n;
  curve.reps = reps;
  curve.seed = seed;
  for (std::size_t i = 0; i < points; ++i) {
    const auto e = estimate(std::span<const double>(values).subspan(i * reps, reps));
    curve.points.push_back({m_grid[i], static_cast<double>(m_grid[i]) / static_cast<double>(n),
                            e.mean, e.std_error, n, reps});
  }
  for (std::size_t i = 1; i < points; ++i) {
    const auto& a = curve.points[i - 1];
    const auto& b = curve.points[i];
    const double noise = 2.0 * std::hypot(a.xi_hat_stderr, b.xi_hat_stderr);
    if (b.xi_hat_mean < a.xi_hat_mean - noise) {
      std::ostringstream s;
      s << "calibration failure: mean normalized ksi decreases from " << a.xi_hat_mean
        << " (m=" << a.m << ") to " << b.xi_hat_mean << " (m=" << b.m << ")";
      throw DomainError(s.str());
    }
  }

  std::vector<double> xs, ys, ses;
  for (const auto& p : curve.points) {
    xs.push_back(p.m_over_n);
    ys.push_back(p.xi_hat_mean);
    ses.push_back(p.xi_hat_stderr);
  }
  curve.fit = fit_beta_mixture(xs, ys, ses, &curve.fit_status);
  if (curve.fit) {
    std::vector<double> errs;
    for (std::size_t i = 0; i < points; ++i) errs.push_back((*curve.fit)(xs[i]) - ys[i]);
    curve.fit_rmse = rmse(errs);
  } else {
    curve.fit_status += "; inverting the piecewise-linear interpolant";
  }

  curve.loo_fit_rmse = std::numeric_limits<double>::quiet_NaN();
  curve.loo_interpolant_rmse = std::numeric_limits<double>::quiet_NaN();
  if (cross_validate && points >= 4) {
    // Hold out each interior point in turn; refits are independent.
    const std::size_t held = points - 2;
    std::vector<double> fit_errs(held), pl_errs(held);
    std::vector<char> fitted(held, 0);
    parallel_for(held, threads, [&](std::size_t h) {
      const std::size_t hold = h + 1;
      std::vector<double> x2, y2, s2;
      for (std::size_t i = 0; i < points; ++i) {
        if (i == hold) continue;
        x2.push_back(xs[i]);
        y2.push_back(ys[i]);
        s2.push_back(ses[i]);
      }
      pl_errs[h] = monotone_interpolant(x2, y2, xs[hold]) - ys[hold];
      if (auto f = fit_beta_mixture(x2, y2, s2)) {
        fit_errs[h] = (*f)(xs[hold]) - ys[hold];
        fitted[h] = 1;
      }
    });
    curve.loo_interpolant_rmse = rmse(pl_errs);
    if (std::all_of(fitted.begin(), fitted.end(), [](char c) { return c != 0; }))
      curve.loo_fit_rmse = rmse(fit_errs);
  }
  return curve;
}

std::size_t invert(const CalibrationCurve& curve, double xi_hat_target, std::size_t n_target) {
  if (n_target < 2) throw std::invalid_argument("n_target must be >= 2");
  const double lo_y = curve.min_xi_hat();
  const double hi_y = curve.max_xi_hat();
  if (!(xi_hat_target >= lo_y && xi_hat_target <= hi_y)) {
    std::ostringstream s;
    s.precision(17);
    s << "xi_hat target " << xi_hat_target << " outside the calibrated range [" << lo_y
      << ", " << hi_y << "]";
    throw DomainError(s.str());
  }
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (curve.evaluate(mid) < xi_hat_target)
      lo = mid;
    else
      hi = mid;
  }
  const double x = 0.5 * (lo + hi);
  const auto m = static_cast<std::int64_t>(std::floor(static_cast<double>(n_target) * x + 0.5));
  return static_cast<std::size_t>(
      std::clamp<std::int64_t>(m, 1, static_cast<std::int64_t>(n_target) - 1));
}

}  // namespace ksigraph
