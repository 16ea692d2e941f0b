#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ksigraph {

struct XiHatSample {
  double mean = 0.0;
  double std_error = 0.0;
};

// Mean and standard error of the normalized ksi coefficient over `reps`
// BA(n, m) graphs; graph r uses derive_seed(seed, r).
XiHatSample sample_xi_hat(std::size_t n, std::size_t m, std::size_t reps,
                          std::uint64_t seed, std::size_t threads = 1);

struct BetaTerm {
  double weight = 0.0;
  double alpha = 1.0;
  double beta = 1.0;
};

/// sum_k weight_k * I_x(alpha_k, beta_k) with I the regularized incomplete beta
/// function. Weights are nonnegative and sum to 1, the range of the average
/// normalized ksi over m/n in (0, 1), so the function is a nondecreasing map
/// of [0, 1] onto [0, 1].
struct BetaMixture {
  std::array<BetaTerm, 5> terms{};

  double operator()(double x) const;
};

struct CalibrationPoint {
  std::size_t m = 0;
  double m_over_n = 0.0;
  double xi_hat_mean = 0.0;
  double xi_hat_stderr = 0.0;
  std::size_t n_used = 0;
  std::size_t reps = 0;
};

struct CalibrationCurve {
  std::size_t n = 0;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  std::vector<CalibrationPoint> points;  // increasing m_over_n

  std::optional<BetaMixture> fit;  // set only when the fit converged
  std::string fit_status;
  double fit_rmse = 0.0;           // in-sample, unweighted
  double interpolant_rmse = 0.0;   // always 0 in-sample; kept for symmetry
  // Leave-one-out prediction RMSE over interior points; NaN when not run.
  double loo_fit_rmse = 0.0;
  double loo_interpolant_rmse = 0.0;

  // The beta mixture when present, else the monotone piecewise-linear
  // interpolant through (0, 0), the sampled means and (1, 1).
  double evaluate(double m_over_n) const;
  double interpolate(double m_over_n) const;
  double min_xi_hat() const;
  double max_xi_hat() const;
};

// `count` log-spaced m values over [1, n-1], rounded and nudged upward until
// strictly increasing; all of 1..n-1 when there is no room for `count`.
std::vector<std::size_t> default_m_grid(std::size_t n, std::size_t count = 15);

/// Samples every grid point (point m seeded with derive_seed(seed, m)) and
/// fits the beta mixture by weighted Levenberg-Marquardt. Throws DomainError
/// when a sampled mean drops below its predecessor by more than twice the
/// combined standard error. With `cross_validate`, also computes the
/// leave-one-out RMSE of the fit and of the interpolant.
CalibrationCurve build_curve(std::size_t n, std::span<const std::size_t> m_grid,
                             std::size_t reps, std::uint64_t seed,
                             std::size_t threads = 1, bool cross_validate = true);

// Fits the mixture to (x, y) with per-point standard errors; nullopt when the
// solver fails. `status` receives a short description either way.
std::optional<BetaMixture> fit_beta_mixture(std::span<const double> x,
                                            std::span<const double> y,
                                            std::span<const double> std_errors,
                                            std::string* status = nullptr);

/// m = round(n_target * x) (ties up), clamped to [1, n_target - 1], where x
/// solves evaluate(x) = target by bisection to 1e-10. Targets outside
/// [min_xi_hat(), max_xi_hat()] throw DomainError naming the interval.
std::size_t invert(const CalibrationCurve& curve, double xi_hat_target,
                   std::size_t n_target);

}  // namespace ksigraph
