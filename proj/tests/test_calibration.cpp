#include <doctest.h>

#include <cmath>
#include <string>

#include "ksigraph/calibration.hpp"
#include "ksigraph/errors.hpp"
#include "ksigraph/serialize.hpp"

using namespace ksigraph;

namespace {

const CalibrationCurve& curve200() {
  static const CalibrationCurve curve = [] {
    const auto grid = default_m_grid(200);
    return build_curve(200, grid, 10, 5, 2, true);
  }();
  return curve;
}

}  // namespace

TEST_CASE("sampled normalized ksi coefficient") {
  for (std::size_t m : {1u, 4u, 30u}) {
    const auto s = sample_xi_hat(m + 1, m, 3, 9);
    CHECK(s.mean == 1.0);
    CHECK(s.std_error == 0.0);
  }
  const auto mid = sample_xi_hat(200, 100, 20, 1);
  CHECK(mid.mean > 0.0);
  CHECK(mid.mean <= 1.0);
  CHECK(sample_xi_hat(500, 5, 20, 2).mean < sample_xi_hat(500, 50, 20, 2).mean);
  CHECK_THROWS_AS(sample_xi_hat(10, 10, 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_xi_hat(10, 3, 0, 1), std::invalid_argument);
}

TEST_CASE("default m grid") {
  const auto g = default_m_grid(500);
  REQUIRE(g.size() == 15);
  CHECK(g.front() == 1);
  CHECK(g.back() == 499);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
  CHECK(default_m_grid(10) == std::vector<std::size_t>{1, 2, 3, 4, 5, 6, 7, 8, 9});
  for (std::size_t n : {17u, 30u, 64u, 1000u}) {
    const auto h = default_m_grid(n, 15);
    CHECK(h.size() == 15);
    CHECK(h.back() == n - 1);
    for (std::size_t i = 1; i < h.size(); ++i) CHECK(h[i] > h[i - 1]);
  }
}

TEST_CASE("beta mixture fit on a known mixture") {
  BetaMixture truth;
  truth.terms = {{{0.2, 0.5, 30.0}, {0.3, 2.0, 5.0}, {0.1, 1.0, 1.0}, {0.3, 6.0, 2.0}, {0.1, 40.0, 0.5}}};
  std::vector<double> x, y, se;
  for (int i = 1; i < 20; ++i) {
    x.push_back(std::pow(i / 20.0, 1.5));
    y.push_back(truth(x.back()));
    se.push_back(1e-3);
  }
  std::string status;
  const auto fit = fit_beta_mixture(x, y, se, &status);
  REQUIRE_MESSAGE(fit, status);
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs((*fit)(x[i]) - y[i]));
  CHECK(worst < 5e-3);
  double total = 0.0;
  for (const auto& t : fit->terms) {
    CHECK(t.weight >= 0.0);
    total += t.weight;
  }
  CHECK(total == doctest::Approx(1.0));

  CHECK_FALSE(fit_beta_mixture(std::vector<double>{0.5}, std::vector<double>{0.5},
                               std::vector<double>{0.1}, &status));
  CHECK(status.find("too few") != std::string::npos);
}

TEST_CASE("calibration curve") {
  const auto& curve = curve200();
  REQUIRE(curve.points.size() == 15);
  CHECK(curve.n == 200);

  SUBCASE("points are sorted and increasing") {
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
      CHECK(curve.points[i].m_over_n > curve.points[i - 1].m_over_n);
      CHECK(curve.points[i].xi_hat_mean > curve.points[i - 1].xi_hat_mean);
    }
    CHECK(curve.points.back().xi_hat_mean == 1.0);
  }
  SUBCASE("fitted function is a monotone map of [0, 1] onto itself") {
    REQUIRE_MESSAGE(curve.fit, curve.fit_status);
    const auto& f = *curve.fit;
    CHECK(f(0.0) == doctest::Approx(0.0));
    CHECK(f(1.0) == doctest::Approx(1.0));
    double previous = f(0.0);
    for (int i = 1; i <= 10000; ++i) {
      const double v = f(i / 10000.0);
      REQUIRE(v >= previous - 1e-12);
      previous = v;
    }
  }
  SUBCASE("round trip through the inverse") {
    for (const auto& p : curve.points) {
      const auto m = invert(curve, p.xi_hat_mean, curve.n);
      const double tol = std::max(1.0, 0.05 * static_cast<double>(p.m));
      CHECK_MESSAGE(std::abs(static_cast<double>(m) - static_cast<double>(p.m)) <= tol, "m=" << p.m);
    }
  }
  SUBCASE("fit beats twice the interpolant out of sample") {
    CHECK(std::isfinite(curve.loo_fit_rmse));
    CHECK(std::isfinite(curve.loo_interpolant_rmse));
    CHECK(curve.loo_fit_rmse <= 2.0 * curve.loo_interpolant_rmse);
    CHECK(curve.fit_rmse < 0.01);
  }
  SUBCASE("range endpoints") {
    CHECK(invert(curve, 1.0, 200) == 199);
    CHECK(invert(curve, 1.0, 1000) == 999);
    CHECK(invert(curve, curve.min_xi_hat(), 200) == 1);
    try {
      invert(curve, curve.min_xi_hat() / 2.0, 200);
      FAIL("expected DomainError");
    } catch (const DomainError& e) {
      const std::string what = e.what();
      CHECK(what.find("outside the calibrated range [") != std::string::npos);
    }
    CHECK_THROWS_AS(invert(curve, 1.5, 200), DomainError);
    CHECK_THROWS_AS(invert(curve, NAN, 200), DomainError);
  }
  SUBCASE("json round trip") {
    const json j = curve;
    CHECK(j["fit"]["terms"].size() == 5);
    const auto back = json::parse(j.dump()).get<CalibrationCurve>();
    REQUIRE(back.points.size() == curve.points.size());
    REQUIRE(back.fit);
    for (double x : {0.001, 0.05, 0.3, 0.77}) CHECK(back.evaluate(x) == curve.evaluate(x));
    for (const auto& p : curve.points)
      CHECK(invert(back, p.xi_hat_mean, 200) == invert(curve, p.xi_hat_mean, 200));
  }
}

TEST_CASE("calibration is deterministic and thread independent") {
  const std::vector<std::size_t> grid{1, 3, 9, 27, 59};
  const auto a = build_curve(60, grid, 4, 11, 1, false);
  const auto b = build_curve(60, grid, 4, 11, 3, false);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].xi_hat_mean == b.points[i].xi_hat_mean);
    CHECK(a.points[i].xi_hat_stderr == b.points[i].xi_hat_stderr);
  }
  CHECK(json(a).dump() == json(b).dump());
}

TEST_CASE("recovers m for an independent sample") {
  const auto grid = default_m_grid(500);
  const auto curve = build_curve(500, grid, 10, 21, 2, false);
  const auto target = sample_xi_hat(500, 25, 20, 777);
  const auto m = invert(curve, target.mean, 500);
  CHECK(std::abs(static_cast<double>(m) - 25.0) <= 1.0);
}

TEST_CASE("single-point and degenerate grids") {
  const std::vector<std::size_t> top{99};
  const auto curve = build_curve(100, top, 3, 1);
  REQUIRE(curve.points.size() == 1);
  CHECK(curve.points[0].m_over_n == doctest::Approx(0.99));
  CHECK(curve.points[0].xi_hat_mean == 1.0);
  CHECK_FALSE(curve.fit);
  CHECK(curve.evaluate(0.495) == doctest::Approx(0.5));
  CHECK(invert(curve, 1.0, 100) == 99);

  CHECK_THROWS_AS(build_curve(100, std::vector<std::size_t>{}, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_curve(100, std::vector<std::size_t>{5, 5}, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_curve(100, std::vector<std::size_t>{5, 100}, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_curve(100, std::vector<std::size_t>{0, 4}, 3, 1), std::invalid_argument);
}
