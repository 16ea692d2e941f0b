#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "ksigraph/centrality.hpp"
#include "ksigraph/errors.hpp"
#include "ksigraph/generators.hpp"
#include "ksigraph/random.hpp"
#include "ksigraph/serialize.hpp"
#include "ksigraph/stats.hpp"

using namespace ksigraph;

namespace {

std::vector<double> weibull_draws(std::size_t count, double shape, double scale, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> out(count);
  for (auto& x : out) x = scale * std::pow(-std::log1p(-rng.uniform()), 1.0 / shape);
  return out;
}

}  // namespace

TEST_CASE("skewness") {
  CHECK(skewness(std::vector<double>{1, 2, 3}) == doctest::Approx(0.0));
  // m2 = 15.1875, m3 = 68.34375 -> 2 / sqrt(3)
  CHECK(skewness(std::vector<double>{1, 1, 1, 10}) == doctest::Approx(2.0 / std::sqrt(3.0)));
  CHECK(skewness(std::vector<double>{1, 1, 1, 10}) == doctest::Approx(1.1547).epsilon(1e-4));
  CHECK(skewness(std::vector<double>{-1, -1, -1, -10}) == doctest::Approx(-2.0 / std::sqrt(3.0)));
  CHECK_THROWS_AS(skewness(std::vector<double>{4}), std::invalid_argument);
  CHECK_THROWS_AS(skewness(std::vector<double>{2, 2, 2}), DomainError);
}

TEST_CASE("skewness under affine maps") {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x(2 + rng.below(60));
    for (auto& v : x) v = std::pow(rng.uniform(), 1.0 + 3.0 * rng.uniform()) * 10.0;
    if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; })) continue;
    const double a = (rng.uniform() - 0.5) * 20.0;
    const double b = (rng.uniform() - 0.5) * 100.0;
    if (std::abs(a) < 1e-3) continue;
    std::vector<double> y(x.size());
    std::transform(x.begin(), x.end(), y.begin(), [&](double v) { return a * v + b; });
    const double gx = skewness(x);
    CHECK(skewness(y) == doctest::Approx(std::copysign(1.0, a) * gx).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("weibull maximum likelihood") {
  SUBCASE("recovers synthetic parameters") {
    const auto x = weibull_draws(10000, 1.5, 2.0, 2718);
    const auto fit = weibull_mle(x);
    CHECK(std::abs(fit.shape / 1.5 - 1.0) < 0.05);
    CHECK(std::abs(fit.scale / 2.0 - 1.0) < 0.05);
    CHECK(fit.log_likelihood == doctest::Approx(weibull_log_likelihood(x, fit.shape, fit.scale)));
    for (double ds : {0.99, 1.01})
      for (double dl : {0.99, 1.0, 1.01}) {
        CHECK(fit.log_likelihood >= weibull_log_likelihood(x, fit.shape * ds, fit.scale * dl));
        CHECK(fit.log_likelihood >= weibull_log_likelihood(x, fit.shape * dl, fit.scale * ds));
      }
  }
  SUBCASE("exponential sample has shape near 1") {
    Rng rng(5);
    std::vector<double> x(5000);
    for (auto& v : x) v = -std::log1p(-rng.uniform()) * 3.0;
    CHECK(std::abs(weibull_mle(x).shape - 1.0) < 0.05);
  }
  SUBCASE("large values do not overflow") {
    auto x = weibull_draws(2000, 7.0, 1e6, 8);
    const auto fit = weibull_mle(x);
    CHECK(std::abs(fit.shape / 7.0 - 1.0) < 0.1);
    CHECK(std::abs(fit.scale / 1e6 - 1.0) < 0.05);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(weibull_mle(std::vector<double>(20, 3.0)), DomainError);
    auto x = weibull_draws(20, 1.5, 2.0, 1);
    x[3] = 0.0;
    CHECK_THROWS_AS(weibull_mle(x), std::invalid_argument);
    CHECK_THROWS_AS(weibull_mle(weibull_draws(9, 1.5, 2.0, 1)), std::invalid_argument);
  }
}

TEST_CASE("quantile-quantile pairs") {
  CHECK(weibull_quantile(0.5, 1.5, 2.0) == doctest::Approx(2.0 * std::pow(std::log(2.0), 1.0 / 1.5)));

  std::vector<double> grid(200);
  for (std::size_t i = 0; i < grid.size(); ++i)
    grid[i] = weibull_quantile((static_cast<double>(i) + 0.5) / 200.0, 2.5, 3.0);
  std::reverse(grid.begin(), grid.end());
  const auto pairs = qq_pairs(grid, 2.5, 3.0);
  REQUIRE(pairs.size() == 200);
  for (const auto& p : pairs) CHECK(std::abs(p.theoretical - p.empirical) <= 1e-12);
  CHECK(qq_slope(pairs) == doctest::Approx(1.0));

  const auto x = weibull_draws(10000, 1.5, 2.0, 99);
  const auto fit = weibull_mle(x);
  CHECK(std::abs(qq_slope(qq_pairs(x, fit.shape, fit.scale)) - 1.0) < 0.05);
}

TEST_CASE("histogram") {
  const std::vector<double> x{0.0, 0.1, 0.5, 0.99, 1.0, 1.0};
  const auto h = histogram(x, 4);
  CHECK(h.edges.size() == 5);
  CHECK(h.counts == std::vector<std::size_t>{2, 0, 1, 3});
  CHECK(h.center(0) == doctest::Approx(0.125));
  CHECK_THROWS_AS(histogram(std::vector<double>{2, 2}, 3), DomainError);
  CHECK(sturges_bins(1) == 1);
  CHECK(sturges_bins(1000) == 11);
  CHECK(sturges_bins(1024) == 11);

  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(2 + rng.below(500));
    for (auto& e : v) e = rng.uniform() * 7.0 - 2.0;
    const auto hh = histogram(v, 1 + rng.below(30));
    std::size_t total = 0;
    for (auto c : hh.counts) total += c;
    CHECK(total == v.size());
    CHECK(std::adjacent_find(hh.edges.begin(), hh.edges.end(), std::greater_equal<>{}) == hh.edges.end());
  }
}

TEST_CASE("log-linear fit on exactly geometric counts") {
  // Ten unit bins over [10, 20]; bin k holds 4^(9-k) 3^k values, so
  // ln count falls by ln(4/3) per unit.
  std::vector<double> x;
  for (int k = 0; k < 10; ++k) {
    double count = 1.0;
    for (int i = 0; i < 9 - k; ++i) count *= 4.0;
    for (int i = 0; i < k; ++i) count *= 3.0;
    const double at = k == 0 ? 10.0 : k == 9 ? 20.0 : 10.5 + k;
    x.insert(x.end(), static_cast<std::size_t>(count), at);
  }
  const auto fit = log_histogram_fit(x, 10);
  double mean_log = 0.0;
  for (double v : x) mean_log += std::log(v);
  mean_log /= static_cast<double>(x.size());
  std::size_t below = 0;
  for (int k = 0; k < 10; ++k) below += 10.5 + k <= std::exp(mean_log);

  CHECK(fit.tail_point == doctest::Approx(std::exp(mean_log)));
  CHECK(fit.mean_log == doctest::Approx(mean_log));
  CHECK(fit.bins_used == below);
  CHECK(fit.bins_used >= 3);
  CHECK(fit.slope == doctest::Approx(std::log(0.75)).epsilon(1e-10));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("log-linear fit preconditions") {
  const auto x = weibull_draws(100, 1.5, 2.0, 4);
  CHECK_THROWS_AS(log_histogram_fit(x, 4), std::invalid_argument);
  CHECK_THROWS_AS(log_histogram_fit(std::vector<double>(x.begin(), x.begin() + 6), 7), std::invalid_argument);
  auto neg = x;
  neg[0] = -1.0;
  CHECK_THROWS_AS(log_histogram_fit(neg, 5), std::invalid_argument);
  // Almost everything at 1, one far out: only the first bin lies below the tail point.
  std::vector<double> spike(50, 1.0);
  spike.push_back(100.0);
  CHECK_THROWS_AS(log_histogram_fit(spike, 10), DomainError);
}

TEST_CASE("log-linear fit on a right-skewed ksi distribution") {
  const Graph g = barabasi_albert(2000, 2, 2000);
  const auto ksi = centrality_all(g, CentralityKind::ksi);
  // Unit-width bins: a degree-1 node's ksi is an integer.
  const auto [lo, hi] = std::minmax_element(ksi.values.begin(), ksi.values.end());
  const auto fit = log_histogram_fit(ksi.values, static_cast<std::size_t>(std::ceil(*hi - *lo)));
  CHECK(fit.bins_used >= 3);
  CHECK(fit.r_squared >= 0.8);
  CHECK(fit.r_squared <= 1.0);
  CHECK(fit.slope < 0.0);
}

TEST_CASE("verdict threshold") {
  CHECK(classify(2.3) == Verdict::real_like);
  CHECK(classify(0.4) == Verdict::artificial_like);
  CHECK(classify(1.0) == Verdict::artificial_like);
  CHECK(classify(std::nextafter(1.0, 2.0)) == Verdict::real_like);
  CHECK(to_string(Verdict::real_like) == "real-like");
  CHECK(to_string(Verdict::artificial_like) == "artificial-like");
}

TEST_CASE("summarize") {
  SUBCASE("tail point of a geometric sequence") {
    const auto s = summarize(std::vector<double>{1.0, std::numbers::e, std::exp(2.0)});
    REQUIRE(s.tail_point);
    CHECK(*s.tail_point == doctest::Approx(std::numbers::e));
    CHECK(*s.mean_log == doctest::Approx(1.0));
    CHECK_FALSE(s.weibull);
    CHECK_FALSE(s.notes.empty());
  }
  SUBCASE("full summary") {
    const auto x = weibull_draws(3000, 1.2, 1.0, 6);
    CHECK(summarize(x).histogram.bins() == 13);
    const auto s = summarize(x, {60, false});
    CHECK(s.sample_size == 3000);
    CHECK(s.histogram.bins() == 60);
    REQUIRE(s.skewness);
    REQUIRE(s.weibull);
    REQUIRE(s.loglinear);
    REQUIRE(s.verdict);
    CHECK(*s.verdict == classify(*s.skewness));
    CHECK(classify(s) == s.verdict);
    CHECK(s.qq_pairs.size() == 3000);
    CHECK(s.notes.empty());
    CHECK(s.weibull->shape > 0.0);
    CHECK(s.loglinear->r_squared >= 0.0);
    CHECK(s.loglinear->r_squared <= 1.0);
  }
  SUBCASE("shift moves the sample") {
    std::vector<double> x = weibull_draws(500, 1.2, 1.0, 6);
    for (auto& v : x) v += 1.0;
    const auto s = summarize(x, {0, true});
    CHECK(s.shifted);
    REQUIRE(s.weibull);
    CHECK(std::abs(s.weibull->shape / 1.2 - 1.0) < 0.15);
  }
  SUBCASE("star ksi: verdict present despite skipped steps") {
    const auto ksi = centrality_all(fixture(Model::star, 100), CentralityKind::ksi);
    const auto s = summarize(ksi.values);
    CHECK(s.verdict == Verdict::artificial_like);
    CHECK_FALSE(s.loglinear);
    const json j = s;
    CHECK(j["verdict"] == "artificial-like");
    CHECK(j.contains("notes"));
  }
  SUBCASE("constant sample") {
    const auto s = summarize(std::vector<double>(30, 1.0));
    CHECK_FALSE(s.skewness);
    CHECK_FALSE(s.verdict);
    CHECK(s.notes.size() >= 2);
  }
}
