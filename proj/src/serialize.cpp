#include "ksigraph/serialize.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace ksigraph {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void to_json(json& j, const GeneratorSpec& spec) {
  json params;
  switch (spec.model) {
    case Model::er:
      params = {{"n", spec.n}, {"p", spec.p}};
      break;
    case Model::ws:
      params = {{"n", spec.n}, {"k", spec.k}, {"p", spec.p}};
      break;
    case Model::ba:
      params = {{"n", spec.n}, {"m", spec.m}};
      break;
    case Model::bhl:
      params = {{"n0", spec.n0}, {"m", spec.m}, {"n", spec.n}};
      break;
    default:
      params = {{"n", spec.n}};
  }
  j = {{"model", std::string(to_string(spec.model))}, {"params", params}, {"seed", spec.seed}};
}

void from_json(const json& j, GeneratorSpec& spec) {
  const auto name = j.at("model").get<std::string>();
  const auto model = parse_model(name);
  if (!model) throw std::invalid_argument("unknown generator model '" + name + "'");
  spec = GeneratorSpec{};
  spec.model = *model;
  const json& p = j.contains("params") ? j.at("params") : json::object();
  spec.n = p.value("n", std::size_t{0});
  spec.k = p.value("k", std::size_t{0});
  spec.m = p.value("m", std::size_t{0});
  spec.n0 = p.value("n0", std::size_t{0});
  spec.p = p.value("p", 0.0);
  spec.seed = j.value("seed", std::uint64_t{0});
}

void to_json(json& j, const ErExpectation& e) {
  j = {{"n", e.n},
       {"p", e.p},
       {"expected_boundary_edges", e.expected_boundary},
       {"expected_normalized_ksi", e.expected_normalized_ksi}};
}

void to_json(json& j, const EnsembleEstimate& e) {
  j = {{"mean", e.mean}, {"std_error", e.std_error}, {"samples", e.samples}};
}

void to_json(json& j, const WeibullFit& fit) {
  j = {{"shape", fit.shape},
       {"scale", fit.scale},
       {"log_likelihood", fit.log_likelihood},
       {"iterations", fit.iterations}};
}

void to_json(json& j, const Histogram& h) {
  j = {{"edges", h.edges}, {"counts", h.counts}};
}

void to_json(json& j, const LogLinearFit& fit) {
  j = {{"slope", fit.slope},
       {"intercept", fit.intercept},
       {"r_squared", fit.r_squared},
       {"tail_point", fit.tail_point},
       {"mean_log", fit.mean_log},
       {"first_bin", fit.first_bin},
       {"bins_used", fit.bins_used}};
}

namespace {

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

void to_json(json& j, const DistributionSummary& s) {
  json qq = json::array();
  for (const auto& p : s.qq_pairs) qq.push_back({p.theoretical, p.empirical});
  j = {{"sample_size", s.sample_size},
       {"shifted", s.shifted},
       {"skewness", optional_json(s.skewness)},
       {"verdict", s.verdict ? json(std::string(to_string(*s.verdict))) : json(nullptr)},
       {"weibull", optional_json(s.weibull)},
       {"qq_slope", optional_json(s.qq_slope)},
       {"qq_pairs", qq},
       {"histogram", s.histogram},
       {"loglinear", optional_json(s.loglinear)},
       {"tail_point", optional_json(s.tail_point)},
       {"mean_log", optional_json(s.mean_log)},
       {"notes", s.notes}};
}

namespace {

double number_or_nan(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j.at(key).get<double>();
}

}  // namespace

void to_json(json& j, const CalibrationCurve& curve) {
  json points = json::array();
  for (const auto& p : curve.points)
    points.push_back({{"m", p.m},
                      {"m_over_n", p.m_over_n},
                      {"xi_hat_mean", p.xi_hat_mean},
                      {"xi_hat_stderr", p.xi_hat_stderr},
                      {"n_used", p.n_used},
                      {"reps", p.reps}});
  json fit = {{"family", "beta_cdf_mixture"},
              {"converged", curve.fit.has_value()},
              {"status", curve.fit_status},
              {"rmse", curve.fit ? json(curve.fit_rmse) : json(nullptr)}};
  if (curve.fit) {
    json terms = json::array();
    for (const auto& t : curve.fit->terms)
      terms.push_back({{"weight", t.weight}, {"alpha", t.alpha}, {"beta", t.beta}});
    fit["terms"] = terms;
  }
  j = {{"n", curve.n},
       {"reps", curve.reps},
       {"seed", curve.seed},
       {"points", points},
       {"fit", fit},
       {"inversion", curve.fit ? "beta_cdf_mixture" : "piecewise_linear"},
       {"baseline",
        {{"loo_fit_rmse", curve.loo_fit_rmse},
         {"loo_interpolant_rmse", curve.loo_interpolant_rmse}}}};
}

void from_json(const json& j, CalibrationCurve& curve) {
  curve = CalibrationCurve{};
  curve.n = j.at("n").get<std::size_t>();
  curve.reps = j.value("reps", std::size_t{0});
  curve.seed = j.value("seed", std::uint64_t{0});
  for (const auto& p : j.at("points")) {
    CalibrationPoint pt;
    pt.m = p.at("m").get<std::size_t>();
    pt.m_over_n = p.at("m_over_n").get<double>();
    pt.xi_hat_mean = p.at("xi_hat_mean").get<double>();
    pt.xi_hat_stderr = p.value("xi_hat_stderr", 0.0);
    pt.n_used = p.value("n_used", curve.n);
    pt.reps = p.value("reps", curve.reps);
    curve.points.push_back(pt);
  }
  if (curve.points.empty()) throw std::invalid_argument("calibration curve has no points");
  for (std::size_t i = 1; i < curve.points.size(); ++i)
    if (!(curve.points[i].m_over_n > curve.points[i - 1].m_over_n))
      throw std::invalid_argument("calibration points must be sorted by m_over_n");
  if (j.contains("fit")) {
    const json& fit = j.at("fit");
    curve.fit_status = fit.value("status", std::string{});
    if (fit.value("converged", false) && fit.contains("terms")) {
      const json& terms = fit.at("terms");
      if (terms.size() != 5) throw std::invalid_argument("beta mixture needs 5 terms");
      BetaMixture f;
      for (std::size_t k = 0; k < 5; ++k) {
        f.terms[k].weight = terms[k].at("weight").get<double>();
        f.terms[k].alpha = terms[k].at("alpha").get<double>();
        f.terms[k].beta = terms[k].at("beta").get<double>();
        if (f.terms[k].weight < 0.0 || f.terms[k].alpha <= 0.0 || f.terms[k].beta <= 0.0)
          throw std::invalid_argument("beta mixture term out of domain");
      }
      curve.fit = f;
      curve.fit_rmse = number_or_nan(fit, "rmse");
    }
  }
  if (j.contains("baseline")) {
    curve.loo_fit_rmse = number_or_nan(j.at("baseline"), "loo_fit_rmse");
    curve.loo_interpolant_rmse = number_or_nan(j.at("baseline"), "loo_interpolant_rmse");
  }
}

json centrality_summary(const Graph& g, const CentralityVector& ksi,
                        const CentralityVector& normalized) {
  return {{"n", g.node_count()},
          {"m_edges", g.edge_count()},
          {"avg_ksi", ksi.average},
          {"avg_normalized_ksi", normalized.average}};
}

json bounds_report_json(const BoundsReport& r, const Graph& g) {
  json nodes = json::array();
  for (const auto& rec : r.nodes)
    nodes.push_back({{"node", g.label(rec.node)},
                     {"degree", rec.degree},
                     {"ksi", rec.ksi},
                     {"normalized_ksi", rec.normalized_ksi},
                     {"cheeger_bound_applicable", rec.cheeger_bound_applicable},
                     {"lambda2_bound", rec.lambda2_bound},
                     {"cheeger_bound", rec.cheeger_bound},
                     {"normalized_cheeger_bound", rec.normalized_cheeger_bound},
                     {"bounds_satisfied", rec.bounds_satisfied}});
  return {{"n", r.n},
          {"connected", r.connected},
          {"lambda2", r.lambda2},
          {"cheeger", r.cheeger.value()},
          {"cheeger_fraction", {r.cheeger.cut, r.cheeger.size}},
          {"avg_normalized_ksi", r.avg_normalized_ksi},
          {"average_bound", r.average_bound},
          {"violations", r.violations},
          {"nodes", nodes}};
}

void write_centrality_csv(std::ostream& out, const Graph& g,
                          const std::vector<std::int64_t>& boundary,
                          const CentralityVector& ksi, const CentralityVector& normalized) {
  out << "node_label,degree,boundary_edges,ksi,normalized_ksi\n";
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    const auto id = static_cast<NodeId>(i);
    out << g.label(id) << ',' << g.degree(id) << ',' << boundary[i] << ','
        << format_double(ksi.values[i]) << ',' << format_double(normalized.values[i]) << '\n';
  }
}

void write_histogram_csv(std::ostream& out, const Histogram& h) {
  out << "bin_left,bin_right,center,count\n";
  for (std::size_t b = 0; b < h.bins(); ++b)
    out << format_double(h.edges[b]) << ',' << format_double(h.edges[b + 1]) << ','
        << format_double(h.center(b)) << ',' << h.counts[b] << '\n';
}

void write_qq_csv(std::ostream& out, const std::vector<QqPair>& pairs) {
  out << "theoretical,empirical\n";
  for (const auto& p : pairs)
    out << format_double(p.theoretical) << ',' << format_double(p.empirical) << '\n';
}

void write_loglinear_csv(std::ostream& out, const LogLinearFit& fit) {
  out << "center,count,ln_count,fitted,in_window\n";
  const auto& h = fit.histogram;
  for (std::size_t b = 0; b < h.bins(); ++b) {
    const double c = h.center(b);
    const std::size_t count = h.counts[b];
    const bool in_window = b >= fit.first_bin && count > 0 && c <= fit.tail_point;
    out << format_double(c) << ',' << count << ','
        << (count ? format_double(std::log(static_cast<double>(count))) : std::string{}) << ','
        << format_double(fit.intercept + fit.slope * c) << ',' << (in_window ? 1 : 0) << '\n';
  }
}

}  // namespace ksigraph
