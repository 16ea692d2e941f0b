#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ksigraph/calibration.hpp"
#include "ksigraph/centrality.hpp"
#include "ksigraph/er_theory.hpp"
#include "ksigraph/generators.hpp"
#include "ksigraph/spectral.hpp"
#include "ksigraph/stats.hpp"

namespace ksigraph {

using json = nlohmann::json;

// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

// {"model": "ba", "params": {"n": 100, "m": 3}, "seed": 1}; only the
// parameters the model uses appear under "params".
void to_json(json& j, const GeneratorSpec& spec);
void from_json(const json& j, GeneratorSpec& spec);

void to_json(json& j, const ErExpectation& e);
void to_json(json& j, const EnsembleEstimate& e);
void to_json(json& j, const WeibullFit& fit);
void to_json(json& j, const Histogram& h);
void to_json(json& j, const LogLinearFit& fit);
void to_json(json& j, const DistributionSummary& s);

void to_json(json& j, const CalibrationCurve& curve);
void from_json(const json& j, CalibrationCurve& curve);

// {n, m_edges, avg_ksi, avg_normalized_ksi}
json centrality_summary(const Graph& g, const CentralityVector& ksi,
                        const CentralityVector& normalized);

json bounds_report_json(const BoundsReport& report, const Graph& g);

// node_label,degree,boundary_edges,ksi,normalized_ksi
void write_centrality_csv(std::ostream& out, const Graph& g,
                          const std::vector<std::int64_t>& boundary,
                          const CentralityVector& ksi,
                          const CentralityVector& normalized);
// bin_left,bin_right,center,count
void write_histogram_csv(std::ostream& out, const Histogram& h);
// theoretical,empirical
void write_qq_csv(std::ostream& out, const std::vector<QqPair>& pairs);
// center,count,ln_count,fitted,in_window
void write_loglinear_csv(std::ostream& out, const LogLinearFit& fit);

}  // namespace ksigraph
