#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ksigraph/calibration.hpp"
#include "ksigraph/centrality.hpp"
#include "ksigraph/er_theory.hpp"
#include "ksigraph/errors.hpp"
#include "ksigraph/generators.hpp"
#include "ksigraph/graph.hpp"
#include "ksigraph/parallel.hpp"
#include "ksigraph/random.hpp"
#include "ksigraph/serialize.hpp"
#include "ksigraph/spectral.hpp"
#include "ksigraph/stats.hpp"

namespace ksigraph::cli {

namespace fs = std::filesystem;

namespace {

std::string fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct GlobalOptions {
  std::uint64_t seed = 1;
  std::size_t threads = 0;
  std::string output_dir = "ksigraph-out";
  bool output_dir_given = false;
};

/// Collects a command's output files and writes manifest.json next to them.
/// Every JSON output carries {"manifest": "manifest.json"}; the manifest lists
/// every output with its FNV-1a digest.
class RunRecord {
 public:
  RunRecord(std::string command, std::vector<std::string> argv, const GlobalOptions& g)
      : command_(std::move(command)), argv_(std::move(argv)), seed_(g.seed), dir_(g.output_dir) {}

  void add_input(const fs::path& path, std::string_view content) {
    inputs_.push_back({{"path", path.string()}, {"fnv1a64", fnv1a64(content)}});
  }
  void set_generator(const GeneratorSpec& spec) { generator_ = spec; }

  void write(const std::string& name, const std::string& content) {
    fs::create_directories(dir_);
    std::ofstream out(dir_ / name, std::ios::binary);
    if (!out) throw InputError((dir_ / name).string() + ": cannot write");
    out << content;
    outputs_.push_back({{"file", name}, {"fnv1a64", fnv1a64(content)}});
  }
  void write_json(const std::string& name, json j) {
    j["manifest"] = "manifest.json";
    write(name, j.dump(2) + "\n");
  }

  void finish() {
    json manifest = {{"tool", "ksigraph"},
                     {"version", KSIGRAPH_VERSION},
                     {"command", command_},
                     {"argv", argv_},
                     {"seed", seed_},
                     {"rng", std::string(Rng::algorithm)},
                     {"inputs", inputs_},
                     {"generator", generator_ ? json(*generator_) : json(nullptr)},
                     {"outputs", outputs_},
                     {"timestamp", utc_timestamp()}};
    fs::create_directories(dir_);
    std::ofstream out(dir_ / "manifest.json", std::ios::binary);
    out << manifest.dump(2) << "\n";
  }

 private:
  std::string command_;
  std::vector<std::string> argv_;
  std::uint64_t seed_;
  fs::path dir_;
  json inputs_ = json::array();
  json outputs_ = json::array();
  std::optional<GeneratorSpec> generator_;
};

// Graph source shared by analyze and verify: an edge list or a generator.
struct GraphSource {
  std::string input;
  std::string spec_file;
  std::string model;
  std::size_t n = 0, k = 0, m = 0, n0 = 0;
  double p = 0.0;
  bool lcc = false;
  bool keep_self_loops = false;

  void add_to(CLI::App* cmd, bool with_ingest) {
    auto* in = cmd->add_option("--input,-i", input, "Edge list file");
    add_generator_options(cmd);
    in->excludes(cmd->get_option("--model"));
    in->excludes(cmd->get_option("--spec"));
    cmd->add_flag("--lcc", lcc, "Restrict to the largest connected component");
    if (with_ingest)
      cmd->add_flag("--keep-self-loops", keep_self_loops,
                    "Treat self-loops as input errors instead of dropping them");
  }

  void add_generator_options(CLI::App* cmd) {
    cmd->add_option("--spec", spec_file, "Generator spec JSON {model, params, seed}");
    cmd->add_option("--model", model, "er | ws | ba | bhl | star | complete | path | cycle");
    cmd->add_option("--n", n, "Node count (star: number of leaves)");
    cmd->add_option("--p", p, "Edge / rewiring probability (er, ws)");
    cmd->add_option("--k", k, "Lattice degree (ws)");
    cmd->add_option("--m", m, "Edges per new node (ba, bhl)");
    cmd->add_option("--n0", n0, "Initial core size (bhl)");
  }

  GeneratorSpec spec(const GlobalOptions& g) const {
    GeneratorSpec s;
    if (!spec_file.empty()) {
      try {
        s = json::parse(read_file(spec_file)).get<GeneratorSpec>();
      } catch (const json::exception& e) {
        throw InputError(spec_file + ": " + e.what());
      }
      return s;
    }
    const auto parsed = parse_model(model);
    if (!parsed) throw InputError("unknown or missing --model '" + model + "'");
    s.model = *parsed;
    s.n = n;
    s.k = k;
    s.m = m;
    s.n0 = n0;
    s.p = p;
    s.seed = g.seed;
    return s;
  }

  Graph load(const GlobalOptions& g, RunRecord& record) const {
    if (!input.empty()) {
      const std::string content = read_file(input);
      record.add_input(input, content);
      IngestOptions opts;
      opts.drop_self_loops = !keep_self_loops;
      opts.take_lcc = lcc;
      std::istringstream in(content);
      try {
        return load_edge_list(in, opts);
      } catch (const InputError& e) {
        throw InputError(input + ": " + e.what());
      }
    }
    if (model.empty() && spec_file.empty())
      throw InputError("need --input, --model or --spec");
    const GeneratorSpec s = spec(g);
    record.set_generator(s);
    Graph graph = generate(s);
    return lcc ? largest_connected_component(graph) : graph;
  }
};

std::string csv(auto writer) {
  std::ostringstream s;
  writer(s);
  return s.str();
}

void write_distribution(RunRecord& record, const std::string& prefix,
                        const DistributionSummary& summary) {
  record.write_json(prefix + "distribution.json", summary);
  if (summary.histogram.bins())
    record.write(prefix + "histogram.csv",
                 csv([&](std::ostream& o) { write_histogram_csv(o, summary.histogram); }));
  if (!summary.qq_pairs.empty())
    record.write(prefix + "qq.csv", csv([&](std::ostream& o) { write_qq_csv(o, summary.qq_pairs); }));
  if (summary.loglinear)
    record.write(prefix + "loglinear.csv",
                 csv([&](std::ostream& o) { write_loglinear_csv(o, *summary.loglinear); }));
}

json brief(const DistributionSummary& s) {
  return {{"skewness", s.skewness ? json(*s.skewness) : json(nullptr)},
          {"verdict", s.verdict ? json(std::string(to_string(*s.verdict))) : json(nullptr)}};
}

std::vector<double> read_values(const std::string& path) {
  const std::string content = read_file(path);
  std::istringstream in(content);
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& c : line)
      if (c == ',' || c == ';' || c == '\r') c = ' ';
    std::istringstream tokens(line);
    std::string tok;
    while (tokens >> tok) {
      try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        values.push_back(v);
      } catch (const std::exception&) {
        throw InputError(path + ": line " + std::to_string(line_no) + ": not a number '" + tok + "'");
      }
    }
  }
  if (values.empty()) throw InputError(path + ": no values");
  return values;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv, argv + argc);
  CLI::App app{"ksi-centrality network analysis", "ksigraph"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--seed", global.seed, "Base random seed")->capture_default_str();
  app.add_option("--threads", global.threads,
                 "Worker threads (0: KSIGRAPH_THREADS, else all cores); never changes results");
  auto* out_opt = app.add_option("--output-dir,-o", global.output_dir, "Directory for output files")
                      ->capture_default_str();

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Centralities, distribution fits and verdict for a graph");
  GraphSource analyze_src;
  analyze_src.add_to(analyze, true);
  std::size_t analyze_bins = 0;
  bool analyze_shift = false, analyze_normalized = false;
  analyze->add_option("--bins", analyze_bins, "Histogram bins (default: max(5, Sturges))");
  analyze->add_flag("--shift", analyze_shift, "Fit ksi - 1 instead of ksi");
  analyze->add_flag("--normalized", analyze_normalized, "Also summarize the normalized ksi distribution");

  // generate
  auto* gen = app.add_subcommand("generate", "Write a generated graph as an edge list");
  GraphSource gen_src;
  gen_src.add_generator_options(gen);
  std::string gen_name = "edges.txt";
  gen->add_option("--name", gen_name, "Edge list file name inside the output directory")
      ->capture_default_str();

  // theory
  auto* theory = app.add_subcommand("theory", "Erdos-Renyi closed forms, optionally against simulation");
  std::size_t theory_n = 0, theory_reps = 200;
  std::optional<double> theory_p, theory_lambda;
  bool theory_simulate = false;
  theory->add_option("--n", theory_n, "Node count")->required();
  theory->add_option("--p", theory_p, "Edge probability");
  theory->add_option("--lambda", theory_lambda, "Sparse regime: p = lambda / n");
  theory->add_flag("--simulate", theory_simulate, "Compare with a seeded Monte-Carlo ensemble");
  theory->add_option("--reps", theory_reps, "Ensemble size")->capture_default_str();

  // verify
  auto* verify = app.add_subcommand("verify", "Check ksi values against Cheeger and lambda2 bounds");
  GraphSource verify_src;
  verify_src.add_to(verify, true);

  // calibrate
  auto* calibrate = app.add_subcommand("calibrate", "Build or invert the BA m/n calibration curve");
  std::size_t cal_n = 0, cal_points = 15, cal_reps = 20, cal_target_n = 0;
  std::vector<std::size_t> cal_grid;
  std::string cal_curve;
  bool cal_invert = false, cal_no_cv = false;
  std::optional<double> cal_xi;
  calibrate->add_option("--n", cal_n, "BA graph size for the curve");
  calibrate->add_option("--m-grid", cal_grid, "Comma-separated m values")->delimiter(',');
  calibrate->add_option("--grid-points", cal_points, "Log-spaced m values when --m-grid is absent")
      ->capture_default_str();
  calibrate->add_option("--reps", cal_reps, "Graphs per grid point")->capture_default_str();
  calibrate->add_option("--curve", cal_curve, "Curve JSON (written in build mode, read with --invert)");
  calibrate->add_flag("--no-cv", cal_no_cv, "Skip the leave-one-out baseline comparison");
  calibrate->add_flag("--invert", cal_invert, "Recover m from an average normalized ksi");
  calibrate->add_option("--xi-hat", cal_xi, "Average normalized ksi of the target network");
  calibrate->add_option("--n-target", cal_target_n, "Node count of the target network");

  // fit
  auto* fit = app.add_subcommand("fit", "Distribution summary of a sample of values");
  std::string fit_input;
  std::size_t fit_bins = 0;
  bool fit_shift = false;
  fit->add_option("--input,-i", fit_input, "Values, whitespace or comma separated")->required();
  fit->add_option("--bins", fit_bins, "Histogram bins (default: max(5, Sturges))");
  fit->add_flag("--shift", fit_shift, "Fit x - 1 instead of x");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }
  global.output_dir_given = out_opt->count() > 0;
  const std::size_t threads = resolve_threads(global.threads);

  try {
    if (*analyze) {
      RunRecord record("analyze", args, global);
      const Graph g = analyze_src.load(global, record);
      const auto boundary = boundary_edge_counts(g, threads);
      const auto xi = centrality_from_boundary(g, boundary, CentralityKind::ksi);
      const auto xi_hat = centrality_from_boundary(g, boundary, CentralityKind::normalized_ksi);

      record.write("centrality.csv",
                   csv([&](std::ostream& o) { write_centrality_csv(o, g, boundary, xi, xi_hat); }));
      json summary = centrality_summary(g, xi, xi_hat);
      const auto dist = summarize(xi.values, {analyze_bins, analyze_shift});
      summary["ksi"] = brief(dist);
      summary["verdict"] = summary["ksi"]["verdict"];
      write_distribution(record, "ksi_", dist);
      if (analyze_normalized) {
        const auto ndist = summarize(xi_hat.values, {analyze_bins, false});
        summary["normalized_ksi"] = brief(ndist);
        write_distribution(record, "normalized_ksi_", ndist);
      }
      record.write_json("summary.json", summary);
      record.finish();
      out << summary.dump(2) << "\n";
      return kSuccess;
    }

    if (*gen) {
      RunRecord record("generate", args, global);
      const GeneratorSpec spec = gen_src.spec(global);
      record.set_generator(spec);
      const Graph g = generate(spec);
      record.write(gen_name, csv([&](std::ostream& o) { write_edge_list(o, g); }));
      record.finish();
      out << json{{"file", (fs::path(global.output_dir) / gen_name).string()},
                  {"n", g.node_count()},
                  {"m_edges", g.edge_count()},
                  {"spec", spec}}
                 .dump(2)
          << "\n";
      return kSuccess;
    }

    if (*theory) {
      double p;
      if (theory_p) {
        p = *theory_p;
      } else if (theory_lambda) {
        p = *theory_lambda / static_cast<double>(theory_n);
      } else {
        throw InputError("theory needs --p or --lambda");
      }
      json result = er_expectation(theory_n, p);
      if (theory_lambda) {
        result["lambda"] = *theory_lambda;
        result["sparse_asymptotic"] = sparse_asymptotic(*theory_lambda, theory_n);
      }
      if (theory_simulate) {
        auto check = [](const EnsembleEstimate& e, double expected) {
          json j = e;
          j["expected"] = expected;
          j["within_3_std_errors"] = std::abs(e.mean - expected) <= 3.0 * e.std_error;
          return j;
        };
        result["seed"] = global.seed;
        result["simulated"] = {
            {"normalized_ksi",
             check(simulate_normalized_ksi(theory_n, p, theory_reps, global.seed, threads),
                   expected_normalized_ksi(theory_n, p))},
            {"boundary_edges",
             check(simulate_boundary_edges(theory_n, p, theory_reps, global.seed, threads),
                   expected_boundary_edges(theory_n, p))}};
      }
      if (global.output_dir_given) {
        RunRecord record("theory", args, global);
        record.write_json("theory.json", result);
        record.finish();
      }
      out << result.dump(2) << "\n";
      return kSuccess;
    }

    if (*verify) {
      RunRecord record("verify", args, global);
      const Graph g = verify_src.load(global, record);
      const BoundsReport report = verify_bounds(g, threads);
      const json j = bounds_report_json(report, g);
      if (global.output_dir_given) {
        record.write_json("bounds.json", j);
        record.finish();
      }
      out << j.dump(2) << "\n";
      if (!report.ok()) {
        err << "ksigraph verify: " << report.violations << " bound violation(s)\n";
        return kBoundViolation;
      }
      return kSuccess;
    }

    if (*calibrate) {
      if (cal_invert) {
        if (cal_curve.empty() || !cal_xi || cal_target_n == 0)
          throw InputError("--invert needs --curve, --xi-hat and --n-target");
        CalibrationCurve curve;
        try {
          curve = json::parse(read_file(cal_curve)).get<CalibrationCurve>();
        } catch (const json::exception& e) {
          throw InputError(cal_curve + ": " + e.what());
        }
        const std::size_t m = invert(curve, *cal_xi, cal_target_n);
        const json result = {{"m", m},
                             {"n_target", cal_target_n},
                             {"xi_hat", *cal_xi},
                             {"inversion", curve.fit ? "beta_cdf_mixture" : "piecewise_linear"}};
        if (global.output_dir_given) {
          RunRecord record("calibrate", args, global);
          record.add_input(cal_curve, read_file(cal_curve));
          record.write_json("inversion.json", result);
          record.finish();
        }
        out << result.dump(2) << "\n";
        return kSuccess;
      }
      if (cal_n < 2) throw InputError("calibrate needs --n >= 2 (or --invert)");
      const auto grid = cal_grid.empty() ? default_m_grid(cal_n, cal_points) : cal_grid;
      const CalibrationCurve curve = build_curve(cal_n, grid, cal_reps, global.seed, threads, !cal_no_cv);
      RunRecord record("calibrate", args, global);
      json j = curve;
      if (cal_curve.empty()) {
        record.write_json("curve.json", j);
      } else {
        j["manifest"] = (fs::path(global.output_dir) / "manifest.json").string();
        std::ofstream f(cal_curve, std::ios::binary);
        if (!f) throw InputError(cal_curve + ": cannot write");
        f << j.dump(2) << "\n";
      }
      record.finish();
      out << json{{"n", curve.n},
                  {"points", curve.points.size()},
                  {"inversion", curve.fit ? "beta_cdf_mixture" : "piecewise_linear"},
                  {"fit_status", curve.fit_status},
                  {"xi_hat_range", {curve.min_xi_hat(), curve.max_xi_hat()}}}
                 .dump(2)
          << "\n";
      return kSuccess;
    }

    if (*fit) {
      RunRecord record("fit", args, global);
      const auto values = read_values(fit_input);
      record.add_input(fit_input, read_file(fit_input));
      const auto summary = summarize(values, {fit_bins, fit_shift});
      write_distribution(record, "", summary);
      record.finish();
      json b = brief(summary);
      b["sample_size"] = summary.sample_size;
      if (summary.weibull) b["weibull"] = *summary.weibull;
      out << b.dump(2) << "\n";
      return kSuccess;
    }
  } catch (const DomainError& e) {
    err << "ksigraph: " << e.what() << "\n";
    return kDomainError;
  } catch (const InputError& e) {
    err << "ksigraph: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "ksigraph: invalid argument: " << e.what() << "\n";
    return kInputError;
  } catch (const std::out_of_range& e) {
    err << "ksigraph: " << e.what() << "\n";
    return kInputError;
  } catch (const json::exception& e) {
    err << "ksigraph: " << e.what() << "\n";
    return kInputError;
  } catch (const fs::filesystem_error& e) {
    err << "ksigraph: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace ksigraph::cli
