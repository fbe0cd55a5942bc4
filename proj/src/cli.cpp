#include "planar/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "planar/dataset.hpp"
#include "planar/errors.hpp"
#include "planar/estimator.hpp"
#include "planar/json_io.hpp"
#include "planar/optimizer.hpp"
#include "planar/regression.hpp"
#include "planar/units.hpp"
#include "text.hpp"

namespace planar::cli {

namespace {

/// Argument problems detected after CLI11 parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string units = "mm-uH";
  std::string output;
  std::string format;
};

// Writes either to the named file or to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw InputError("cannot open '" + path + "' for writing");
    }
    stream_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::string mm2(double meters) { return text::fixed(to_mm(meters), 2); }

CoefficientSet load_coefficients(const std::string& path) {
  if (path.empty() || path == "published") return CoefficientSet::published();
  return coefficients_from_json(read_json_file(path));
}

// --- estimate ------------------------------------------------------------

struct EstimateArgs {
  double D1 = 0, D2 = 0, w = 0, s = 0;
  int NT = 0, NL = 0;
  std::optional<double> O;
  std::vector<double> gaps;
  std::string model = "full";
  std::string coeffs;
};

int run_estimate(const EstimateArgs& a, const GlobalOptions& g, std::ostream& out) {
  if (a.O && !a.gaps.empty()) throw UsageError("--O and --gaps are mutually exclusive");
  std::optional<double> gap;
  if (a.O) gap = from_mm(*a.O);
  if (!a.gaps.empty()) {
    std::vector<double> si;
    for (double v : a.gaps) si.push_back(from_mm(v));
    gap = effective_layer_spacing(si);
  }
  if (a.NL >= 2 && !gap) throw UsageError("--O (or --gaps) is required when --NL >= 2");

  const auto geometry = canonicalize(
      WindingParams{from_mm(a.D1), from_mm(a.D2), from_mm(a.w), from_mm(a.s), a.NT, a.NL, gap});
  const auto coeffs = load_coefficients(a.coeffs);

  double inductance = 0.0;
  if (a.model == "full") {
    inductance = eval_full(geometry, coeffs);
  } else if (a.model == "simplified") {
    inductance = eval_simplified(geometry);
  } else if (a.model == "square") {
    if (geometry.outer1() != geometry.outer2()) throw UsageError("--model square needs D1 == D2");
    inductance = eval_square({geometry.outer1(), geometry.inner1(), geometry.width(),
                              geometry.spacing(), geometry.turns(), geometry.layers(),
                              geometry.layer_gap()},
                             coeffs);
  } else if (a.model == "mohan") {
    if (geometry.outer1() != geometry.outer2()) throw UsageError("--model mohan needs D1 == D2");
    if (geometry.layers() != 1) throw UsageError("--model mohan needs --NL 1");
    inductance = eval_mohan_si(geometry.outer1(), geometry.inner1(), geometry.width(),
                               geometry.spacing(), geometry.turns());
  } else {
    throw UsageError("unknown model '" + a.model + "'");
  }

  Sink sink(g.output, out);
  auto& os = sink.stream();
  const auto m = geometry.mean_sides();
  if (g.format == "json") {
    Json j;
    j["model"] = a.model;
    j["L_uH"] = to_uH(inductance);
    j["geometry"] = geometry_json(geometry);
    j["coefficients"] = to_json(coeffs);
    os << dump(j);
  } else if (g.format == "csv") {
    os << "model,L_uH,d1_mm,d2_mm,Dbar1_mm,Dbar2_mm\n"
       << a.model << ',' << text::shortest(to_uH(inductance)) << ','
       << text::shortest(to_mm(geometry.inner1())) << ',' << text::shortest(to_mm(geometry.inner2()))
       << ',' << text::shortest(to_mm(m.mean1)) << ',' << text::shortest(to_mm(m.mean2)) << '\n';
  } else {
    os << "L = " << text::fixed(to_uH(inductance), 2) << " uH (" << a.model << " model)\n"
       << "d1 = " << mm2(geometry.inner1()) << " mm\n"
       << "d2 = " << mm2(geometry.inner2()) << " mm\n"
       << "Dbar1 = " << mm2(m.mean1) << " mm\n"
       << "Dbar2 = " << mm2(m.mean2) << " mm\n";
  }
  return kOk;
}

// --- grid / synth --------------------------------------------------------

struct GridArgs {
  std::string spec;
  std::string preset;
  std::string out;
  std::string labels;
  double noise = 0.0;
};

GridSpec preset_spec(const std::string& name) {
  if (name == "A") return dataset_a_spec();
  if (name == "B") return dataset_b_spec();
  if (name == "C") return dataset_c_spec();
  throw UsageError("unknown preset '" + name + "' (expected A, B, C or AB)");
}

int run_grid(const GridArgs& a, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  if (a.spec.empty() == a.preset.empty()) throw UsageError("give exactly one of --spec or --preset");
  std::vector<WindingGeometry> geometries;
  if (!a.spec.empty()) {
    geometries = generate_grid(grid_spec_from_json(read_json_file(a.spec)));
  } else if (a.preset == "AB") {
    geometries = default_training_grid();
  } else {
    geometries = generate_grid(preset_spec(a.preset));
  }
  if (a.labels.empty() && a.noise != 0.0) throw UsageError("--noise needs --labels");

  Sink sink(a.out.empty() ? g.output : a.out, out);
  if (a.labels.empty()) {
    write_geometry_csv(sink.stream(), geometries);
  } else {
    const auto samples = synth_labels(geometries, load_coefficients(a.labels), a.noise, g.seed);
    write_csv(sink.stream(), samples);
  }
  err << "generated " << geometries.size() << " geometries\n";
  return kOk;
}

struct SynthArgs {
  std::string in;
  std::string out;
  std::string labels = "published";
  double noise = 0.0;
};

int run_synth(const SynthArgs& a, const GlobalOptions& g, std::ostream& out) {
  const auto geometries = read_geometry_csv(a.in);
  const auto samples = synth_labels(geometries, load_coefficients(a.labels), a.noise, g.seed);
  Sink sink(a.out.empty() ? g.output : a.out, out);
  write_csv(sink.stream(), samples);
  return kOk;
}

// --- fit / eval ----------------------------------------------------------

void print_metrics(std::ostream& os, const EvaluationMetrics& m) {
  os << "evaluation samples: " << m.count << '\n'
     << "mean error: " << text::fixed(m.mean_error_pct, 2) << " %\n"
     << "std deviation: " << text::fixed(m.std_error_pct, 2) << " %\n"
     << "MAE: " << text::fixed(m.mae_pct, 2) << " %\n";
  for (const auto& [layers, count] : m.exceedance_by_layers) {
    os << "N_L = " << layers << ": " << count << " samples with |error| > "
       << text::shortest(m.threshold_pct) << " %\n";
  }
}

struct FitArgs {
  std::string in;
  double fraction = 0.8;
  std::size_t repeats = 1;
  std::string out;
  std::string report;
  double threshold = 5.0;
  double bin_width = 0.5;
};

int run_fit(const FitArgs& a, const GlobalOptions& g, std::ostream& out) {
  const auto samples = read_csv(a.in);
  const auto fit =
      repeated_fit(samples, a.fraction, g.seed, a.repeats, {a.threshold, a.bin_width});
  const auto& c = fit.summary.coefficients;

  const std::string coeff_path = a.out.empty() ? g.output : a.out;
  if (!coeff_path.empty()) write_json_file(coeff_path, to_json(c));
  if (!a.report.empty()) write_json_file(a.report, to_json(fit));

  if (coeff_path.empty() || g.format == "json") {
    out << dump(to_json(c));
    return kOk;
  }
  out << "trained on " << fit.summary.n_train << " samples, " << a.repeats << " split(s), seed "
      << g.seed << '\n';
  for (std::size_t i = 0; i < 10; ++i) {
    out << 'a' << i << " = " << text::fixed(c.a[i], 4) << "  (spread "
        << text::shortest(fit.spread[i].range()) << ")\n";
  }
  print_metrics(out, fit.summary.metrics);
  return kOk;
}

struct EvalArgs {
  std::string in;
  std::string coeffs = "published";
  double threshold = 5.0;
  double bin_width = 0.5;
  std::string report;
  std::string hist;
};

int run_eval(const EvalArgs& a, const GlobalOptions& g, std::ostream& out) {
  const auto samples = read_csv(a.in);
  const auto c = load_coefficients(a.coeffs);
  const auto m = evaluate(samples, c, {a.threshold, a.bin_width});
  if (!a.report.empty()) write_json_file(a.report, to_json(m));
  if (!a.hist.empty()) {
    Sink hist(a.hist, out);
    write_histogram_csv(hist.stream(), m);
  }
  Sink sink(g.output, out);
  if (g.format == "json") {
    sink.stream() << dump(to_json(m));
  } else if (g.format == "csv") {
    write_histogram_csv(sink.stream(), m);
  } else {
    print_metrics(sink.stream(), m);
  }
  return kOk;
}

// --- optimize ------------------------------------------------------------

struct OptimizeArgs {
  std::string problem;
  std::size_t restarts = 100;
  std::string out;
  bool oracle = false;
  std::vector<double> resolution;  // mm: D1, D2, w, s
  bool no_log = false;
};

int run_optimize(const OptimizeArgs& a, const GlobalOptions& g, std::ostream& out) {
  const auto problem = a.problem.empty() ? OptimizationProblem::reference()
                                         : problem_from_json(read_json_file(a.problem));
  MultiStartOptions options;
  options.restarts = a.restarts;
  options.seed = g.seed;
  const auto result = maximize(problem, options);

  Json doc;
  doc["problem"] = to_json(problem);
  doc["seed"] = g.seed;
  doc["result"] = to_json(result, !a.no_log);

  std::optional<OptimizationResult> oracle;
  if (a.oracle) {
    GridResolution res;
    if (!a.resolution.empty()) {
      if (a.resolution.size() != 4) throw UsageError("--resolution takes 4 values: D1 D2 w s (mm)");
      res = {from_mm(a.resolution[0]), from_mm(a.resolution[1]), from_mm(a.resolution[2]),
             from_mm(a.resolution[3])};
    }
    oracle = brute_force_max(problem, res);
    Json o = to_json(*oracle, false);
    o["resolution_mm"] = {to_mm(res.outer1), to_mm(res.outer2), to_mm(res.width), to_mm(res.spacing)};
    if (result.feasible_found) {
      o["relative_gap"] = (result.inductance - oracle->inductance) / oracle->inductance;
    }
    doc["oracle"] = std::move(o);
  }

  const std::string path = a.out.empty() ? g.output : a.out;
  if (!path.empty()) write_json_file(path, doc);
  if (path.empty() || g.format == "json") {
    out << dump(doc);
  } else if (result.feasible_found) {
    const auto& b = *result.best;
    out << "D1 = " << mm2(b.outer1()) << " mm, D2 = " << mm2(b.outer2()) << " mm\n"
        << "d1 = " << mm2(b.inner1()) << " mm, d2 = " << mm2(b.inner2()) << " mm\n"
        << "w = " << mm2(b.width()) << " mm, s = " << mm2(b.spacing()) << " mm, N_T = "
        << b.turns() << '\n'
        << "L = " << text::fixed(to_uH(result.inductance), 2) << " uH (" << result.restarts_run
        << " local searches)\n";
    if (oracle) out << "grid oracle: L = " << text::fixed(to_uH(oracle->inductance), 2) << " uH\n";
  }
  if (!result.feasible_found) {
    throw InfeasibleProblem("no feasible start found for any admissible turn count");
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inductance estimation, fitting and optimization for multilayer rectangular "
               "planar windings (mm / uH)"};
  app.name(args.empty() ? "planar" : args.front());
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Seed for splits, label noise and random starts");
  app.add_option("--units", g.units, "Unit system (only mm-uH)")
      ->check(CLI::IsMember({"mm-uH"}));
  app.add_option("--output", g.output, "Write the primary output here instead of stdout");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Inductance of one winding");
  estimate->add_option("--D1", est.D1, "Outer side 1 [mm]")->required();
  estimate->add_option("--D2", est.D2, "Outer side 2 [mm]")->required();
  estimate->add_option("--w", est.w, "Trace width [mm]")->required();
  estimate->add_option("--s", est.s, "Trace spacing [mm]")->required();
  estimate->add_option("--NT", est.NT, "Turns per layer")->required();
  estimate->add_option("--NL", est.NL, "Number of layers")->required();
  estimate->add_option("--O", est.O, "Gap between consecutive layers [mm]");
  estimate->add_option("--gaps", est.gaps, "Per-pair layer gaps [mm]; their mean is used as O")
      ->delimiter(',');
  estimate->add_option("--model", est.model, "full | simplified | square | mohan")
      ->check(CLI::IsMember({"full", "simplified", "square", "mohan"}));
  estimate->add_option("--coeffs", est.coeffs, "Coefficient JSON (default: published set)");

  GridArgs grid_args;
  auto* grid = app.add_subcommand("grid", "Enumerate a constrained geometry grid");
  grid->add_option("--spec", grid_args.spec, "Grid spec JSON");
  grid->add_option("--preset", grid_args.preset, "Built-in grid: A, B, C or AB");
  grid->add_option("--out", grid_args.out, "Sample CSV to write");
  grid->add_option("--labels", grid_args.labels,
                   "Label with this coefficient JSON ('published' for the built-in set)");
  grid->add_option("--noise", grid_args.noise, "Label noise sigma in log10 space");

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Attach synthetic labels to a geometry CSV");
  synth->add_option("--in", synth_args.in, "Geometry CSV")->required();
  synth->add_option("--out", synth_args.out, "Sample CSV to write");
  synth->add_option("--labels", synth_args.labels, "Truth coefficient JSON or 'published'");
  synth->add_option("--noise", synth_args.noise, "Label noise sigma in log10 space");

  FitArgs fit_args;
  auto* fit = app.add_subcommand("fit", "Fit coefficients by least squares on log10 data");
  fit->add_option("--in", fit_args.in, "Labeled sample CSV")->required();
  fit->add_option("--fraction", fit_args.fraction, "Training fraction");
  fit->add_option("--repeats", fit_args.repeats, "Number of independent splits");
  fit->add_option("--out", fit_args.out, "Coefficient JSON to write");
  fit->add_option("--report", fit_args.report, "Fit report JSON to write");
  fit->add_option("--threshold", fit_args.threshold, "Exceedance threshold [%]");
  fit->add_option("--bin-width", fit_args.bin_width, "Histogram bin width [%]");

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Evaluate coefficients against labeled samples");
  eval->add_option("--in", eval_args.in, "Labeled sample CSV")->required();
  eval->add_option("--coeffs", eval_args.coeffs, "Coefficient JSON or 'published'");
  eval->add_option("--threshold", eval_args.threshold, "Exceedance threshold [%]");
  eval->add_option("--bin-width", eval_args.bin_width, "Histogram bin width [%]");
  eval->add_option("--report", eval_args.report, "Metrics JSON to write");
  eval->add_option("--hist", eval_args.hist, "Histogram CSV to write");

  OptimizeArgs opt_args;
  auto* optimize = app.add_subcommand("optimize", "Maximize inductance under bounds");
  optimize->add_option("--problem", opt_args.problem, "Problem JSON (default: reference case)");
  optimize->add_option("--restarts", opt_args.restarts, "Random starts per turn count");
  optimize->add_option("--out", opt_args.out, "Result JSON to write");
  optimize->add_flag("--oracle", opt_args.oracle, "Also run the exhaustive grid search");
  optimize->add_option("--resolution", opt_args.resolution, "Oracle grid steps D1,D2,w,s [mm]")
      ->delimiter(',');
  optimize->add_flag("--no-log", opt_args.no_log, "Omit the per-restart log");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("planar");

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*estimate) return run_estimate(est, g, out);
    if (*grid) return run_grid(grid_args, g, out, err);
    if (*synth) return run_synth(synth_args, g, out);
    if (*fit) return run_fit(fit_args, g, out);
    if (*eval) return run_eval(eval_args, g, out);
    if (*optimize) return run_optimize(opt_args, g, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const InfeasibleGeometry& e) {
    err << "infeasible geometry: " << e.what() << '\n';
    return kInfeasible;
  } catch (const IncompleteGeometry& e) {
    err << "incomplete geometry: " << e.what() << '\n';
    return kUsage;
  } catch (const InfeasibleProblem& e) {
    err << "infeasible problem: " << e.what() << '\n';
    return kInfeasible;
  } catch (const RankDeficiency& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}

}  // namespace planar::cli
