#include "planar/regression.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "planar/errors.hpp"
#include "planar/units.hpp"

namespace planar {

namespace {

constexpr std::size_t kUnknowns = kRegressors + 1;

constexpr std::string_view kColumnNames[kUnknowns] = {
    "intercept", "log10(D1)", "log10(D2)",  "log10(Dbar1)", "log10(Dbar2)",
    "log10(w)",  "log10(s)",  "log10(N_T)", "log10(N_L)",   "(N_L-1)*log10(O)"};

// Relative threshold on |R_kk| / |R_00| below which a pivot counts as zero.
constexpr double kRankThreshold = 1e-10;

std::string join_columns(const std::vector<std::size_t>& cols) {
  std::ostringstream os;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) os << ", ";
    os << kColumnNames[cols[i]];
  }
  return os.str();
}

}  // namespace

std::string_view column_name(std::size_t column) { return kColumnNames[column]; }

DesignRow design_row(const WindingGeometry& g, double inductance) {
  const auto m = g.mean_sides();
  DesignRow r;
  r.x = {std::log10(g.outer1()),
         std::log10(g.outer2()),
         std::log10(m.mean1),
         std::log10(m.mean2),
         std::log10(g.width()),
         std::log10(g.spacing()),
         std::log10(static_cast<double>(g.turns())),
         std::log10(static_cast<double>(g.layers())),
         g.layers() == 1 ? 0.0 : (g.layers() - 1) * std::log10(*g.layer_gap())};
  r.y = std::log10(inductance);
  return r;
}

std::vector<DesignRow> build_design_matrix(std::span<const Sample> samples) {
  std::vector<DesignRow> rows;
  rows.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    auto fail = [&](const std::string& msg) {
      return InputError("sample #" + std::to_string(i) + ": " + msg);
    };
    if (!(s.inductance > 0.0) || !std::isfinite(s.inductance)) {
      throw fail("reference inductance must be positive");
    }
    if (!s.geometry.is_canonical()) throw fail("outer sides not in canonical order (D1 <= D2)");
    if (s.geometry.layers() >= 2 && !s.geometry.layer_gap()) throw fail("layer gap missing");
    rows.push_back(design_row(s.geometry, s.inductance));
  }
  return rows;
}

double linear_predictor(const DesignRow& row, const CoefficientSet& c) {
  double y = c.intercept();
  for (std::size_t j = 0; j < kRegressors; ++j) y += c.a[j + 1] * row.x[j];
  return y;
}

CoefficientSet fit_ols(std::span<const DesignRow> rows) {
  const auto n = rows.size();
  if (n <= kUnknowns) {
    throw InputError("least squares needs more than " + std::to_string(kUnknowns) +
                     " samples, got " + std::to_string(n));
  }

  Eigen::MatrixXd X(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(kUnknowns));
  Eigen::VectorXd y(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    X(r, 0) = 1.0;
    for (std::size_t j = 0; j < kRegressors; ++j) X(r, static_cast<Eigen::Index>(j + 1)) = rows[i].x[j];
    y(r) = rows[i].y;
    if (!std::isfinite(y(r)) || !X.row(r).allFinite()) {
      throw InputError("design row " + std::to_string(i) + " has a non-finite entry");
    }
  }

  // A constant regressor is collinear with the intercept. Report those by
  // name before QR, which would only flag one arbitrary member of the set.
  std::vector<std::size_t> constant;
  for (std::size_t j = 1; j < kUnknowns; ++j) {
    const auto col = X.col(static_cast<Eigen::Index>(j));
    if (col.maxCoeff() - col.minCoeff() <= 1e-12 * std::max(1.0, col.cwiseAbs().maxCoeff())) {
      constant.push_back(j);
    }
  }
  if (!constant.empty()) {
    throw RankDeficiency("design matrix is rank deficient; constant columns collinear with the "
                         "intercept: " + join_columns(constant));
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  qr.setThreshold(kRankThreshold);
  if (qr.rank() < static_cast<Eigen::Index>(kUnknowns)) {
    std::vector<std::size_t> dependent;
    const auto& perm = qr.colsPermutation().indices();
    for (Eigen::Index k = qr.rank(); k < static_cast<Eigen::Index>(kUnknowns); ++k) {
      dependent.push_back(static_cast<std::size_t>(perm(k)));
    }
    std::sort(dependent.begin(), dependent.end());
    throw RankDeficiency("design matrix has rank " + std::to_string(qr.rank()) + " of " +
                         std::to_string(kUnknowns) + "; linearly dependent columns: " +
                         join_columns(dependent));
  }

  const Eigen::VectorXd beta = qr.solve(y);
  CoefficientSet c;
  c.a[0] = std::pow(10.0, beta(0)) / kMu0;
  for (std::size_t j = 1; j < kUnknowns; ++j) c.a[j] = beta(static_cast<Eigen::Index>(j));
  c.label = "ols fit, " + std::to_string(n) + " samples";
  return c;
}

double error_pct(double reference, double model) {
  return (reference - model) / reference * 100.0;
}

EvaluationMetrics evaluate(std::span<const Sample> samples, const CoefficientSet& c,
                           const EvaluationOptions& options) {
  if (samples.empty()) throw InputError("evaluation needs at least one sample");
  if (!(options.bin_width_pct > 0.0)) throw InputError("histogram bin width must be positive");
  if (!(options.threshold_pct >= 0.0)) throw InputError("exceedance threshold must be >= 0");

  EvaluationMetrics m;
  m.count = samples.size();
  m.bin_width_pct = options.bin_width_pct;
  m.threshold_pct = options.threshold_pct;

  std::vector<double> errors;
  errors.reserve(samples.size());
  for (const auto& s : samples) {
    const double e = error_pct(s.inductance, eval_full(s.geometry, c));
    errors.push_back(e);
    auto& exceed = m.exceedance_by_layers[s.geometry.layers()];
    if (std::abs(e) > options.threshold_pct) ++exceed;
  }

  const double count = static_cast<double>(errors.size());
  double sum = 0.0, abs_sum = 0.0;
  for (double e : errors) {
    sum += e;
    abs_sum += std::abs(e);
    m.max_abs_error_pct = std::max(m.max_abs_error_pct, std::abs(e));
  }
  m.mean_error_pct = sum / count;
  m.mae_pct = abs_sum / count;
  double sq = 0.0;
  for (double e : errors) sq += (e - m.mean_error_pct) * (e - m.mean_error_pct);
  m.std_error_pct = std::sqrt(sq / count);

  // Bin k covers [(k - 1/2) width, (k + 1/2) width).
  const double width = options.bin_width_pct;
  auto bin_of = [&](double e) { return static_cast<long long>(std::floor(e / width + 0.5)); };
  long long lo = bin_of(errors.front()), hi = lo;
  for (double e : errors) {
    lo = std::min(lo, bin_of(e));
    hi = std::max(hi, bin_of(e));
  }
  m.histogram.resize(static_cast<std::size_t>(hi - lo + 1));
  for (long long k = lo; k <= hi; ++k) {
    auto& bin = m.histogram[static_cast<std::size_t>(k - lo)];
    bin.lower_pct = (static_cast<double>(k) - 0.5) * width;
    bin.upper_pct = (static_cast<double>(k) + 0.5) * width;
  }
  for (double e : errors) ++m.histogram[static_cast<std::size_t>(bin_of(e) - lo)].count;
  return m;
}

FitReport fit_split(std::span<const Sample> samples, double fraction, std::uint64_t seed,
                    const EvaluationOptions& options) {
  const auto split = split_train_eval(samples, fraction, seed);
  const auto train = select(samples, split.train);
  const auto held_out = select(samples, split.eval);

  FitReport report;
  report.coefficients = fit_ols(build_design_matrix(train));
  report.coefficients.label = "ols fit, seed " + std::to_string(seed);
  report.metrics = evaluate(held_out, report.coefficients, options);
  report.n_train = train.size();
  report.n_eval = held_out.size();
  report.seed = seed;
  report.repeats = 1;
  report.fraction = fraction;
  return report;
}

RepeatedFit repeated_fit(std::span<const Sample> samples, double fraction,
                         std::uint64_t base_seed, std::size_t repeats,
                         const EvaluationOptions& options) {
  if (repeats < 1) throw InputError("repeat count must be at least 1");

  RepeatedFit out;
  out.runs.reserve(repeats);
  for (std::size_t k = 0; k < repeats; ++k) {
    out.runs.push_back(fit_split(samples, fraction, base_seed + k, options));
  }

  const double r = static_cast<double>(repeats);
  CoefficientSet mean;
  double mean_intercept = 0.0;
  for (const auto& run : out.runs) mean_intercept += run.coefficients.intercept() / r;
  for (std::size_t j = 0; j < 10; ++j) {
    auto& sp = out.spread[j];
    sp.min = sp.max = out.runs.front().coefficients.a[j];
    for (const auto& run : out.runs) {
      const double v = run.coefficients.a[j];
      sp.mean += v / r;
      sp.min = std::min(sp.min, v);
      sp.max = std::max(sp.max, v);
    }
    double sq = 0.0;
    for (const auto& run : out.runs) sq += (run.coefficients.a[j] - sp.mean) * (run.coefficients.a[j] - sp.mean);
    sp.stddev = std::sqrt(sq / r);
    mean.a[j] = sp.mean;
  }
  mean.a[0] = repeats == 1 ? out.runs.front().coefficients.a[0]
                           : std::pow(10.0, mean_intercept) / kMu0;
  mean.label = "ols fit, mean of " + std::to_string(repeats) + " splits from seed " +
               std::to_string(base_seed);

  const auto split = split_train_eval(samples, fraction, base_seed);
  const auto held_out = select(samples, split.eval);
  out.summary.coefficients = mean;
  out.summary.metrics = evaluate(held_out, mean, options);
  out.summary.n_train = split.train.size();
  out.summary.n_eval = split.eval.size();
  out.summary.seed = base_seed;
  out.summary.repeats = repeats;
  out.summary.fraction = fraction;
  return out;
}

}  // namespace planar
