#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "planar/dataset.hpp"
#include "planar/estimator.hpp"

namespace planar {

inline constexpr std::size_t kRegressors = 9;

/// One sample of the log10-linear model
///   y = c0 + a1 x1 + ... + a9 x9
/// with x = log10 of D1, D2, Dbar1, Dbar2, w, s, N_T, N_L and
/// x9 = (N_L - 1) log10(O). SI units throughout.
struct DesignRow {
  std::array<double, kRegressors> x{};
  double y = 0.0;
};

/// Display names of the intercept and the nine regressors, in column order.
std::string_view column_name(std::size_t column);

DesignRow design_row(const WindingGeometry& g, double inductance);

/// Throws InputError naming the offending sample index.
std::vector<DesignRow> build_design_matrix(std::span<const Sample> samples);

/// log10 of the model inductance for the row's regressors.
double linear_predictor(const DesignRow& row, const CoefficientSet& c);

/// Least squares by column-pivoted Householder QR. Throws RankDeficiency
/// listing the columns that cannot be resolved, InputError if there are not
/// more rows than unknowns.
CoefficientSet fit_ols(std::span<const DesignRow> rows);

struct HistogramBin {
  double lower_pct = 0.0;
  double upper_pct = 0.0;
  std::size_t count = 0;

  double center_pct() const noexcept { return (lower_pct + upper_pct) / 2.0; }
};

/// Percentage error, positive when the model underestimates:
///   100 (L_ref - L_model) / L_ref
double error_pct(double reference, double model);

struct EvaluationMetrics {
  std::size_t count = 0;
  double mean_error_pct = 0.0;
  double std_error_pct = 0.0;  // population
  double mae_pct = 0.0;
  double max_abs_error_pct = 0.0;
  double bin_width_pct = 0.0;
  std::vector<HistogramBin> histogram;  // contiguous, bins centered on multiples of the width
  double threshold_pct = 0.0;
  std::map<int, std::size_t> exceedance_by_layers;  // |error| > threshold, per N_L
};

struct EvaluationOptions {
  double threshold_pct = 5.0;
  double bin_width_pct = 0.5;
};

/// Throws InputError on empty input.
EvaluationMetrics evaluate(std::span<const Sample> samples, const CoefficientSet& c,
                           const EvaluationOptions& options = {});

struct FitReport {
  CoefficientSet coefficients;
  EvaluationMetrics metrics;  // on the evaluation subset
  std::size_t n_train = 0;
  std::size_t n_eval = 0;
  std::uint64_t seed = 0;
  std::size_t repeats = 1;
  double fraction = 0.0;
};

/// Split with `seed`, fit on the training part, evaluate on the rest.
FitReport fit_split(std::span<const Sample> samples, double fraction, std::uint64_t seed,
                    const EvaluationOptions& options = {});

struct CoefficientSpread {
  double mean = 0.0;
  double stddev = 0.0;  // population, across repeats
  double min = 0.0;
  double max = 0.0;

  double range() const noexcept { return max - min; }
};

struct RepeatedFit {
  std::vector<FitReport> runs;  // run k uses seed base_seed + k
  std::array<CoefficientSpread, 10> spread{};  // a0 .. a9
  /// a1..a9 averaged across runs; a0 from the mean intercept. Its metrics are
  /// measured on the evaluation subset of the first run.
  FitReport summary;
};

RepeatedFit repeated_fit(std::span<const Sample> samples, double fraction,
                         std::uint64_t base_seed, std::size_t repeats,
                         const EvaluationOptions& options = {});

}  // namespace planar
