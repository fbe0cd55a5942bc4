#include "planar/regression.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "planar/errors.hpp"
#include "planar/units.hpp"

namespace planar {
namespace {

using testing::relative_error;

const std::vector<Sample>& noiseless_corpus() {
  static const auto samples =
      synth_labels(default_training_grid(), CoefficientSet::published(), 0.0, 0);
  return samples;
}

const std::vector<Sample>& noisy_corpus() {
  static const auto samples =
      synth_labels(default_training_grid(), CoefficientSet::published(), 0.0086, 99);
  return samples;
}

void expect_recovers(const CoefficientSet& fitted, const CoefficientSet& truth, double rel) {
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_LT(relative_error(fitted.a[i], truth.a[i]), rel) << "a" << i << " = " << fitted.a[i];
  }
}

TEST(DesignRow, RegressorDefinitions) {
  const WindingGeometry one({from_mm(100), from_mm(100), from_mm(4), from_mm(2), 5, 1, {}});
  EXPECT_EQ(design_row(one, 1e-6).x[8], 0.0);

  const WindingGeometry two({from_mm(100), from_mm(100), from_mm(4), from_mm(2), 5, 2, from_mm(1)});
  const auto r = design_row(two, 9.69e-6);
  EXPECT_NEAR(r.x[8], -3.0, 1e-15);
  EXPECT_NEAR(r.x[0], -1.0, 1e-15);
  EXPECT_NEAR(r.x[1], -1.0, 1e-15);
  EXPECT_NEAR(r.x[2], std::log10(0.072), 1e-15);
  EXPECT_NEAR(r.x[7], std::log10(2.0), 1e-15);
  EXPECT_NEAR(r.y, std::log10(9.69e-6), 1e-15);
}

TEST(DesignRow, BuildRejectsBadSamples) {
  const WindingGeometry g({from_mm(100), from_mm(100), from_mm(4), from_mm(2), 5, 1, {}});
  std::vector<Sample> bad = {{g, 1e-6, SampleSource::simulated}, {g, -1.0, SampleSource::simulated}};
  try {
    build_design_matrix(bad);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("sample #1"), std::string::npos);
  }
  const WindingGeometry flipped({from_mm(120), from_mm(100), from_mm(4), from_mm(2), 5, 1, {}});
  std::vector<Sample> unordered = {{flipped, 1e-6, SampleSource::simulated}};
  EXPECT_THROW(build_design_matrix(unordered), InputError);
}

TEST(LinearPredictor, MatchesMonomial) {
  const auto c = CoefficientSet::published();
  for (const auto& s : noisy_corpus()) {
    const double via_log = std::pow(10.0, linear_predictor(design_row(s.geometry, 1.0), c));
    ASSERT_LT(relative_error(via_log, eval_full(s.geometry, c)), 1e-12);
  }
}

TEST(FitOls, NoiselessClosureRecoversTruth) {
  const auto truth = CoefficientSet::published();
  const auto fitted = fit_ols(build_design_matrix(noiseless_corpus()));
  expect_recovers(fitted, truth, 1e-6);
}

TEST(FitOls, NoisyLabelsStayNearTruth) {
  const auto truth = CoefficientSet::published();
  const auto rows = build_design_matrix(noisy_corpus());
  const auto fitted = fit_ols(rows);
  for (std::size_t i = 1; i < 10; ++i) EXPECT_NEAR(fitted.a[i], truth.a[i], 0.05) << "a" << i;

  double residual_sum = 0.0;
  for (const auto& r : rows) residual_sum += r.y - linear_predictor(r, fitted);
  EXPECT_NEAR(residual_sum, 0.0, 1e-9);
}

TEST(FitOls, InvariantToSampleOrder) {
  auto rows = build_design_matrix(noisy_corpus());
  const auto a = fit_ols(rows);
  std::mt19937_64 rng(1);
  std::shuffle(rows.begin(), rows.end(), rng);
  const auto b = fit_ols(rows);
  for (std::size_t i = 1; i < 10; ++i) EXPECT_NEAR(a.a[i], b.a[i], 1e-10);
  EXPECT_NEAR(a.intercept(), b.intercept(), 1e-10);
}

TEST(FitOls, FittedModelRoundTripsThroughEstimator) {
  const auto fitted = fit_ols(build_design_matrix(noisy_corpus()));
  for (std::size_t i = 0; i < noisy_corpus().size(); i += 37) {
    const auto& g = noisy_corpus()[i].geometry;
    const double via_log = std::pow(10.0, linear_predictor(design_row(g, 1.0), fitted));
    EXPECT_LT(relative_error(via_log, eval_full(g, fitted)), 1e-12);
  }
}

TEST(FitOls, ConstantColumnIsRankDeficient) {
  std::vector<Sample> fixed_width;
  for (const auto& s : noiseless_corpus()) {
    if (std::abs(to_mm(s.geometry.width()) - 4.0) < 1e-9) fixed_width.push_back(s);
  }
  ASSERT_GT(fixed_width.size(), 10u);
  try {
    fit_ols(build_design_matrix(fixed_width));
    FAIL();
  } catch (const RankDeficiency& e) {
    EXPECT_NE(std::string(e.what()).find("log10(w)"), std::string::npos) << e.what();
  }
}

TEST(FitOls, CollinearColumnsAreRankDeficient) {
  // With N_L in {1, 2} and a single gap, the gap regressor is a fixed
  // multiple of log10(N_L).
  std::vector<Sample> subset;
  for (const auto& s : noiseless_corpus()) {
    const auto& g = s.geometry;
    if (g.layers() == 1 || (g.layers() == 2 && std::abs(to_mm(*g.layer_gap()) - 1.0) < 1e-9)) {
      subset.push_back(s);
    }
  }
  try {
    fit_ols(build_design_matrix(subset));
    FAIL();
  } catch (const RankDeficiency& e) {
    const std::string what = e.what();
    EXPECT_TRUE(what.find("log10(N_L)") != std::string::npos ||
                what.find("log10(O)") != std::string::npos)
        << what;
  }
}

TEST(FitOls, NeedsMoreRowsThanUnknowns) {
  const auto rows = build_design_matrix(std::span(noiseless_corpus()).first(10));
  EXPECT_THROW(fit_ols(rows), InputError);
}

TEST(Evaluate, ErrorSignConvention) {
  EXPECT_NEAR(error_pct(10.0, 9.5), 5.0, 1e-12);
  EXPECT_NEAR(error_pct(10.0, 10.5), -5.0, 1e-12);
}

TEST(Evaluate, SymmetricErrors) {
  const auto c = CoefficientSet::published();
  const WindingGeometry g1({from_mm(120), from_mm(160), from_mm(5), from_mm(0.5), 8, 1, {}});
  const WindingGeometry g2({from_mm(120), from_mm(160), from_mm(5), from_mm(0.5), 8, 2, from_mm(1.6)});
  const std::vector<Sample> samples = {
      {g1, eval_full(g1, c) / 0.98, SampleSource::measured},   // +2 %
      {g2, eval_full(g2, c) / 1.02, SampleSource::measured}};  // -2 %
  const auto m = evaluate(samples, c, {1.0, 0.5});
  EXPECT_NEAR(m.mean_error_pct, 0.0, 1e-12);
  EXPECT_NEAR(m.mae_pct, 2.0, 1e-12);
  EXPECT_NEAR(m.std_error_pct, 2.0, 1e-12);
  EXPECT_NEAR(m.max_abs_error_pct, 2.0, 1e-12);
  ASSERT_EQ(m.histogram.size(), 9u);
  EXPECT_NEAR(m.histogram.front().center_pct(), -2.0, 1e-12);
  EXPECT_NEAR(m.histogram.back().center_pct(), 2.0, 1e-12);
  EXPECT_EQ(m.histogram.front().count, 1u);
  EXPECT_EQ(m.histogram.back().count, 1u);
  EXPECT_EQ(m.exceedance_by_layers.at(1), 1u);
  EXPECT_EQ(m.exceedance_by_layers.at(2), 1u);
  EXPECT_EQ(evaluate(samples, c, {5.0, 0.5}).exceedance_by_layers.at(1), 0u);
}

TEST(Evaluate, ClosureGivesZeroError) {
  const auto m = evaluate(noiseless_corpus(), CoefficientSet::published());
  EXPECT_LT(std::abs(m.mean_error_pct), 1e-10);
  EXPECT_LT(m.std_error_pct, 1e-10);
  EXPECT_LT(m.mae_pct, 1e-10);
  ASSERT_EQ(m.histogram.size(), 1u);
  EXPECT_EQ(m.histogram.front().count, noiseless_corpus().size());
}

TEST(Evaluate, HistogramAndExceedanceInvariants) {
  const auto m = evaluate(noisy_corpus(), CoefficientSet::published(), {3.0, 0.25});
  std::size_t total = 0;
  for (const auto& b : m.histogram) {
    total += b.count;
    EXPECT_NEAR(b.upper_pct - b.lower_pct, 0.25, 1e-12);
  }
  EXPECT_EQ(total, m.count);
  std::size_t exceed = 0;
  for (const auto& [layers, n] : m.exceedance_by_layers) exceed += n;
  EXPECT_LE(exceed, m.count);
  EXPECT_EQ(m.exceedance_by_layers.size(), 4u);
}

TEST(Evaluate, RejectsEmptyInput) {
  EXPECT_THROW(evaluate(std::vector<Sample>{}, CoefficientSet::published()), InputError);
}

TEST(RepeatedFit, SingleRepeatHasNoSpread) {
  const auto r = repeated_fit(noisy_corpus(), 0.8, 3, 1);
  ASSERT_EQ(r.runs.size(), 1u);
  for (const auto& s : r.spread) EXPECT_EQ(s.range(), 0.0);
  EXPECT_EQ(r.summary.coefficients.a, r.runs.front().coefficients.a);
  EXPECT_EQ(r.summary.n_train + r.summary.n_eval, noisy_corpus().size());
}

TEST(RepeatedFit, NoiselessSplitsAllRecoverTruth) {
  const auto r = repeated_fit(noiseless_corpus(), 0.8, 10, 10);
  ASSERT_EQ(r.runs.size(), 10u);
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_LT(r.spread[i].range(), 1e-6) << "a" << i;
    EXPECT_EQ(r.runs[i].seed, 10u + i);
  }
  expect_recovers(r.summary.coefficients, CoefficientSet::published(), 1e-6);
  EXPECT_LT(r.summary.metrics.mae_pct, 1e-8);
}

TEST(RepeatedFit, NoisySplitsShowSpread) {
  const auto r = repeated_fit(noisy_corpus(), 0.8, 0, 20);
  for (std::size_t i = 1; i < 10; ++i) {
    EXPECT_GT(r.spread[i].stddev, 0.0) << "a" << i;
    EXPECT_NEAR(r.spread[i].mean, CoefficientSet::published().a[i], 0.05) << "a" << i;
  }
  EXPECT_THROW(repeated_fit(noisy_corpus(), 0.8, 0, 0), InputError);
}

}  // namespace
}  // namespace planar
