#include "planar/estimator.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "planar/errors.hpp"
#include "planar/units.hpp"

namespace planar {
namespace {

using testing::kPublishedRows;
using testing::relative_error;

// Published coefficients carry three decimals; rounding alone moves the
// printed values by up to ~1.2%.
constexpr double kPublishedTolerance = 0.02;

WindingGeometry row_geometry(const testing::PublishedRow& r) {
  return WindingGeometry({from_mm(r.D1), from_mm(r.D2), from_mm(r.w), from_mm(r.s), r.NT, r.NL,
                          r.O ? std::optional(from_mm(*r.O)) : std::nullopt});
}

TEST(CoefficientSet, PublishedValues) {
  const auto c = CoefficientSet::published();
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(c.a[i], testing::kPublishedCoefficients[i]);
  EXPECT_EQ(c.beta1(), -0.97);
  EXPECT_EQ(c.beta2(), 2.247);
  EXPECT_NEAR(c.intercept(), std::log10(1.602 * 4e-7 * std::numbers::pi), 1e-15);
}

TEST(CoefficientSet, CheckRejectsNonPositivePrefactor) {
  auto c = CoefficientSet::published();
  c.a[0] = 0.0;
  EXPECT_THROW(c.check(), InputError);
  c.a[0] = 1.0;
  c.a[4] = std::nan("");
  EXPECT_THROW(c.check(), InputError);
}

TEST(EvalFull, ReproducesPublishedModelColumn) {
  const auto c = CoefficientSet::published();
  for (const auto& row : kPublishedRows) {
    const double L = to_uH(eval_full(row_geometry(row), c));
    EXPECT_LT(relative_error(L, row.L_model_uH), kPublishedTolerance)
        << "row " << row.id << ": " << L << " uH vs " << row.L_model_uH;
  }
}

TEST(EvalFull, AgreesWithLogSumOracle) {
  const auto c = CoefficientSet::published();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> D(0.07, 0.3), w(1e-3, 6e-3), s(1e-4, 2e-3), O(2e-4, 3e-3);
  std::uniform_int_distribution<int> nt(1, 10), nl(1, 6);
  int checked = 0;
  while (checked < 500) {
    double a = D(rng), b = D(rng);
    if (a > b) std::swap(a, b);
    const double ww = w(rng), ss = s(rng), oo = O(rng);
    const int t = nt(rng), l = nl(rng);
    if (a - 2.0 * t * (ww + ss) + 2.0 * ss <= 1e-3) continue;
    const WindingGeometry g({a, b, ww, ss, t, l, oo});
    const double expected = testing::log_sum_monomial(c.a, a, b, ww, ss, t, l, oo);
    EXPECT_LT(relative_error(eval_full(g, c), expected), 1e-12);
    ++checked;
  }
}

TEST(EvalFull, SingleLayerIgnoresGap) {
  const auto c = CoefficientSet::published();
  for (int id : {5, 7}) {
    const auto base = row_geometry(kPublishedRows[id - 1]);
    ASSERT_EQ(base.layers(), 1);
    const double reference = eval_full(base, c);
    for (double o : {0.1, 0.5, 1.6, 10.0}) {
      EXPECT_EQ(eval_full(base.with_layer_gap(from_mm(o)), c), reference);
    }
  }
}

TEST(EvalFull, RejectsNonCanonicalAndIncomplete) {
  const auto c = CoefficientSet::published();
  const WindingGeometry flipped({from_mm(163), from_mm(100), from_mm(3), from_mm(0.5), 10, 1, {}});
  EXPECT_THROW(eval_full(flipped, c), OrientationError);
  EXPECT_THROW(eval_simplified(flipped), OrientationError);

  const WindingGeometry no_gap({from_mm(100), from_mm(100), from_mm(5), from_mm(1), 5, 2, {}});
  EXPECT_THROW(eval_full(no_gap, c), IncompleteGeometry);
  EXPECT_THROW(eval_simplified(no_gap), IncompleteGeometry);
}

TEST(EvalFull, SwapInvariantThroughCanonicalize) {
  const auto c = CoefficientSet::published();
  const WindingParams ab{from_mm(100), from_mm(163), from_mm(3), from_mm(0.5), 10, 3, from_mm(1)};
  WindingParams ba = ab;
  std::swap(ba.side_a, ba.side_b);
  EXPECT_EQ(eval_full(canonicalize(ab), c), eval_full(canonicalize(ba), c));
}

TEST(EvalFull, IncreasesWithLayerCount) {
  const auto c = CoefficientSet::published();
  for (double o : {0.5, 1.0, 1.5}) {
    double previous = 0.0;
    for (int nl = 1; nl <= 8; ++nl) {
      const WindingGeometry g({from_mm(120), from_mm(160), from_mm(5), from_mm(0.5), 8, nl, from_mm(o)});
      const double L = eval_full(g, c);
      EXPECT_GT(L, previous) << "N_L = " << nl << ", O = " << o;
      previous = L;
    }
  }
}

TEST(EvalFull, SingleLayerHomogeneity) {
  const auto c = CoefficientSet::published();
  const double degree = c.a[1] + c.a[2] + c.a[3] + c.a[4] + c.a[5] + c.a[6];
  EXPECT_NEAR(degree, 1.083, 1e-12);
  const WindingParams p{from_mm(100), from_mm(163), from_mm(3), from_mm(0.5), 10, 1, {}};
  const double base = eval_full(WindingGeometry(p), c);
  for (double k : {0.25, 0.5, 2.0, 10.0}) {
    auto q = p;
    q.side_a *= k;
    q.side_b *= k;
    q.width *= k;
    q.spacing *= k;
    EXPECT_LT(relative_error(eval_full(WindingGeometry(q), c), base * std::pow(k, degree)), 1e-12);
  }
}

TEST(EvalSimplified, CloseToFullModel) {
  const auto c = CoefficientSet::published();
  for (const auto& row : kPublishedRows) {
    const auto g = row_geometry(row);
    EXPECT_LT(relative_error(eval_simplified(g), eval_full(g, c)), 0.03) << "row " << row.id;
  }
}

TEST(EvalSimplified, MergedTurnExponent) {
  const WindingGeometry g({from_mm(120), from_mm(160), from_mm(5), from_mm(0.5), 6, 2, from_mm(1.6)});
  const auto m = g.mean_sides();
  const double expected = 1.7274 * kMu0 * std::pow(g.outer1(), -0.592) *
                          std::pow(g.outer2(), -0.378) * std::pow(m.mean1, 1.175) *
                          std::pow(m.mean2, 1.072) * std::pow(g.width(), -0.183) *
                          std::pow(12.0, 1.8) * std::pow(from_mm(1.6), -0.006);
  EXPECT_LT(relative_error(eval_simplified(g), expected), 1e-14);

  const WindingGeometry one({g.outer1(), g.outer2(), g.width(), g.spacing(), 6, 1, {}});
  EXPECT_EQ(eval_simplified(one), eval_simplified(one.with_layer_gap(from_mm(3.0))));
}

TEST(EvalSquare, MatchesFullModelOnSquareInput) {
  const auto c = CoefficientSet::published();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> D(0.06, 0.3), w(1e-3, 5e-3), s(1e-4, 1e-3), O(3e-4, 2e-3);
  std::uniform_int_distribution<int> nt(1, 10), nl(1, 4);
  int checked = 0;
  while (checked < 200) {
    const double dd = D(rng), ww = w(rng), ss = s(rng), oo = O(rng);
    const int t = nt(rng), l = nl(rng);
    if (dd - 2.0 * t * (ww + ss) + 2.0 * ss <= 1e-3) continue;
    const WindingGeometry g({dd, dd, ww, ss, t, l, oo});
    const double sq = eval_square({dd, g.inner1(), ww, ss, t, l, oo}, c);
    EXPECT_LT(relative_error(sq, eval_full(g, c)), 1e-12);
    ++checked;
  }
}

TEST(EvalSquare, PublishedSquareRow) {
  const auto& r = kPublishedRows[2];
  const double L = eval_square({from_mm(r.D1), from_mm(r.d1), from_mm(r.w), from_mm(r.s), r.NT,
                                r.NL, from_mm(*r.O)},
                               CoefficientSet::published());
  EXPECT_LT(relative_error(to_uH(L), 9.09), kPublishedTolerance);
}

TEST(EvalSquare, ErrorsMirrorFullModel) {
  const auto c = CoefficientSet::published();
  EXPECT_THROW(eval_square({0.1, 0.04, 0.004, 0.002, 5, 2, std::nullopt}, c), IncompleteGeometry);
  EXPECT_THROW(eval_square({0.1, -0.04, 0.004, 0.002, 5, 1, std::nullopt}, c), InfeasibleGeometry);
}

TEST(Mohan, SiAndMicrometerFormsAgree) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> D(0.01, 0.2), frac(0.1, 0.9), w(1e-4, 5e-3),
      s(1e-5, 1e-3);
  std::uniform_int_distribution<int> n(1, 20);
  for (int i = 0; i < 100; ++i) {
    const double dd = D(rng), inner = dd * frac(rng), ww = w(rng), ss = s(rng);
    const int nn = n(rng);
    const double si = eval_mohan_si(dd, inner, ww, ss, nn);
    const double nh = eval_mohan_um(dd * 1e6, inner * 1e6, ww * 1e6, ss * 1e6, nn);
    EXPECT_LT(relative_error(si, nh * 1e-9), 1e-3);
  }
}

TEST(Mohan, DegenerateAnnulusAndTurnScaling) {
  // d = D collapses the mean side to D: D^(-1.21 + 2.4) = D^1.19.
  const double D = 0.05, w = 1e-3, s = 2e-4;
  const double expected = 1.5428 * kMu0 * std::pow(D, 1.19) * std::pow(w, -0.147) *
                          std::pow(s, -0.03) * std::pow(6.0, 1.78);
  EXPECT_LT(relative_error(eval_mohan_si(D, D, w, s, 6), expected), 1e-12);

  const double one = eval_mohan_si(0.05, 0.02, w, s, 4);
  const double two = eval_mohan_si(0.05, 0.02, w, s, 8);
  EXPECT_LT(relative_error(two / one, std::pow(2.0, 1.78)), 1e-12);
  const double one_um = eval_mohan_um(5e4, 2e4, 1e3, 200, 4);
  const double two_um = eval_mohan_um(5e4, 2e4, 1e3, 200, 8);
  EXPECT_LT(relative_error(two_um / one_um, std::pow(2.0, 1.78)), 1e-12);
}

TEST(Mohan, RejectsNonPositiveInput) {
  EXPECT_THROW(eval_mohan_si(0.0, 0.01, 1e-3, 1e-4, 3), InfeasibleGeometry);
  EXPECT_THROW(eval_mohan_um(100, 50, 10, -1, 3), InfeasibleGeometry);
  EXPECT_THROW(eval_mohan_si(0.1, 0.01, 1e-3, 1e-4, 0), InfeasibleGeometry);
}

TEST(EffectiveLayerSpacing, MeanOfGaps) {
  const std::vector<double> board = {from_mm(0.17), from_mm(1.0), from_mm(0.17)};
  const double o = to_mm(effective_layer_spacing(board));
  EXPECT_NEAR(o, 0.4466666666666667, 1e-12);
  EXPECT_NEAR(std::round(o * 100) / 100, 0.45, 1e-12);

  const std::vector<double> single = {from_mm(1.6)};
  EXPECT_DOUBLE_EQ(effective_layer_spacing(single), from_mm(1.6));
  const std::vector<double> uniform(3, from_mm(0.5));
  EXPECT_DOUBLE_EQ(effective_layer_spacing(uniform), from_mm(0.5));
  EXPECT_THROW(effective_layer_spacing(std::vector<double>{}), InputError);
}

}  // namespace
}  // namespace planar
