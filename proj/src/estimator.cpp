#include "planar/estimator.hpp"

#include <cmath>
#include <numeric>

#include "planar/errors.hpp"
#include "planar/units.hpp"

namespace planar {

namespace {

// Reduced-form constants are the published values, not re-derived from a
// CoefficientSet.
constexpr double kSimplifiedPrefactor = 1.7274;
constexpr double kSimplifiedD1 = -0.592;
constexpr double kSimplifiedD2 = -0.378;
constexpr double kSimplifiedMean1 = 1.175;
constexpr double kSimplifiedMean2 = 1.072;
constexpr double kSimplifiedWidth = -0.183;
constexpr double kSimplifiedTurns = 1.8;
constexpr double kSimplifiedGap = -0.006;

void require_estimable(const WindingGeometry& g) {
  if (!g.is_canonical()) {
    throw OrientationError("monomial requires D1 <= D2; canonicalize the geometry first");
  }
  if (g.layers() >= 2 && !g.layer_gap()) {
    throw IncompleteGeometry("layer gap O is required when N_L >= 2");
  }
}

// O^(exponent (N_L - 1)); exactly 1 for a single layer whatever O holds.
double gap_factor(int layers, const std::optional<double>& gap, double exponent) {
  if (layers == 1) return 1.0;
  if (!gap) throw IncompleteGeometry("layer gap O is required when N_L >= 2");
  return std::pow(*gap, exponent * (layers - 1));
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InfeasibleGeometry(std::string(name) + " must be positive");
  }
}

}  // namespace

CoefficientSet CoefficientSet::published() {
  return {{1.602, -0.592, -0.378, 1.175, 1.072, -0.183, -0.011, 1.794, 1.804, -0.006},
          "published"};
}

double CoefficientSet::intercept() const noexcept {
  return std::log10(a[0]) + std::log10(kMu0);
}

void CoefficientSet::check() const {
  for (double v : a) {
    if (!std::isfinite(v)) throw InputError("coefficients must be finite");
  }
  if (!(a[0] > 0.0)) throw InputError("coefficient a0 must be positive");
}

double eval_full(const WindingGeometry& g, const CoefficientSet& c) {
  require_estimable(g);
  const auto m = g.mean_sides();
  const auto& a = c.a;
  return a[0] * kMu0 * std::pow(g.outer1(), a[1]) * std::pow(g.outer2(), a[2]) *
         std::pow(m.mean1, a[3]) * std::pow(m.mean2, a[4]) * std::pow(g.width(), a[5]) *
         std::pow(g.spacing(), a[6]) * std::pow(static_cast<double>(g.turns()), a[7]) *
         std::pow(static_cast<double>(g.layers()), a[8]) *
         gap_factor(g.layers(), g.layer_gap(), a[9]);
}

double eval_simplified(const WindingGeometry& g) {
  require_estimable(g);
  const auto m = g.mean_sides();
  const double total_turns = static_cast<double>(g.turns()) * g.layers();
  return kSimplifiedPrefactor * kMu0 * std::pow(g.outer1(), kSimplifiedD1) *
         std::pow(g.outer2(), kSimplifiedD2) * std::pow(m.mean1, kSimplifiedMean1) *
         std::pow(m.mean2, kSimplifiedMean2) * std::pow(g.width(), kSimplifiedWidth) *
         std::pow(total_turns, kSimplifiedTurns) *
         gap_factor(g.layers(), g.layer_gap(), kSimplifiedGap);
}

double eval_square(const SquareWinding& sq, const CoefficientSet& c) {
  require_positive(sq.outer, "outer side");
  require_positive(sq.inner, "inner side");
  require_positive(sq.width, "trace width");
  require_positive(sq.spacing, "trace spacing");
  if (sq.turns < 1 || sq.layers < 1) throw InfeasibleGeometry("turns and layers must be >= 1");
  const auto& a = c.a;
  const double mean = (sq.outer + sq.inner) / 2.0;
  return a[0] * kMu0 * std::pow(sq.outer, c.beta1()) * std::pow(mean, c.beta2()) *
         std::pow(sq.width, a[5]) * std::pow(sq.spacing, a[6]) *
         std::pow(static_cast<double>(sq.turns), a[7]) *
         std::pow(static_cast<double>(sq.layers), a[8]) *
         gap_factor(sq.layers, sq.layer_gap, a[9]);
}

namespace {

double mohan_shape(double outer, double inner, double width, double spacing, int turns) {
  require_positive(outer, "outer side");
  require_positive(inner, "inner side");
  require_positive(width, "trace width");
  require_positive(spacing, "trace spacing");
  if (turns < 1) throw InfeasibleGeometry("turn count must be at least 1");
  return std::pow(outer, -1.21) * std::pow((outer + inner) / 2.0, 2.4) *
         std::pow(width, -0.147) * std::pow(spacing, -0.03) *
         std::pow(static_cast<double>(turns), 1.78);
}

}  // namespace

double eval_mohan_si(double outer, double inner, double width, double spacing, int turns) {
  return 1.5428 * kMu0 * mohan_shape(outer, inner, width, spacing, turns);
}

double eval_mohan_um(double outer_um, double inner_um, double width_um, double spacing_um,
                     int turns) {
  return 1.62e-3 * mohan_shape(outer_um, inner_um, width_um, spacing_um, turns);
}

double effective_layer_spacing(std::span<const double> gaps) {
  if (gaps.empty()) throw InputError("effective layer spacing needs at least one gap");
  for (double g : gaps) require_positive(g, "layer gap");
  return std::accumulate(gaps.begin(), gaps.end(), 0.0) / static_cast<double>(gaps.size());
}

}  // namespace planar
