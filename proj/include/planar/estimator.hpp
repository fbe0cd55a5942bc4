#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>

#include "planar/geometry.hpp"

namespace planar {

/// Prefactor and exponents of the multilayer rectangular monomial
///
///   L = a0 mu0 D1^a1 D2^a2 Dbar1^a3 Dbar2^a4 w^a5 s^a6 N_T^a7 N_L^a8 O^(a9 (N_L - 1))
///
/// with every length in meters and L in henries.
struct CoefficientSet {
  std::array<double, 10> a{};
  std::string label;

  /// Published fit: 1.602, -0.592, -0.378, 1.175, 1.072, -0.183, -0.011,
  /// 1.794, 1.804, -0.006.
  static CoefficientSet published();

  /// Exponent of D in the square reduction (a1 + a2).
  double beta1() const noexcept { return a[1] + a[2]; }
  /// Exponent of Dbar in the square reduction (a3 + a4).
  double beta2() const noexcept { return a[3] + a[4]; }
  /// Intercept of the log10-linear form: log10(a0) + log10(mu0).
  double intercept() const noexcept;

  /// Throws InputError unless a0 > 0 and every entry is finite.
  void check() const;

  friend bool operator==(const CoefficientSet&, const CoefficientSet&) = default;
};

/// Generalized monomial. Requires a canonical geometry (D1 <= D2) and a layer
/// gap when N_L >= 2; with one layer the gap factor is exactly 1.
double eval_full(const WindingGeometry& g, const CoefficientSet& c);

/// Reduced form with N_T and N_L merged under a common exponent and the
/// spacing term dropped. Same preconditions as eval_full.
double eval_simplified(const WindingGeometry& g);

/// Square winding (D1 = D2 = D, d1 = d2 = d). The inner side is taken as
/// given; it is not re-derived.
struct SquareWinding {
  double outer = 0.0;
  double inner = 0.0;
  double width = 0.0;
  double spacing = 0.0;
  int turns = 0;
  int layers = 0;
  std::optional<double> layer_gap;
};

double eval_square(const SquareWinding& sq, const CoefficientSet& c);

/// Original single-layer square monomial in SI units (meters in, henries out).
double eval_mohan_si(double outer, double inner, double width, double spacing, int turns);

/// Original single-layer square monomial in its native units (micrometers
/// in, nanohenries out).
double eval_mohan_um(double outer_um, double inner_um, double width_um, double spacing_um, int turns);

/// Single equivalent layer gap for a stack with unequal gaps: arithmetic mean
/// of the per-pair gaps.
double effective_layer_spacing(std::span<const double> gaps);

}  // namespace planar
