#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace planar {

/// Inner-side length left by `turns` turns of width `width` and pitch
/// `width + spacing` inside an outer side of length `outer`:
///   d = D - 2 N (w + s) + 2 s
/// Throws InfeasibleGeometry when the turns do not fit (d <= 0) or an input
/// is out of domain.
double derive_inner_side(double outer, int turns, double width, double spacing);

/// Raw winding dimensions in SI units, with the outer sides in any order.
struct WindingParams {
  double side_a = 0.0;
  double side_b = 0.0;
  double width = 0.0;
  double spacing = 0.0;
  int turns = 0;
  int layers = 0;
  std::optional<double> layer_gap;
};

struct MeanSides {
  double mean1 = 0.0;  // (D1 + d1) / 2
  double mean2 = 0.0;  // (D2 + d2) / 2
};

/// One multilayer rectangular planar winding. All lengths in meters.
///
/// Construction enforces physical realizability: positive lengths, at least
/// one turn and one layer, and positive inner sides. Canonical orientation
/// (D1 <= D2) and layer-gap presence are checked by validate() and enforced by
/// the estimator, so that non-canonical input can be represented and
/// reported. A layer gap supplied with a single layer is kept but never used.
class WindingGeometry {
 public:
  /// Keeps the sides in the given order: outer1 = side_a, outer2 = side_b.
  explicit WindingGeometry(const WindingParams& params);

  double outer1() const noexcept { return outer1_; }
  double outer2() const noexcept { return outer2_; }
  double inner1() const noexcept { return inner1_; }
  double inner2() const noexcept { return inner2_; }
  double width() const noexcept { return width_; }
  double spacing() const noexcept { return spacing_; }
  int turns() const noexcept { return turns_; }
  int layers() const noexcept { return layers_; }
  const std::optional<double>& layer_gap() const noexcept { return layer_gap_; }

  MeanSides mean_sides() const noexcept;
  bool is_canonical() const noexcept { return outer1_ <= outer2_; }

  WindingParams params() const;

  /// Copy with the layer gap replaced (or removed).
  WindingGeometry with_layer_gap(std::optional<double> gap) const;

  friend bool operator==(const WindingGeometry&, const WindingGeometry&) = default;

 private:
  double outer1_;
  double outer2_;
  double inner1_;
  double inner2_;
  double width_;
  double spacing_;
  int turns_;
  int layers_;
  std::optional<double> layer_gap_;
};

/// Builds the geometry with outer sides ordered so that D1 <= D2.
WindingGeometry canonicalize(const WindingParams& params);
WindingGeometry canonicalize(const WindingGeometry& geometry);

struct ValidationOptions {
  double min_inner = 0.0;  // meters
  bool strict_inner = false;  // true: d > min_inner, false: d >= min_inner
};

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool ok() const noexcept;
  const ValidationCheck* find(std::string_view name) const noexcept;
};

/// Per-invariant report; never throws.
ValidationReport validate(const WindingGeometry& geometry, const ValidationOptions& options = {});

/// Threshold comparisons treat lengths within this distance (1 nm) as equal,
/// so grid points that land exactly on the limit in decimal millimeters are
/// not decided by rounding noise.
inline constexpr double kLengthEpsilon = 1.0e-9;

/// True when `inner` passes the minimum inner-side threshold.
bool inner_side_ok(double inner, const ValidationOptions& options) noexcept;

/// Maximum disagreement tolerated between a supplied inner side and the one
/// derived from the other dimensions (1 um).
inline constexpr double kInnerSideTolerance = 1.0e-6;

/// Throws InputError if externally supplied inner sides disagree with the
/// derived ones by more than kInnerSideTolerance.
void check_inner_sides(const WindingGeometry& geometry, double inner1, double inner2);

}  // namespace planar
