#include "planar/geometry.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "planar/errors.hpp"
#include "planar/units.hpp"

namespace planar {

namespace {

std::string mm_text(double meters) {
  std::ostringstream os;
  os << to_mm(meters) << " mm";
  return os.str();
}

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InfeasibleGeometry(std::string(name) + " must be a positive finite length");
  }
}

}  // namespace

double derive_inner_side(double outer, int turns, double width, double spacing) {
  require_positive(outer, "outer side");
  require_positive(width, "trace width");
  require_positive(spacing, "trace spacing");
  if (turns < 1) throw InfeasibleGeometry("turn count must be at least 1");

  const double inner = outer - 2.0 * turns * (width + spacing) + 2.0 * spacing;
  if (!(inner > 0.0)) {
    std::ostringstream os;
    os << turns << " turns of width " << mm_text(width) << " and spacing " << mm_text(spacing)
       << " do not fit in outer side " << mm_text(outer) << " (inner side " << mm_text(inner) << ")";
    throw InfeasibleGeometry(os.str());
  }
  return inner;
}

WindingGeometry::WindingGeometry(const WindingParams& p)
    : outer1_(p.side_a),
      outer2_(p.side_b),
      inner1_(0.0),
      inner2_(0.0),
      width_(p.width),
      spacing_(p.spacing),
      turns_(p.turns),
      layers_(p.layers),
      layer_gap_(p.layer_gap) {
  if (layers_ < 1) throw InfeasibleGeometry("layer count must be at least 1");
  if (layer_gap_) require_positive(*layer_gap_, "layer gap");
  inner1_ = derive_inner_side(outer1_, turns_, width_, spacing_);
  inner2_ = derive_inner_side(outer2_, turns_, width_, spacing_);
}

MeanSides WindingGeometry::mean_sides() const noexcept {
  return {(outer1_ + inner1_) / 2.0, (outer2_ + inner2_) / 2.0};
}

WindingParams WindingGeometry::params() const {
  return {outer1_, outer2_, width_, spacing_, turns_, layers_, layer_gap_};
}

WindingGeometry WindingGeometry::with_layer_gap(std::optional<double> gap) const {
  auto p = params();
  p.layer_gap = gap;
  return WindingGeometry(p);
}

WindingGeometry canonicalize(const WindingParams& params) {
  auto p = params;
  if (p.side_a > p.side_b) std::swap(p.side_a, p.side_b);
  return WindingGeometry(p);
}

WindingGeometry canonicalize(const WindingGeometry& geometry) {
  return geometry.is_canonical() ? geometry : canonicalize(geometry.params());
}

bool inner_side_ok(double inner, const ValidationOptions& options) noexcept {
  return options.strict_inner ? inner > options.min_inner + kLengthEpsilon
                              : inner >= options.min_inner - kLengthEpsilon;
}

bool ValidationReport::ok() const noexcept {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

const ValidationCheck* ValidationReport::find(std::string_view name) const noexcept {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

ValidationReport validate(const WindingGeometry& g, const ValidationOptions& options) {
  ValidationReport report;
  auto add = [&](std::string name, bool passed, std::string detail) {
    report.checks.push_back({std::move(name), passed, std::move(detail)});
  };

  add("orientation", g.is_canonical(),
      "D1 = " + mm_text(g.outer1()) + ", D2 = " + mm_text(g.outer2()));

  const bool multilayer = g.layers() >= 2;
  add("layer_gap", !multilayer || g.layer_gap().has_value(),
      multilayer ? (g.layer_gap() ? "O = " + mm_text(*g.layer_gap()) : "O missing for N_L >= 2")
                 : "single layer, O unused");

  const char* cmp = options.strict_inner ? " > " : " >= ";
  add("inner1_min", inner_side_ok(g.inner1(), options),
      "d1 = " + mm_text(g.inner1()) + cmp + mm_text(options.min_inner));
  add("inner2_min", inner_side_ok(g.inner2(), options),
      "d2 = " + mm_text(g.inner2()) + cmp + mm_text(options.min_inner));
  return report;
}

void check_inner_sides(const WindingGeometry& g, double inner1, double inner2) {
  const double e1 = std::abs(inner1 - g.inner1());
  const double e2 = std::abs(inner2 - g.inner2());
  if (e1 > kInnerSideTolerance || e2 > kInnerSideTolerance) {
    std::ostringstream os;
    os << "inner sides (" << to_mm(inner1) << ", " << to_mm(inner2)
       << ") mm disagree with d = D - 2 N (w + s) + 2 s = (" << to_mm(g.inner1()) << ", "
       << to_mm(g.inner2()) << ") mm";
    throw InputError(os.str());
  }
}

}  // namespace planar
