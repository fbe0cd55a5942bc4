#pragma once

#include <numbers>

// Internal quantities are SI (meters, henries). Files and the CLI speak
// millimeters and microhenries; convert only at those boundaries.
namespace planar {

inline constexpr double kMu0 = 4.0e-7 * std::numbers::pi;  // H/m

constexpr double from_mm(double mm) { return mm / 1000.0; }
constexpr double to_mm(double m) { return m * 1000.0; }
constexpr double from_uH(double uh) { return uh / 1.0e6; }
constexpr double to_uH(double h) { return h * 1.0e6; }

}  // namespace planar
