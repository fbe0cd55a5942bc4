#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "planar/estimator.hpp"
#include "planar/geometry.hpp"

namespace planar {

struct Bounds {
  double lower = 0.0;
  double upper = 0.0;

  bool contains(double v, double tolerance = 0.0) const noexcept {
    return v >= lower - tolerance && v <= upper + tolerance;
  }
  double width() const noexcept { return upper - lower; }
};

/// Maximize the monomial inductance over a box of outer sides, trace width
/// and spacing, with a finite set of admissible turn counts. Inner sides are
/// derived from the other dimensions and must stay inside their own bounds.
/// N_L and O are fixed. Lengths in meters.
struct OptimizationProblem {
  Bounds outer1;
  Bounds outer2;
  Bounds inner1;
  Bounds inner2;
  Bounds width;
  Bounds spacing;
  std::vector<int> turns_domain;
  int layers = 4;
  std::optional<double> layer_gap;
  CoefficientSet coefficients = CoefficientSet::published();

  /// Reference case: D1 12..54, D2 55..101, d1 10.5..52, d2 54..99,
  /// w 2.5..5, s 0.1..1 mm, N_T 3..10, N_L = 4, O = 0.5 mm.
  static OptimizationProblem reference();

  /// Throws InputError on inverted or nonpositive bounds, an empty or
  /// nonpositive turn domain, or a missing gap for N_L >= 2.
  void check() const;
};

/// Candidate vector (D1, D2, w, s, N_T). Ordered lexicographically.
struct DesignPoint {
  double outer1 = 0.0;
  double outer2 = 0.0;
  double width = 0.0;
  double spacing = 0.0;
  int turns = 0;

  auto operator<=>(const DesignPoint&) const = default;
};

/// Margin that turns the strict D1 < D2 into D1 <= D2 - margin (1 um).
inline constexpr double kOrderMargin = 1.0e-6;

struct Feasibility {
  bool feasible = false;
  double inner1 = 0.0;
  double inner2 = 0.0;
  std::string reason;  // first violated constraint, empty when feasible
};

/// Checks D1 < D2, every primary and derived bound, and turn membership.
Feasibility feasible(const DesignPoint& point, const OptimizationProblem& problem);

/// Winding for a candidate under the problem's fixed N_L and O.
WindingGeometry to_geometry(const DesignPoint& point, const OptimizationProblem& problem);

struct RestartRecord {
  DesignPoint start;
  DesignPoint converged;
  double inductance = 0.0;  // henries, at `converged`
  std::size_t evaluations = 0;
};

struct OptimizationResult {
  bool feasible_found = false;
  DesignPoint best_point;
  std::optional<WindingGeometry> best;
  double inductance = 0.0;  // henries
  std::size_t restarts_run = 0;
  std::vector<RestartRecord> log;
};

struct MultiStartOptions {
  std::size_t restarts = 100;  // per admissible turn count
  std::uint64_t seed = 0;
  /// Caller-chosen starts, searched before the random ones. Infeasible
  /// entries are skipped.
  std::vector<DesignPoint> extra_starts;
  /// Search ends when every step is below this fraction of its variable's
  /// range.
  double step_tolerance = 1e-9;
  std::size_t max_evaluations = 10000;  // per local search
  std::size_t max_start_draws = 1000;   // rejection-sampling budget per start
};

/// Multi-start local maximization. For each admissible N_T, random box starts
/// are drawn until feasible and polished by a bound-projected compass search
/// over (D1, D2, w, s) that rejects infeasible trial points. The incumbent is
/// replaced only by a strictly larger value, or an equal value at a
/// lexicographically smaller point. Returns feasible_found = false when no
/// feasible start exists.
OptimizationResult maximize(const OptimizationProblem& problem, const MultiStartOptions& options);

/// Grid steps for brute_force_max, meters.
struct GridResolution {
  double outer1 = 0.5e-3;
  double outer2 = 0.5e-3;
  double width = 0.1e-3;
  double spacing = 0.1e-3;
};

/// Exhaustive scan of lower + k * step (plus each upper bound) for every
/// admissible turn count. Ties go to the lexicographically smallest point.
/// Throws InfeasibleProblem when no grid point is feasible.
OptimizationResult brute_force_max(const OptimizationProblem& problem,
                                   const GridResolution& resolution = {});

}  // namespace planar
