#include "planar/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "planar/errors.hpp"
#include "planar/random.hpp"
#include "planar/units.hpp"

namespace planar {

OptimizationProblem OptimizationProblem::reference() {
  OptimizationProblem p;
  p.outer1 = {from_mm(12.0), from_mm(54.0)};
  p.outer2 = {from_mm(55.0), from_mm(101.0)};
  p.inner1 = {from_mm(10.5), from_mm(52.0)};
  p.inner2 = {from_mm(54.0), from_mm(99.0)};
  p.width = {from_mm(2.5), from_mm(5.0)};
  p.spacing = {from_mm(0.1), from_mm(1.0)};
  p.turns_domain = {3, 4, 5, 6, 7, 8, 9, 10};
  p.layers = 4;
  p.layer_gap = from_mm(0.5);
  return p;
}

void OptimizationProblem::check() const {
  auto check_bounds = [](const Bounds& b, const char* name) {
    if (!std::isfinite(b.lower) || !std::isfinite(b.upper) || b.lower > b.upper) {
      throw InputError(std::string("bounds for ") + name + " must satisfy lower <= upper");
    }
  };
  auto check_positive = [](const Bounds& b, const char* name) {
    if (!(b.lower > 0.0)) throw InputError(std::string("lower bound for ") + name + " must be positive");
  };
  check_bounds(outer1, "D1");
  check_bounds(outer2, "D2");
  check_bounds(inner1, "d1");
  check_bounds(inner2, "d2");
  check_bounds(width, "w");
  check_bounds(spacing, "s");
  check_positive(outer1, "D1");
  check_positive(outer2, "D2");
  check_positive(width, "w");
  check_positive(spacing, "s");
  if (turns_domain.empty()) throw InputError("turn domain is empty");
  for (int t : turns_domain) {
    if (t < 1) throw InputError("turn domain entries must be positive");
  }
  if (layers < 1) throw InputError("layer count must be at least 1");
  if (layers >= 2 && !layer_gap) throw InputError("layer gap O is required when N_L >= 2");
  if (layer_gap && !(*layer_gap > 0.0)) throw InputError("layer gap O must be positive");
  coefficients.check();
}

Feasibility feasible(const DesignPoint& x, const OptimizationProblem& p) {
  Feasibility f;
  f.inner1 = x.outer1 - 2.0 * x.turns * (x.width + x.spacing) + 2.0 * x.spacing;
  f.inner2 = x.outer2 - 2.0 * x.turns * (x.width + x.spacing) + 2.0 * x.spacing;

  const double eps = kLengthEpsilon;
  if (!(x.outer1 <= x.outer2 - kOrderMargin)) {
    f.reason = "D1 < D2 violated";
  } else if (std::find(p.turns_domain.begin(), p.turns_domain.end(), x.turns) ==
             p.turns_domain.end()) {
    f.reason = "N_T outside its domain";
  } else if (!p.outer1.contains(x.outer1, eps)) {
    f.reason = "D1 out of bounds";
  } else if (!p.outer2.contains(x.outer2, eps)) {
    f.reason = "D2 out of bounds";
  } else if (!p.width.contains(x.width, eps)) {
    f.reason = "w out of bounds";
  } else if (!p.spacing.contains(x.spacing, eps)) {
    f.reason = "s out of bounds";
  } else if (!(f.inner1 > 0.0) || !p.inner1.contains(f.inner1, eps)) {
    f.reason = "d1 out of bounds";
  } else if (!(f.inner2 > 0.0) || !p.inner2.contains(f.inner2, eps)) {
    f.reason = "d2 out of bounds";
  } else {
    f.feasible = true;
  }
  return f;
}

WindingGeometry to_geometry(const DesignPoint& x, const OptimizationProblem& p) {
  return WindingGeometry({x.outer1, x.outer2, x.width, x.spacing, x.turns, p.layers,
                          p.layers >= 2 ? p.layer_gap : std::nullopt});
}

namespace {

double objective(const DesignPoint& x, const OptimizationProblem& p) {
  return eval_full(to_geometry(x, p), p.coefficients);
}

// Continuous coordinates of a point, in search order.
std::array<double*, 4> coords(DesignPoint& x) {
  return {&x.outer1, &x.outer2, &x.width, &x.spacing};
}

std::array<const Bounds*, 4> coord_bounds(const OptimizationProblem& p) {
  return {&p.outer1, &p.outer2, &p.width, &p.spacing};
}

/// Higher value wins; equal values go to the lexicographically smaller point.
bool better(double value, const DesignPoint& point, double incumbent_value,
            const DesignPoint& incumbent) {
  if (value != incumbent_value) return value > incumbent_value;
  return point < incumbent;
}

struct LocalResult {
  DesignPoint point;
  double value;
  std::size_t evaluations;
};

// Compass search on the four continuous coordinates. Trial points are
// projected onto the box; points violating the remaining constraints are
// rejected. A poll without improvement halves every step.
LocalResult compass_search(DesignPoint x, const OptimizationProblem& p,
                           const MultiStartOptions& options) {
  const auto bounds = coord_bounds(p);
  std::array<double, 4> step{};
  for (std::size_t i = 0; i < 4; ++i) step[i] = 0.25 * bounds[i]->width();

  double fx = objective(x, p);
  std::size_t evaluations = 1;

  auto converged = [&] {
    for (std::size_t i = 0; i < 4; ++i) {
      if (step[i] > options.step_tolerance * bounds[i]->width()) return false;
    }
    return true;
  };

  while (!converged() && evaluations < options.max_evaluations) {
    bool improved = false;
    for (std::size_t i = 0; i < 4 && evaluations < options.max_evaluations; ++i) {
      if (step[i] <= 0.0) continue;
      for (double dir : {+1.0, -1.0}) {
        DesignPoint y = x;
        double& yi = *coords(y)[i];
        yi = std::clamp(yi + dir * step[i], bounds[i]->lower, bounds[i]->upper);
        if (yi == *coords(x)[i]) continue;
        if (!feasible(y, p).feasible) continue;
        const double fy = objective(y, p);
        ++evaluations;
        if (fy > fx) {
          x = y;
          fx = fy;
          improved = true;
          break;
        }
      }
    }
    if (!improved) {
      for (auto& h : step) h *= 0.5;
    }
  }
  return {x, fx, evaluations};
}

std::optional<DesignPoint> draw_start(Rng& rng, int turns, const OptimizationProblem& p,
                                      std::size_t max_draws) {
  for (std::size_t k = 0; k < max_draws; ++k) {
    DesignPoint x;
    x.outer1 = rng.uniform(p.outer1.lower, p.outer1.upper);
    x.outer2 = rng.uniform(p.outer2.lower, p.outer2.upper);
    x.width = rng.uniform(p.width.lower, p.width.upper);
    x.spacing = rng.uniform(p.spacing.lower, p.spacing.upper);
    x.turns = turns;
    if (feasible(x, p).feasible) return x;
  }
  return std::nullopt;
}

void finish(OptimizationResult& result, const OptimizationProblem& p) {
  if (!result.feasible_found) return;
  result.best = to_geometry(result.best_point, p);
  result.inductance = eval_full(*result.best, p.coefficients);
}

}  // namespace

OptimizationResult maximize(const OptimizationProblem& problem, const MultiStartOptions& options) {
  problem.check();
  if (options.restarts < 1) throw InputError("restart count must be at least 1");

  OptimizationResult result;
  auto run_from = [&](const DesignPoint& start) {
    const auto local = compass_search(start, problem, options);
    result.log.push_back({start, local.point, local.value, local.evaluations});
    ++result.restarts_run;
    if (!result.feasible_found ||
        better(local.value, local.point, result.inductance, result.best_point)) {
      result.feasible_found = true;
      result.best_point = local.point;
      result.inductance = local.value;
    }
  };

  for (const auto& start : options.extra_starts) {
    if (feasible(start, problem).feasible) run_from(start);
  }
  // One stream per turn count, consumed restart by restart, so a longer run
  // replays every start of a shorter one with the same seed.
  for (int turns : problem.turns_domain) {
    Rng rng(mix_seed(options.seed, static_cast<std::uint64_t>(turns)));
    for (std::size_t r = 0; r < options.restarts; ++r) {
      const auto start = draw_start(rng, turns, problem, options.max_start_draws);
      if (start) run_from(*start);
    }
  }

  finish(result, problem);
  return result;
}

namespace {

std::vector<double> grid_axis(const Bounds& b, double step) {
  std::vector<double> axis;
  if (b.width() == 0.0) return {b.lower};
  const double tol = 1e-9 * step;
  for (std::size_t k = 0;; ++k) {
    double v = b.lower + static_cast<double>(k) * step;
    if (v > b.upper + tol) break;
    if (std::abs(v - b.upper) <= tol) v = b.upper;
    axis.push_back(v);
  }
  if (axis.back() < b.upper) axis.push_back(b.upper);
  return axis;
}

}  // namespace

OptimizationResult brute_force_max(const OptimizationProblem& problem,
                                   const GridResolution& resolution) {
  problem.check();
  for (double h : {resolution.outer1, resolution.outer2, resolution.width, resolution.spacing}) {
    if (!(h > 0.0)) throw InputError("grid resolution steps must be positive");
  }

  const auto a1 = grid_axis(problem.outer1, resolution.outer1);
  const auto a2 = grid_axis(problem.outer2, resolution.outer2);
  const auto aw = grid_axis(problem.width, resolution.width);
  const auto as = grid_axis(problem.spacing, resolution.spacing);
  auto turns = problem.turns_domain;
  std::sort(turns.begin(), turns.end());
  turns.erase(std::unique(turns.begin(), turns.end()), turns.end());

  OptimizationResult result;
  // Lexicographic scan with strict improvement keeps the smallest argmax.
  for (double d1 : a1) {
    for (double d2 : a2) {
      for (double w : aw) {
        for (double s : as) {
          for (int nt : turns) {
            const DesignPoint x{d1, d2, w, s, nt};
            if (!feasible(x, problem).feasible) continue;
            const double v = objective(x, problem);
            if (!result.feasible_found || v > result.inductance) {
              result.feasible_found = true;
              result.best_point = x;
              result.inductance = v;
            }
          }
        }
      }
    }
  }
  if (!result.feasible_found) throw InfeasibleProblem("no feasible point on the search grid");
  result.restarts_run = 0;
  finish(result, problem);
  return result;
}

}  // namespace planar
