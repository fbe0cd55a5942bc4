#pragma once

#include <stdexcept>
#include <string>

namespace planar {

/// Base of every error raised by the library. The CLI maps each subclass to
/// a distinct exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested dimensions cannot be realized (inner side ≤ 0, nonpositive
/// lengths, turn/layer counts below one).
class InfeasibleGeometry : public Error {
 public:
  using Error::Error;
};

/// Outer sides are not in canonical order (D1 > D2).
class OrientationError : public Error {
 public:
  using Error::Error;
};

/// Layer gap missing for a multilayer winding.
class IncompleteGeometry : public Error {
 public:
  using Error::Error;
};

/// Malformed file content or invalid argument values. Carries the source
/// location when one exists.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(what) {}
  InputError(const std::string& file, std::size_t line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_ = 0;
};

/// The optimization problem admits no feasible point.
class InfeasibleProblem : public Error {
 public:
  using Error::Error;
};

/// Least-squares design matrix does not have full column rank.
class RankDeficiency : public Error {
 public:
  using Error::Error;
};

}  // namespace planar
