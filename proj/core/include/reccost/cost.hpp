#pragma once

namespace reccost {

/// Largest |t| accepted in log coordinates; cosh(t) overflows past ~710.
inline constexpr double kMaxLogCoordinate = 700.0;

/// A strictly positive, finite ratio x.
class PositiveRatio {
 public:
  /// Throws DomainError for x <= 0 or non-finite x.
  explicit PositiveRatio(double x);
  double value() const noexcept { return x_; }

 private:
  double x_;
};

/// A finite log coordinate t = ln x.
class LogCoord {
 public:
  /// Throws DomainError for non-finite t.
  explicit LogCoord(double t);
  static LogCoord of(PositiveRatio x);
  double value() const noexcept { return t_; }

 private:
  double t_;
};

/// A nonnegative cost.
class CostValue {
 public:
  /// Throws DomainError for negative or NaN values.
  explicit CostValue(double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// J(x) = (x - 1)^2 / (2x), the cancellation-free form of (x + 1/x)/2 - 1.
CostValue canonical_cost(PositiveRatio x);

struct LogForms {
  double G;  ///< J(e^t) = cosh t - 1
  double H;  ///< G + 1 = cosh t
};

/// OverflowError for |t| > kMaxLogCoordinate.
LogForms log_forms(LogCoord t);

struct AmGm {
  double am;  ///< (x + 1/x) / 2
  double gm;  ///< sqrt(x * 1/x) = 1
  CostValue diff;
};

AmGm am_gm_decomposition(PositiveRatio x);

/// D_Phi(t, 0) for the generator Phi = cosh. Coincides with log_forms(t).G.
double bregman_divergence(LogCoord t);

struct GoldenResult {
  double phi;
  int iterations;
  double cost_at_phi;
};

/// Plain fixed-point iteration of x -> 1 + 1/x from x0 until successive
/// iterates differ by at most `tol`. ConvergenceError after `max_iter` steps.
GoldenResult golden_fixed_point(PositiveRatio x0, double tol, int max_iter);

}  // namespace reccost
