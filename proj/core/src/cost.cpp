#include "reccost/cost.hpp"

#include <cmath>
#include <sstream>

#include "reccost/errors.hpp"

namespace reccost {

PositiveRatio::PositiveRatio(double x) : x_(x) {
  if (!std::isfinite(x) || !(x > 0.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "ratio must be positive and finite, got " << x;
    throw DomainError(os.str());
  }
}

LogCoord::LogCoord(double t) : t_(t) {
  if (!std::isfinite(t)) throw DomainError("log coordinate must be finite");
}

LogCoord LogCoord::of(PositiveRatio x) { return LogCoord(std::log(x.value())); }

CostValue::CostValue(double value) : value_(value) {
  if (!(value >= 0.0)) throw DomainError("cost must be nonnegative");
}

CostValue canonical_cost(PositiveRatio x) {
  const double v = x.value();
  const double d = v - 1.0;
  // d * (d / 2v) rather than d^2 / 2v keeps d^2 from overflowing first.
  const double j = d * (d / (2.0 * v));
  if (!std::isfinite(j)) {
    std::ostringstream os;
    os.precision(17);
    os << "canonical cost overflows at x = " << v;
    throw OverflowError(os.str());
  }
  return CostValue(j);
}

namespace {

void check_log_range(double t) {
  if (std::abs(t) > kMaxLogCoordinate) {
    std::ostringstream os;
    os.precision(17);
    os << "|t| = " << std::abs(t) << " exceeds " << kMaxLogCoordinate
       << "; cosh(t) is not representable";
    throw OverflowError(os.str());
  }
}

// cosh(t) - 1 without cancellation near t = 0.
double cosh_minus_one(double t) {
  const double s = std::sinh(0.5 * t);
  return 2.0 * s * s;
}

}  // namespace

LogForms log_forms(LogCoord t) {
  check_log_range(t.value());
  return {cosh_minus_one(t.value()), std::cosh(t.value())};
}

AmGm am_gm_decomposition(PositiveRatio x) {
  const double v = x.value();
  const double am = 0.5 * (v + 1.0 / v);
  if (!std::isfinite(am)) throw OverflowError("arithmetic mean overflows");
  return {am, 1.0, canonical_cost(x)};
}

double bregman_divergence(LogCoord t) {
  check_log_range(t.value());
  // Phi(t) - Phi(0) - Phi'(0) t, with Phi(t) - Phi(0) taken in the stable form.
  const double slope_at_origin = std::sinh(0.0);
  return cosh_minus_one(t.value()) - slope_at_origin * t.value();
}

GoldenResult golden_fixed_point(PositiveRatio x0, double tol, int max_iter) {
  if (!(tol > 0.0)) throw ParameterError("golden: tol must be positive");
  if (max_iter < 1) throw ParameterError("golden: max_iter must be >= 1");
  double x = x0.value();
  for (int n = 1; n <= max_iter; ++n) {
    const double next = 1.0 + 1.0 / x;
    if (std::abs(next - x) <= tol) {
      return {next, n, canonical_cost(PositiveRatio(next)).value()};
    }
    x = next;
  }
  std::ostringstream os;
  os.precision(3);
  os << "golden: no convergence to tol " << tol << " within " << max_iter
     << " iterations";
  throw ConvergenceError(os.str());
}

}  // namespace reccost
