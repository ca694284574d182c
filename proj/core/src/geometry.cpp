#include "reccost/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "reccost/errors.hpp"

namespace reccost {

namespace {

double sqrt_cosh(double t) {
  const double a = std::abs(t);
  if (a <= 700.0) return std::sqrt(std::cosh(a));
  return std::exp(0.5 * a) * std::sqrt(0.5 * (1.0 + std::exp(-2.0 * a)));
}

// Panels accepted before this depth can agree by accident on wide intervals.
constexpr int kMinDepth = 4;

struct Segment {
  double a, b;
  double fa, fm, fb;
  double whole;
  double tol;
  int depth;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

}  // namespace

double metric_weight(LogCoord t) {
  if (std::abs(t.value()) > kMaxMetricLogCoordinate) {
    throw OverflowError("metric_weight: |t| exceeds 1400");
  }
  return sqrt_cosh(t.value());
}

double metric_weight_ratio(PositiveRatio x) {
  const double v = x.value();
  if (std::abs(std::log(v)) > kMaxMetricLogCoordinate) {
    throw OverflowError("metric_weight_ratio: |ln x| exceeds 1400");
  }
  const double w = v >= 1.0 ? std::sqrt((1.0 + 1.0 / (v * v)) / (2.0 * v))
                            : std::sqrt((v * v + 1.0) / (2.0 * v * v * v));
  if (!std::isfinite(w)) throw OverflowError("metric_weight_ratio overflows");
  return w;
}

DistanceResult log_distance(LogCoord from, LogCoord to, double tol,
                            std::size_t budget) {
  if (!(tol > 0.0)) throw ParameterError("distance: tol must be positive");
  if (std::abs(from.value()) > kMaxMetricLogCoordinate ||
      std::abs(to.value()) > kMaxMetricLogCoordinate) {
    throw OverflowError("distance: endpoint beyond |t| = 1400");
  }
  DistanceResult out;
  out.t_from = from.value();
  out.t_to = to.value();
  // Integrate left to right so d(x, y) and d(y, x) agree bit for bit.
  const double a = std::min(from.value(), to.value());
  const double b = std::max(from.value(), to.value());
  if (a == b) return out;

  const double fa = sqrt_cosh(a);
  const double fb = sqrt_cosh(b);
  const double fm = sqrt_cosh(0.5 * (a + b));
  out.evaluations = 3;
  std::vector<Segment> stack;
  stack.push_back({a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, 0});

  double total = 0.0;
  double error = 0.0;
  while (!stack.empty()) {
    const Segment s = stack.back();
    stack.pop_back();
    const double m = 0.5 * (s.a + s.b);
    const double flm = sqrt_cosh(0.5 * (s.a + m));
    const double frm = sqrt_cosh(0.5 * (m + s.b));
    out.evaluations += 2;
    const double left = simpson(s.a, m, s.fa, flm, s.fm);
    const double right = simpson(m, s.b, s.fm, frm, s.fb);
    const double diff = left + right - s.whole;
    if ((s.depth >= kMinDepth && std::abs(diff) <= 15.0 * s.tol) || s.depth >= 50) {
      total += left + right + diff / 15.0;
      error += std::abs(diff) / 15.0;
      continue;
    }
    if (out.evaluations >= budget) {
      std::ostringstream os;
      os << "distance: tolerance " << tol << " not reached within " << budget
         << " evaluations";
      throw ConvergenceError(os.str());
    }
    stack.push_back({m, s.b, s.fm, frm, s.fb, right, 0.5 * s.tol, s.depth + 1});
    stack.push_back({s.a, m, s.fa, flm, s.fm, left, 0.5 * s.tol, s.depth + 1});
  }
  if (error > tol) {
    throw ConvergenceError("distance: refinement depth exhausted before tolerance");
  }
  out.value = total;
  out.abs_error_estimate = error;
  return out;
}

DistanceResult distance(PositiveRatio x, PositiveRatio y, double tol,
                        std::size_t budget) {
  return log_distance(LogCoord::of(x), LogCoord::of(y), tol, budget);
}

double local_equivalence_ratio(PositiveRatio x, PositiveRatio y, double rel_tol) {
  if (x.value() == y.value()) {
    throw DomainError("local_equivalence_ratio: x and y must differ");
  }
  const double span = std::abs(std::log(y.value()) - std::log(x.value()));
  return distance(x, y, rel_tol * span).value / span;
}

ChebyshevCheck chebyshev_cost(PositiveRatio x, int n) {
  if (n < 0) throw DomainError("chebyshev_cost: n must be nonnegative");
  const double log_x = std::log(x.value());
  if (static_cast<double>(n) * std::abs(log_x) > kMaxLogCoordinate) {
    throw OverflowError("chebyshev_cost: x^n beyond representable range");
  }
  ChebyshevCheck out;
  out.x = x.value();
  out.n = n;
  const double h1 = canonical_cost(x).value() + 1.0;
  out.via_identity = chebyshev_sequence(h1, std::max(n, 1))[static_cast<std::size_t>(n)] - 1.0;
  out.direct = canonical_cost(PositiveRatio(std::exp(static_cast<double>(n) * log_x))).value();
  out.rel_discrepancy = std::abs(out.via_identity - out.direct) / (1.0 + std::abs(out.direct));
  return out;
}

std::vector<double> chebyshev_sequence(double H1, int N) {
  if (N < 1) throw DomainError("chebyshev_sequence: N must be >= 1");
  if (!(H1 >= 1.0) || !std::isfinite(H1)) {
    throw DomainError("chebyshev_sequence: H1 must be >= 1 (cosh branch)");
  }
  std::vector<double> out(static_cast<std::size_t>(N) + 1);
  out[0] = 1.0;
  out[1] = H1;
  for (std::size_t n = 1; n < out.size() - 1; ++n) {
    out[n + 1] = 2.0 * H1 * out[n] - out[n - 1];
    if (!std::isfinite(out[n + 1])) {
      throw OverflowError("chebyshev_sequence: recursion overflows");
    }
  }
  return out;
}

}  // namespace reccost
