#pragma once

#include <cstddef>
#include <vector>

#include "reccost/cost.hpp"

namespace reccost {

/// Largest |t| for which sqrt(cosh t) is representable.
inline constexpr double kMaxMetricLogCoordinate = 1400.0;
inline constexpr std::size_t kDefaultEvalBudget = 1'000'000;

/// Line element of the Hessian metric of Phi = cosh: ds = sqrt(cosh t) dt.
double metric_weight(LogCoord t);
/// Same metric in x: ds = sqrt((x^2 + 1) / (2 x^3)) dx.
double metric_weight_ratio(PositiveRatio x);

struct DistanceResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  double t_from = 0.0;
  double t_to = 0.0;
  std::size_t evaluations = 0;
};

/// |integral of sqrt(cosh u) over [t_from, t_to]| by adaptive Simpson.
/// ConvergenceError if `budget` integrand evaluations do not reach `tol`.
DistanceResult log_distance(LogCoord from, LogCoord to, double tol,
                            std::size_t budget = kDefaultEvalBudget);

/// d_J(x, y), the Riemannian distance between two ratios.
DistanceResult distance(PositiveRatio x, PositiveRatio y, double tol,
                        std::size_t budget = kDefaultEvalBudget);

/// d_J(x, y) / |ln y - ln x|. DomainError for x == y. The quadrature
/// tolerance is taken relative to |ln y - ln x|.
double local_equivalence_ratio(PositiveRatio x, PositiveRatio y,
                               double rel_tol = 1e-12);

struct ChebyshevCheck {
  double x = 1.0;
  int n = 0;
  double via_identity = 0.0;  ///< T_n(J(x) + 1) - 1 by three-term recursion
  double direct = 0.0;        ///< J(x^n), x^n = exp(n ln x)
  double rel_discrepancy = 0.0;
};

ChebyshevCheck chebyshev_cost(PositiveRatio x, int n);

/// (H_0, ..., H_N) from H_0 = 1, H_{n+1} = 2 H_1 H_n - H_{n-1}.
/// DomainError for H1 < 1: the oscillating branch is not a cost.
std::vector<double> chebyshev_sequence(double H1, int N);

}  // namespace reccost
