#pragma once

#include <cstddef>

#include "reccost/cost.hpp"
#include "reccost/function_handle.hpp"

namespace reccost {

/// H(t+u) + H(t-u) - 2 H(t) H(u) for a log-line handle.
double defect_log(const FunctionHandle& h, double t, double u);

/// F(xy) + F(x/y) - 2F(x)F(y) - 2F(x) - 2F(y) for a ratio-domain handle.
double defect_ratio(const FunctionHandle& f, PositiveRatio x, PositiveRatio y);

/// H(t) = F(e^t) + 1. Analytic derivatives of F carry over by the chain rule;
/// sample tables stay tables with nodes at ln x_i.
FunctionHandle lift_to_log(const FunctionHandle& f);

/// Returns `h` unchanged on the log line, lifts ratio-domain handles.
FunctionHandle as_log_line(const FunctionHandle& h);

/// Discretization a supremum was taken over: the square [-T, T]^2 sampled on
/// a uniform inclusive grid.
struct GridSpec {
  double half_width = 0.0;
  double requested_step = 0.0;
  double step = 0.0;  ///< effective spacing, divides 2T exactly
  std::size_t points_per_axis = 0;
};

struct DefectReport {
  double epsilon = 0.0;  ///< max |defect| over the grid
  double argmax_t = 0.0;
  double argmax_u = 0.0;
  GridSpec grid;
  std::size_t count = 0;  ///< number of (t, u) samples
};

/// Grid supremum of |defect_log| over [-T, T]^2. Requires h evaluable on
/// [-2T, 2T]. Ties keep the first maximizer in row-major (t, u) order.
DefectReport sup_defect(const FunctionHandle& h, double T, double step);

/// Grid suprema of the absolute violation of identities every normalized
/// d'Alembert solution satisfies.
struct IdentityViolations {
  double product_identity = 0.0;   ///< H(t+u)H(t-u) = H(t)^2 + H(u)^2 - 1
  double difference_square = 0.0;  ///< (H(t+u)-H(t-u))^2 = 4(H(t)^2-1)(H(u)^2-1)
  double double_angle = 0.0;       ///< H(2t) = 2H(t)^2 - 1
  double evenness = 0.0;           ///< H(-t) = H(t)
  GridSpec grid;
};

IdentityViolations identity_report(const FunctionHandle& h, double T, double step);

/// sup over the grid on [-T, T] of |D(t) - a H(t)|, D the central second
/// difference with spacing fd_h. Small exactly when H'' = a H.
double ode_residual(const FunctionHandle& h, double a, double T, double step,
                    double fd_h);

}  // namespace reccost
