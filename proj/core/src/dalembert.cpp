#include "reccost/dalembert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "reccost/errors.hpp"
#include "reccost/grid.hpp"

namespace reccost {

namespace {

void require_log_line(const FunctionHandle& h, const char* op) {
  if (h.domain() != Domain::log_line) {
    throw ParameterError(std::string(op) + ": handle must live on the log line");
  }
}

GridSpec spec_of(const SymmetricGrid& grid) {
  return {grid.half_width(), grid.requested_step(), grid.step(), grid.size()};
}

std::vector<double> sample(const FunctionHandle& h, const std::vector<double>& ts) {
  std::vector<double> values(ts.size());
  std::transform(ts.begin(), ts.end(), values.begin(),
                 [&h](double t) { return h(t); });
  return values;
}

}  // namespace

double defect_log(const FunctionHandle& h, double t, double u) {
  require_log_line(h, "defect_log");
  return h(t + u) + h(t - u) - 2.0 * h(t) * h(u);
}

double defect_ratio(const FunctionHandle& f, PositiveRatio x, PositiveRatio y) {
  if (f.domain() != Domain::positive_ratios) {
    throw ParameterError("defect_ratio: handle must live on positive ratios");
  }
  const double fx = f(x.value());
  const double fy = f(y.value());
  return f(x.value() * y.value()) + f(x.value() / y.value()) -
         2.0 * fx * fy - 2.0 * fx - 2.0 * fy;
}

FunctionHandle lift_to_log(const FunctionHandle& f) {
  if (f.domain() != Domain::positive_ratios) {
    throw ParameterError("lift_to_log: handle must live on positive ratios");
  }
  const double inf = std::numeric_limits<double>::infinity();
  const double lower = f.lower() > 0.0 ? std::log(f.lower()) : -inf;
  const double upper = std::isfinite(f.upper()) ? std::log(f.upper()) : inf;
  std::vector<double> nodes;
  nodes.reserve(f.nodes().size());
  for (double x : f.nodes()) nodes.push_back(std::log(x));
  const double xlo = f.lower();
  const double xhi = f.upper();
  return FunctionHandle::composed(
      "lift(" + f.name() + ")", Domain::log_line, f.kind(),
      [f, xlo, xhi](double t, int order) {
        // exp(ln x0) may round below x0; stay inside the source range.
        double x = std::exp(t);
        if (x < xlo) x = std::nextafter(xlo, xhi);
        if (x > xhi) x = xhi;
        const double f1 = order >= 1 ? x * f.derivative(x, 1) : 0.0;
        switch (order) {
          case 0: return f(x) + 1.0;
          case 1: return f1;
          case 2: return f1 + x * x * f.derivative(x, 2);
          default:
            return f1 + 3.0 * x * x * f.derivative(x, 2) +
                   x * x * x * f.derivative(x, 3);
        }
      },
      f.derivative_capability(), lower, upper, std::move(nodes),
      std::vector<Parameter>(f.params().begin(), f.params().end()));
}

FunctionHandle as_log_line(const FunctionHandle& h) {
  return h.domain() == Domain::log_line ? h : lift_to_log(h);
}

DefectReport sup_defect(const FunctionHandle& h, double T, double step) {
  require_log_line(h, "sup_defect");
  const SymmetricGrid grid(T, step);
  h.require_evaluable(-2.0 * T, 2.0 * T);
  const auto& ts = grid.points();
  const auto values = sample(h, ts);

  DefectReport report;
  report.grid = spec_of(grid);
  report.count = ts.size() * ts.size();
  report.argmax_t = ts.front();
  report.argmax_u = ts.front();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (std::size_t j = 0; j < ts.size(); ++j) {
      const double t = ts[i];
      const double u = ts[j];
      const double d =
          std::abs(h(t + u) + h(t - u) - 2.0 * values[i] * values[j]);
      if (d > report.epsilon) {
        report.epsilon = d;
        report.argmax_t = t;
        report.argmax_u = u;
      }
    }
  }
  return report;
}

IdentityViolations identity_report(const FunctionHandle& h, double T, double step) {
  require_log_line(h, "identity_report");
  const SymmetricGrid grid(T, step);
  h.require_evaluable(-2.0 * T, 2.0 * T);
  const auto& ts = grid.points();
  const auto values = sample(h, ts);
  const std::size_t n = ts.size();

  IdentityViolations out;
  out.grid = spec_of(grid);
  for (std::size_t i = 0; i < n; ++i) {
    const double ht = values[i];
    out.evenness = std::max(out.evenness, std::abs(ht - values[n - 1 - i]));
    out.double_angle =
        std::max(out.double_angle, std::abs(h(2.0 * ts[i]) - (2.0 * ht * ht - 1.0)));
    for (std::size_t j = 0; j < n; ++j) {
      const double hu = values[j];
      const double plus = h(ts[i] + ts[j]);
      const double minus = h(ts[i] - ts[j]);
      out.product_identity = std::max(
          out.product_identity, std::abs(plus * minus - (ht * ht + hu * hu - 1.0)));
      const double diff = plus - minus;
      out.difference_square =
          std::max(out.difference_square,
                   std::abs(diff * diff - 4.0 * (ht * ht - 1.0) * (hu * hu - 1.0)));
    }
  }
  return out;
}

double ode_residual(const FunctionHandle& h, double a, double T, double step,
                    double fd_h) {
  require_log_line(h, "ode_residual");
  if (!(fd_h > 0.0)) throw ParameterError("ode_residual: fd_h must be positive");
  const SymmetricGrid grid(T, step);
  h.require_evaluable(-T - fd_h, T + fd_h);
  double worst = 0.0;
  for (double t : grid.points()) {
    const double center = h(t);
    const double second =
        (h(t + fd_h) - 2.0 * center + h(t - fd_h)) / (fd_h * fd_h);
    worst = std::max(worst, std::abs(second - a * center));
  }
  return worst;
}

}  // namespace reccost
