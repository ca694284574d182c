#include "reccost/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "reccost/errors.hpp"
#include "reccost/grid.hpp"

namespace reccost {

namespace {

constexpr std::size_t kBoundsIntervals = 2000;

double third_difference(const FunctionHandle& h, double c, double s) {
  return (h(c + 2.0 * s) - 2.0 * h(c + s) + 2.0 * h(c - s) - h(c - 2.0 * s)) /
         (2.0 * s * s * s);
}

// cosh(x) - 1 without cancellation.
double cosh_minus_one(double x) {
  const double s = std::sinh(0.5 * x);
  return 2.0 * s * s;
}

}  // namespace

Bounds estimate_bounds(const FunctionHandle& h, double T) {
  if (h.domain() != Domain::log_line) {
    throw ParameterError("estimate_bounds: handle must live on the log line");
  }
  if (!(T > 0.0)) throw ParameterError("estimate_bounds: T must be positive");
  h.require_evaluable(-T, T);
  const SymmetricGrid grid(T, 2.0 * T / kBoundsIntervals);

  Bounds out;
  for (double t : grid.points()) out.B = std::max(out.B, std::abs(h(t)));

  if (h.derivative_capability() >= 3) {
    for (double t : grid.points()) {
      out.K = std::max(out.K, std::abs(h.derivative(t, 3)));
    }
    return out;
  }

  out.K_estimated = true;
  const double gap = h.max_node_spacing();
  const double s = gap > 0.0 ? 4.0 * gap : T / 100.0;
  out.fd_step = s;
  const double lo = h.lower() + 2.0 * s;
  const double hi = h.upper() - 2.0 * s;
  if (lo > hi) {
    throw DomainError("estimate_bounds: sample range too short for third differences");
  }
  if (s > 0.25 * T) {
    out.warnings.emplace_back(
        "ill-conditioned: difference spacing exceeds T/4, K is unreliable");
  }
  bool clamped = false;
  for (double t : grid.points()) {
    const double c = std::clamp(t, lo, hi);
    clamped = clamped || c != t;
    out.K = std::max(out.K, std::abs(third_difference(h, c, s)));
  }
  out.warnings.emplace_back("K estimated from third central differences");
  if (clamped) {
    out.warnings.emplace_back(
        "difference stencil shifted inward near the window edge");
  }
  return out;
}

double delta_of_h(double epsilon, double B, double K, double h) {
  if (!(h > 0.0)) throw DomainError("delta_of_h: h must be positive");
  if (epsilon < 0.0 || B < 0.0 || K < 0.0) {
    throw DomainError("delta_of_h: epsilon, B, K must be nonnegative");
  }
  return epsilon / (h * h) + (1.0 + B) * K * h / 3.0;
}

double optimal_h(double epsilon, double B, double K, double T) {
  if (!(T > 0.0)) throw DomainError("optimal_h: T must be positive");
  if (epsilon < 0.0 || B < 0.0 || K < 0.0) {
    throw DomainError("optimal_h: epsilon, B, K must be nonnegative");
  }
  if (epsilon == 0.0) return T / 100.0;
  const double slope = (1.0 + B) * K;
  if (slope == 0.0) return T;
  return std::min(T, std::cbrt(6.0 * epsilon / slope));
}

double Envelope::operator()(double t) const {
  return delta / a * cosh_minus_one(std::sqrt(a) * std::abs(t));
}

namespace {

void check_hypotheses(const FunctionHandle& h, const SymmetricGrid& grid) {
  const double at_origin = h(0.0);
  if (std::abs(at_origin - 1.0) > kHypothesisTol) {
    std::ostringstream os;
    os.precision(17);
    os << "certify: H(0) = " << at_origin << " differs from 1";
    throw PreconditionError(os.str());
  }
  const auto& ts = grid.points();
  const std::size_t n = ts.size();
  for (std::size_t i = 0; i < n / 2; ++i) {
    const double left = h(ts[i]);
    const double right = h(ts[n - 1 - i]);
    const double scale = std::max({1.0, std::abs(left), std::abs(right)});
    if (std::abs(left - right) > kHypothesisTol * scale) {
      std::ostringstream os;
      os.precision(17);
      os << "certify: H is not even at t = " << ts[n - 1 - i]
         << " (|H(t) - H(-t)| = " << std::abs(left - right) << ")";
      throw PreconditionError(os.str());
    }
  }
}

StabilityCertificate assemble(const FunctionHandle& H, double T, double step,
                              const CertifyOptions& options,
                              const FunctionHandle* ratio_source) {
  if (!(T > 0.0)) throw ParameterError("certify: T must be positive");
  const SymmetricGrid grid(T, step);
  H.require_evaluable(-2.0 * T, 2.0 * T);
  check_hypotheses(H, grid);

  StabilityCertificate cert;
  double a = 0.0;
  if (options.a_override) {
    a = *options.a_override;
    cert.a_estimated = false;
  } else {
    cert.curvature = estimate_kappa(H, std::min(kDefaultKappaStep, T));
    a = cert.curvature->kappa;
    if (cert.curvature->precision_warning) {
      cert.diagnostics.emplace_back("curvature estimate is noise-limited");
    }
  }
  if (!(a > 0.0) || !std::isfinite(a)) {
    std::ostringstream os;
    os.precision(17);
    os << "certify: curvature a = " << a << " is not positive";
    throw PreconditionError(os.str());
  }

  cert.defect = sup_defect(H, T, step);
  const Bounds bounds = estimate_bounds(H, T);
  cert.K_estimated = bounds.K_estimated;
  cert.diagnostics.insert(cert.diagnostics.end(), bounds.warnings.begin(),
                          bounds.warnings.end());

  double h = 0.0;
  if (options.h_choice) {
    h = *options.h_choice;
    cert.h_optimized = false;
    if (!(h > 0.0) || h > T) throw ParameterError("certify: h must lie in (0, T]");
  } else {
    h = optimal_h(cert.defect.epsilon, bounds.B, bounds.K, T);
  }

  cert.inputs = {T, h, cert.defect.epsilon, bounds.B, bounds.K, a};
  cert.delta = delta_of_h(cert.defect.epsilon, bounds.B, bounds.K, h);
  cert.envelope = {cert.delta, a};
  cert.sweep_limit = T - h;
  cert.ratio_form = ratio_source != nullptr;
  cert.unit_curvature_form =
      cert.ratio_form && std::abs(a - 1.0) <= kUnitCurvatureTol;

  std::vector<double> sweep_points;
  const double slack = 1e-12 * T;
  for (double t : grid.points()) {
    if (std::abs(t) <= cert.sweep_limit + slack) sweep_points.push_back(t);
  }
  if (std::find(sweep_points.begin(), sweep_points.end(), 0.0) ==
      sweep_points.end()) {
    sweep_points.insert(
        std::upper_bound(sweep_points.begin(), sweep_points.end(), 0.0), 0.0);
  }

  if (sweep_points.size() <= 1) {
    cert.diagnostics.emplace_back(
        "sweep degenerates to t = 0: h is too close to T for a useful bound");
  }

  const double root_a = std::sqrt(a);
  cert.max_envelope_margin = std::numeric_limits<double>::infinity();
  cert.sweep.reserve(sweep_points.size());
  for (double t : sweep_points) {
    SweepSample s{};
    s.t = t;
    if (ratio_source == nullptr) {
      s.value = H(t);
      s.branch = std::cosh(root_a * t);
      s.envelope = cert.envelope(t);
    } else {
      const double x = std::exp(t);
      const double log_x = std::log(x);
      s.value = (*ratio_source)(x);
      if (cert.unit_curvature_form) {
        const double j = cosh_minus_one(log_x);
        s.branch = j;
        s.envelope = cert.delta * j;
      } else {
        s.branch = cosh_minus_one(root_a * log_x);
        s.envelope = cert.envelope(log_x);
      }
    }
    s.error = std::abs(s.value - s.branch);
    const double margin = s.envelope - s.error;
    cert.max_observed_error = std::max(cert.max_observed_error, s.error);
    if (margin < cert.max_envelope_margin) {
      cert.max_envelope_margin = margin;
      cert.worst_margin_t = t;
    }
    cert.sweep.push_back(s);
  }
  cert.verified = cert.max_envelope_margin >= 0.0;
  return cert;
}

}  // namespace

StabilityCertificate certify(const FunctionHandle& h, double T, double step,
                             const CertifyOptions& options) {
  if (h.domain() != Domain::log_line) {
    throw ParameterError("certify: handle must live on the log line");
  }
  return assemble(h, T, step, options, nullptr);
}

StabilityCertificate certify_ratio(const FunctionHandle& f, double T, double step,
                                   const CertifyOptions& options) {
  if (f.domain() != Domain::positive_ratios) {
    throw ParameterError("certify_ratio: handle must live on positive ratios");
  }
  return assemble(lift_to_log(f), T, step, options, &f);
}

}  // namespace reccost
