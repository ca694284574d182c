#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "reccost/calibration.hpp"
#include "reccost/dalembert.hpp"
#include "reccost/function_handle.hpp"

namespace reccost {

/// Tolerance on the hypotheses "H even" and "H(0) = 1".
inline constexpr double kHypothesisTol = 1e-6;
/// |a - 1| below which ratio certificates use the delta * J(x) form.
inline constexpr double kUnitCurvatureTol = 1e-10;

struct Bounds {
  double B = 0.0;  ///< sup |H| on [-T, T]
  double K = 0.0;  ///< sup |H'''| on [-T, T]
  bool K_estimated = false;  ///< third differences instead of analytic H'''
  double fd_step = 0.0;      ///< difference spacing when K_estimated
  std::vector<std::string> warnings;
};

/// Grid suprema of |H| and |H'''| on [-T, T]. Handles without analytic third
/// derivatives fall back to third central differences with spacing
/// 4 * (largest node gap).
Bounds estimate_bounds(const FunctionHandle& h, double T);

/// delta(h) = eps / h^2 + (1 + B) K h / 3.
double delta_of_h(double epsilon, double B, double K, double h);

/// Minimizer of delta on (0, T]: (6 eps / ((1 + B) K))^(1/3) clamped to T.
/// eps = 0 gives T / 100; (1 + B) K = 0 with eps > 0 gives T.
double optimal_h(double epsilon, double B, double K, double T);

struct StabilityInputs {
  double T = 0.0;
  double h = 0.0;
  double epsilon = 0.0;
  double B = 0.0;
  double K = 0.0;
  double a = 0.0;
};

/// t -> (delta / a)(cosh(sqrt(a) |t|) - 1).
struct Envelope {
  double delta = 0.0;
  double a = 1.0;
  double operator()(double t) const;
};

struct SweepSample {
  double t;
  double value;     ///< H(t), or F(x) in ratio form
  double branch;    ///< cosh(sqrt(a) t), or cosh(sqrt(a) ln x) - 1
  double envelope;
  double error;     ///< |value - branch|
};

struct StabilityCertificate {
  StabilityInputs inputs;
  double delta = 0.0;
  Envelope envelope;
  double max_observed_error = 0.0;
  /// min over the sweep of envelope - |error|; named for the report schema.
  double max_envelope_margin = 0.0;
  double worst_margin_t = 0.0;
  double sweep_limit = 0.0;  ///< the sweep covers |t| <= T - h
  bool verified = false;

  bool ratio_form = false;
  /// Ratio certificate with |a - 1| <= kUnitCurvatureTol, checked as
  /// |F(x) - J(x)| <= delta J(x).
  bool unit_curvature_form = false;
  bool a_estimated = true;
  bool K_estimated = false;
  bool h_optimized = true;
  DefectReport defect;
  std::optional<CurvatureEstimate> curvature;
  std::vector<SweepSample> sweep;
  std::vector<std::string> diagnostics;
};

struct CertifyOptions {
  std::optional<double> h_choice;  ///< unset: optimal_h
  std::optional<double> a_override;  ///< unset: estimate_kappa
};

/// Checks |H(t) - cosh(sqrt(a) t)| <= (delta(h)/a)(cosh(sqrt(a)|t|) - 1) on the
/// grid |t| <= T - h, with eps, B, K and a measured from the handle.
///
/// Throws PreconditionError when H is not even or H(0) != 1 (tolerance
/// kHypothesisTol) or when a <= 0. Requires H evaluable on [-2T, 2T].
StabilityCertificate certify(const FunctionHandle& h, double T, double step,
                             const CertifyOptions& options = {});

/// Ratio-domain form over x in (e^-(T-h), e^(T-h)) for F = H(ln x) - 1.
StabilityCertificate certify_ratio(const FunctionHandle& f, double T, double step,
                                   const CertifyOptions& options = {});

}  // namespace reccost
