#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "reccost/function_handle.hpp"

namespace reccost {

inline constexpr double kDefaultKappaStep = 0.25;
inline constexpr int kDefaultKappaLevels = 6;
inline constexpr double kDefaultConstTol = 1e-8;

/// q(s) = 2 (H_even(s) - 1) / s^2 with H_even(s) = (H(s) + H(-s)) / 2, so odd
/// components of H cancel.
double quad_ratio(const FunctionHandle& h, double step);

struct RatioSample {
  double step;
  double q;
};

/// Extrapolated log-curvature kappa = lim 2 (H(t) - 1) / t^2.
struct CurvatureEstimate {
  double kappa = 0.0;
  double uncertainty = 0.0;  ///< |change of the diagonal extrapolant at the last level|
  std::vector<RatioSample> ratio_table;  ///< steps h0 * 2^-k, k = 0..levels-1
  int levels = 0;                        ///< levels actually used
  int levels_requested = 0;
  /// Set when the table turned noise-dominated before the extrapolants had
  /// settled to round-off; kappa is then the best stable level.
  bool precision_warning = false;
};

/// Richardson extrapolation of q(h_k), h_k = h0 2^-k, assuming the even
/// expansion q(h) = kappa + c2 h^2 + c4 h^4 + ... Stops early (keeping the
/// previous level) once successive extrapolants stop shrinking.
CurvatureEstimate estimate_kappa(const FunctionHandle& h,
                                 double h0 = kDefaultKappaStep,
                                 int levels = kDefaultKappaLevels);

enum class Branch { zero, constant_one, cos, cosh };

std::string_view to_string(Branch branch) noexcept;

/// Value of the continuous d'Alembert solution `branch` with scale k at t.
double branch_value(Branch branch, double k, double t);

struct ClassifyOptions {
  double window_T = 2.0;
  double const_tol = kDefaultConstTol;
  /// Residual grid spacing; 0 means window_T / 100.
  double residual_grid_step = 0.0;
  /// Largest residual still accepted as a branch member; unset means
  /// 1e-6 * cosh(window_T).
  std::optional<double> acceptance_threshold;
};

struct BranchClassification {
  Branch branch = Branch::zero;
  std::optional<double> k;  ///< absent for zero and constant_one
  double residual = 0.0;    ///< sup |H - branch| on the window grid
  double kappa_used = 0.0;  ///< +-k^2 after refinement, 0 for constant branches
  double threshold = 0.0;
  std::optional<CurvatureEstimate> curvature;
};

/// Assigns `h` to the zero, constant-one, cos(kt) or cosh(kt) solution.
///
/// The branch is chosen from H(0) and the sign of the extrapolated kappa; k
/// starts at sqrt(|kappa|) and is refined by Gauss-Newton least squares over
/// the window grid. Throws ClassificationError if the sup residual exceeds
/// the acceptance threshold, PreconditionError if H(0) is neither ~0 nor ~1.
BranchClassification classify(const FunctionHandle& h,
                              const ClassifyOptions& options = {});

}  // namespace reccost
