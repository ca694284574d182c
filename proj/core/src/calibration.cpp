#include "reccost/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "reccost/errors.hpp"
#include "reccost/grid.hpp"

namespace reccost {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_log_line(const FunctionHandle& h, const char* op) {
  if (h.domain() != Domain::log_line) {
    throw ParameterError(std::string(op) + ": handle must live on the log line");
  }
}

// Round-off level of q at step s.
double ratio_noise(const FunctionHandle& h, double s) {
  return 8.0 * kEps * std::max(1.0, std::abs(h(s))) / (s * s);
}

}  // namespace

double quad_ratio(const FunctionHandle& h, double step) {
  require_log_line(h, "quad_ratio");
  if (step == 0.0 || !std::isfinite(step)) {
    throw ParameterError("quad_ratio: step must be finite and nonzero");
  }
  // H(+-s) - 1 is exact for H(+-s) in [1/2, 2], so subtract before summing.
  const double even_excess = (h(step) - 1.0) + (h(-step) - 1.0);
  return even_excess / (step * step);
}

CurvatureEstimate estimate_kappa(const FunctionHandle& h, double h0, int levels) {
  require_log_line(h, "estimate_kappa");
  if (!(h0 > 0.0)) throw ParameterError("estimate_kappa: h0 must be positive");
  if (levels < 2) throw ParameterError("estimate_kappa: need at least 2 levels");
  h.require_evaluable(-h0, h0);

  CurvatureEstimate est;
  est.levels_requested = levels;
  std::vector<std::vector<double>> tableau;
  double previous_change = std::numeric_limits<double>::infinity();
  double previous_noise = 0.0;

  for (int k = 0; k < levels; ++k) {
    const double s = std::ldexp(h0, -k);
    const double q = quad_ratio(h, s);
    std::vector<double> row{q};
    double factor = 1.0;
    for (int j = 1; j <= k; ++j) {
      factor *= 4.0;
      const double above = tableau[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j - 1)];
      row.push_back(row.back() + (row.back() - above) / (factor - 1.0));
    }
    if (k >= 1) {
      const double change = std::abs(row.back() - tableau.back().back());
      if (k >= 2 && change > previous_change) {
        // Noise took over; keep level k-1.
        est.precision_warning = previous_change > previous_noise;
        break;
      }
      est.uncertainty = change;
      previous_change = change;
    }
    previous_noise = ratio_noise(h, s);
    est.ratio_table.push_back({s, q});
    tableau.push_back(std::move(row));
  }
  est.levels = static_cast<int>(tableau.size());
  est.kappa = tableau.back().back();
  return est;
}

std::string_view to_string(Branch branch) noexcept {
  switch (branch) {
    case Branch::zero: return "zero";
    case Branch::constant_one: return "constant-one";
    case Branch::cos: return "cos";
    case Branch::cosh: return "cosh";
  }
  return "unknown";
}

double branch_value(Branch branch, double k, double t) {
  switch (branch) {
    case Branch::zero: return 0.0;
    case Branch::constant_one: return 1.0;
    case Branch::cos: return std::cos(k * t);
    case Branch::cosh: return std::cosh(k * t);
  }
  return 0.0;
}

namespace {

double sup_residual(const std::vector<double>& ts, const std::vector<double>& hs,
                    Branch branch, double k) {
  double worst = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    worst = std::max(worst, std::abs(hs[i] - branch_value(branch, k, ts[i])));
  }
  return worst;
}

double sum_squares(const std::vector<double>& ts, const std::vector<double>& hs,
                   Branch branch, double k) {
  double total = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double r = hs[i] - branch_value(branch, k, ts[i]);
    total += r * r;
  }
  return total;
}

// Damped Gauss-Newton on k for the model cos(kt) / cosh(kt).
double refine_scale(const std::vector<double>& ts, const std::vector<double>& hs,
                    Branch branch, double k) {
  double cost = sum_squares(ts, hs, branch, k);
  for (int iter = 0; iter < 100; ++iter) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double t = ts[i];
      const double r = hs[i] - branch_value(branch, k, t);
      const double dk = branch == Branch::cosh ? t * std::sinh(k * t)
                                               : -t * std::sin(k * t);
      num += r * dk;
      den += dk * dk;
    }
    if (!(den > 0.0)) break;
    double step = num / den;
    bool improved = false;
    for (int halving = 0; halving < 40; ++halving) {
      const double trial = k + step;
      if (trial > 0.0) {
        const double trial_cost = sum_squares(ts, hs, branch, trial);
        if (trial_cost <= cost) {
          k = trial;
          cost = trial_cost;
          improved = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!improved || std::abs(step) <= 4.0 * kEps * k) break;
  }
  return k;
}

[[noreturn]] void reject(const char* why, Branch nearest, double k,
                         double residual, double threshold) {
  std::ostringstream os;
  os.precision(17);
  os << "not near any branch: " << why << " (nearest " << to_string(nearest)
     << ", k = " << k << ", residual " << residual << " > threshold "
     << threshold << ")";
  throw ClassificationError(os.str(), std::string(to_string(nearest)), k,
                            residual, threshold);
}

}  // namespace

BranchClassification classify(const FunctionHandle& h, const ClassifyOptions& options) {
  require_log_line(h, "classify");
  const double T = options.window_T;
  if (!(T > 0.0)) throw ParameterError("classify: window_T must be positive");
  if (!(options.const_tol > 0.0)) {
    throw ParameterError("classify: const_tol must be positive");
  }
  const double grid_step =
      options.residual_grid_step > 0.0 ? options.residual_grid_step : T / 100.0;
  const SymmetricGrid grid(T, grid_step);
  h.require_evaluable(-T, T);

  BranchClassification out;
  out.threshold = options.acceptance_threshold.value_or(1e-6 * std::cosh(T));
  const auto& ts = grid.points();
  std::vector<double> hs(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) hs[i] = h(ts[i]);

  const double at_origin = h(0.0);
  if (std::abs(at_origin) <= options.const_tol) {
    out.branch = Branch::zero;
    out.residual = sup_residual(ts, hs, Branch::zero, 0.0);
    if (out.residual > options.const_tol) {
      reject("H(0) = 0 but H is not identically zero", Branch::zero, 0.0,
             out.residual, options.const_tol);
    }
    return out;
  }
  if (std::abs(at_origin - 1.0) > options.const_tol) {
    std::ostringstream os;
    os.precision(17);
    os << "classify: H(0) = " << at_origin << " is neither 0 nor 1";
    throw PreconditionError(os.str());
  }

  const auto curvature = estimate_kappa(h, std::min(kDefaultKappaStep, T));
  out.curvature = curvature;
  const double kappa = curvature.kappa;

  if (std::abs(kappa) <= options.const_tol) {
    out.branch = Branch::constant_one;
    out.residual = sup_residual(ts, hs, Branch::constant_one, 0.0);
    out.kappa_used = 0.0;
    if (out.residual > out.threshold) {
      reject("curvature vanishes but H is not constant", Branch::constant_one,
             0.0, out.residual, out.threshold);
    }
    return out;
  }

  out.branch = kappa > 0.0 ? Branch::cosh : Branch::cos;
  const double k = refine_scale(ts, hs, out.branch, std::sqrt(std::abs(kappa)));
  out.k = k;
  out.kappa_used = kappa > 0.0 ? k * k : -k * k;
  out.residual = sup_residual(ts, hs, out.branch, k);
  if (out.residual > out.threshold) {
    reject("sup residual from the fitted branch too large", out.branch, k,
           out.residual, out.threshold);
  }
  return out;
}

}  // namespace reccost
