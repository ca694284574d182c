#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "reccost/function_handle.hpp"

namespace reccost {

/// Builtin analytic families.
///
/// Ratio-domain families (natural coordinate x > 0):
///   cosh_lambda  F(x) = cosh(lambda ln x) - 1        (lambda = 1 is J)
///   power_law_w  F(x) = (x^lambda + x^-lambda)/2 - 1 (same values, via W)
///   quad_log     F(x) = (ln x)^2 / 2                 (calibrated non-solution)
/// Log-line families (natural coordinate t):
///   cos_k        H(t) = cos(k t)
///   constant_one H(t) = 1
///   zero         H(t) = 0
///   noisy_cosh   H(t) = cosh(lambda t) + amplitude * n(t), n a seeded sum of
///                harmonics of `mode` with sup |n| <= 1; seed 0 gives sin(mode t)
enum class Family {
  cosh_lambda,
  cos_k,
  constant_one,
  zero,
  quad_log,
  noisy_cosh,
  power_law_w,
};

struct FamilySpec {
  Family family = Family::cosh_lambda;
  double lambda = 1.0;
  double k = 1.0;
  double amplitude = 0.0;
  double mode = 1.0;
  std::uint64_t seed = 0;

  static FamilySpec cosh_lambda(double lambda);
  static FamilySpec cos_k(double k);
  static FamilySpec constant_one();
  static FamilySpec zero();
  static FamilySpec quad_log();
  static FamilySpec noisy_cosh(double lambda, double amplitude, double mode,
                               std::uint64_t seed);
  static FamilySpec power_law_w(double lambda);
};

std::string_view family_name(Family family) noexcept;
Domain natural_domain(Family family) noexcept;

/// Parses the textual form used on the command line, e.g.
/// "family=cosh-lambda, lambda=2" or the bare "cos-k,k=0.7". Aliases: "cosh"
/// and "j" for cosh-lambda, "cos" for cos-k. Throws ParameterError.
FamilySpec parse_family_spec(std::string_view text);
std::string format_family_spec(const FamilySpec& spec);

/// Handle in the family's natural domain with analytic derivatives to order 3.
/// Throws ParameterError for out-of-range parameters.
FunctionHandle make_family(const FamilySpec& spec);

/// Closed-form d'Alembert defect of H(t) = 1 + t^2/2, i.e. -t^2 u^2 / 2.
double quadlog_defect_oracle(double t, double u);

enum class PerturbMode { poly4, sine };

struct Perturbation {
  PerturbMode mode = PerturbMode::poly4;
  double amplitude = 0.0;
  double frequency = 1.0;  ///< sine mode only
};

/// Adds an even perturbation vanishing at 0 to a log-line handle:
/// poly4 adds amplitude * t^4, sine adds amplitude * (1 - cos(frequency t)).
/// Evenness and H(0) are preserved exactly.
FunctionHandle perturb(const FunctionHandle& base, const Perturbation& p);

}  // namespace reccost
