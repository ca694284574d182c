#include "reccost/fixtures.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "reccost/errors.hpp"

namespace reccost {

FamilySpec FamilySpec::cosh_lambda(double lambda) {
  FamilySpec s;
  s.family = Family::cosh_lambda;
  s.lambda = lambda;
  return s;
}

FamilySpec FamilySpec::cos_k(double k) {
  FamilySpec s;
  s.family = Family::cos_k;
  s.k = k;
  return s;
}

FamilySpec FamilySpec::constant_one() {
  FamilySpec s;
  s.family = Family::constant_one;
  return s;
}

FamilySpec FamilySpec::zero() {
  FamilySpec s;
  s.family = Family::zero;
  return s;
}

FamilySpec FamilySpec::quad_log() {
  FamilySpec s;
  s.family = Family::quad_log;
  return s;
}

FamilySpec FamilySpec::noisy_cosh(double lambda, double amplitude, double mode,
                                  std::uint64_t seed) {
  FamilySpec s;
  s.family = Family::noisy_cosh;
  s.lambda = lambda;
  s.amplitude = amplitude;
  s.mode = mode;
  s.seed = seed;
  return s;
}

FamilySpec FamilySpec::power_law_w(double lambda) {
  FamilySpec s;
  s.family = Family::power_law_w;
  s.lambda = lambda;
  return s;
}

std::string_view family_name(Family family) noexcept {
  switch (family) {
    case Family::cosh_lambda: return "cosh-lambda";
    case Family::cos_k: return "cos-k";
    case Family::constant_one: return "constant-one";
    case Family::zero: return "zero";
    case Family::quad_log: return "quad-log";
    case Family::noisy_cosh: return "noisy-cosh";
    case Family::power_law_w: return "power-law-w";
  }
  return "unknown";
}

Domain natural_domain(Family family) noexcept {
  switch (family) {
    case Family::cosh_lambda:
    case Family::quad_log:
    case Family::power_law_w:
      return Domain::positive_ratios;
    default:
      return Domain::log_line;
  }
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view key, std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ParameterError("family spec: bad value for " + std::string(key) +
                         ": '" + std::string(text) + "'");
  }
  return value;
}

std::uint64_t parse_seed(std::string_view text) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParameterError("family spec: bad seed '" + std::string(text) + "'");
  }
  return value;
}

Family parse_family_name(std::string_view name) {
  if (name == "cosh-lambda" || name == "cosh" || name == "j") return Family::cosh_lambda;
  if (name == "cos-k" || name == "cos") return Family::cos_k;
  if (name == "constant-one") return Family::constant_one;
  if (name == "zero") return Family::zero;
  if (name == "quad-log") return Family::quad_log;
  if (name == "noisy-cosh") return Family::noisy_cosh;
  if (name == "power-law-w") return Family::power_law_w;
  throw ParameterError("family spec: unknown family '" + std::string(name) + "'");
}

void require(bool ok, const char* what) {
  if (!ok) throw ParameterError(what);
}

// F(x) = g(ln x): chain rule in x from derivatives of g in s = ln x.
double from_log_derivatives(double x, int order, const std::array<double, 4>& g) {
  switch (order) {
    case 0: return g[0];
    case 1: return g[1] / x;
    case 2: return (g[2] - g[1]) / (x * x);
    default: return (g[3] - 3.0 * g[2] + 2.0 * g[1]) / (x * x * x);
  }
}

FunctionHandle make_cosh_lambda(double lambda) {
  require(lambda > 0.0, "cosh-lambda: lambda must be positive");
  return FunctionHandle::analytic(
      "cosh-lambda", Domain::positive_ratios,
      [lambda](double x, int order) {
        const double s = std::log(x);
        const double a = lambda * s;
        const double half = std::sinh(0.5 * a);
        const std::array<double, 4> g{2.0 * half * half, lambda * std::sinh(a),
                                      lambda * lambda * std::cosh(a),
                                      lambda * lambda * lambda * std::sinh(a)};
        return from_log_derivatives(x, order, g);
      },
      3, {{"lambda", lambda}});
}

FunctionHandle make_power_law_w(double lambda) {
  require(lambda > 0.0, "power-law-w: lambda must be positive");
  return FunctionHandle::analytic(
      "power-law-w", Domain::positive_ratios,
      [lambda](double x, int order) {
        const double w = std::pow(x, lambda);
        const double winv = 1.0 / w;
        switch (order) {
          case 0: return 0.5 * (w + winv) - 1.0;
          case 1: return 0.5 * lambda * (w - winv) / x;
          case 2:
            return 0.5 * (lambda * (lambda - 1.0) * w +
                          lambda * (lambda + 1.0) * winv) / (x * x);
          default:
            return 0.5 *
                   (lambda * (lambda - 1.0) * (lambda - 2.0) * w -
                    lambda * (lambda + 1.0) * (lambda + 2.0) * winv) /
                   (x * x * x);
        }
      },
      3, {{"lambda", lambda}});
}

FunctionHandle make_quad_log() {
  return FunctionHandle::analytic(
      "quad-log", Domain::positive_ratios,
      [](double x, int order) {
        const double s = std::log(x);
        return from_log_derivatives(x, order, {0.5 * s * s, s, 1.0, 0.0});
      },
      3);
}

FunctionHandle make_cos_k(double k) {
  require(k > 0.0, "cos-k: k must be positive");
  return FunctionHandle::analytic(
      "cos-k", Domain::log_line,
      [k](double t, int order) {
        switch (order) {
          case 0: return std::cos(k * t);
          case 1: return -k * std::sin(k * t);
          case 2: return -k * k * std::cos(k * t);
          default: return k * k * k * std::sin(k * t);
        }
      },
      3, {{"k", k}});
}

FunctionHandle make_constant(double value, const char* name) {
  return FunctionHandle::analytic(
      name, Domain::log_line,
      [value](double, int order) { return order == 0 ? value : 0.0; }, 3);
}

struct Harmonic {
  double weight;
  double phase;
};

// Seeded harmonic weights, materialized once so evaluation is order-free.
std::vector<Harmonic> noise_harmonics(std::uint64_t seed) {
  if (seed == 0) return {{1.0, 0.0}};
  std::mt19937_64 engine(seed);
  auto unit = [&engine] {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
  };
  std::vector<Harmonic> out(4);
  double total = 0.0;
  for (auto& h : out) {
    h.weight = 0.25 + unit();
    h.phase = 2.0 * std::numbers::pi * unit();
    total += h.weight;
  }
  for (auto& h : out) h.weight /= total;
  return out;
}

FunctionHandle make_noisy_cosh(const FamilySpec& spec) {
  require(spec.lambda > 0.0, "noisy-cosh: lambda must be positive");
  require(spec.amplitude >= 0.0, "noisy-cosh: amplitude must be nonnegative");
  require(spec.mode > 0.0, "noisy-cosh: mode must be positive");
  const double lambda = spec.lambda;
  const double amplitude = spec.amplitude;
  const double mode = spec.mode;
  auto harmonics = noise_harmonics(spec.seed);
  return FunctionHandle::analytic(
      "noisy-cosh", Domain::log_line,
      [=](double t, int order) {
        const double lp = std::pow(lambda, order);
        double value = lp * (order % 2 == 0 ? std::cosh(lambda * t)
                                            : std::sinh(lambda * t));
        double noise = 0.0;
        for (std::size_t j = 0; j < harmonics.size(); ++j) {
          const double w = mode * static_cast<double>(j + 1);
          const double arg = w * t + harmonics[j].phase +
                             0.5 * std::numbers::pi * order;
          noise += harmonics[j].weight * std::pow(w, order) * std::sin(arg);
        }
        value += amplitude * noise;
        return value;
      },
      3,
      {{"lambda", lambda},
       {"amplitude", amplitude},
       {"mode", mode},
       {"seed", static_cast<double>(spec.seed)}});
}

}  // namespace

FamilySpec parse_family_spec(std::string_view text) {
  FamilySpec spec;
  bool have_family = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::size_t stop = comma == std::string_view::npos ? text.size() : comma;
    const std::string_view item = trim(text.substr(pos, stop - pos));
    pos = stop + 1;
    if (item.empty()) {
      if (comma == std::string_view::npos) break;
      continue;
    }
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      if (have_family) {
        throw ParameterError("family spec: stray token '" + std::string(item) + "'");
      }
      spec.family = parse_family_name(item);
      have_family = true;
      continue;
    }
    const std::string_view key = trim(item.substr(0, eq));
    const std::string_view value = trim(item.substr(eq + 1));
    if (key == "family") {
      spec.family = parse_family_name(value);
      have_family = true;
    } else if (key == "lambda") {
      spec.lambda = parse_real(key, value);
    } else if (key == "k") {
      spec.k = parse_real(key, value);
    } else if (key == "amplitude") {
      spec.amplitude = parse_real(key, value);
    } else if (key == "mode") {
      spec.mode = parse_real(key, value);
    } else if (key == "seed") {
      spec.seed = parse_seed(value);
    } else {
      throw ParameterError("family spec: unknown key '" + std::string(key) + "'");
    }
  }
  if (!have_family) throw ParameterError("family spec: missing family name");
  return spec;
}

std::string format_family_spec(const FamilySpec& spec) {
  std::ostringstream os;
  os.precision(17);
  os << "family=" << family_name(spec.family);
  switch (spec.family) {
    case Family::cosh_lambda:
    case Family::power_law_w:
      os << ", lambda=" << spec.lambda;
      break;
    case Family::cos_k:
      os << ", k=" << spec.k;
      break;
    case Family::noisy_cosh:
      os << ", lambda=" << spec.lambda << ", amplitude=" << spec.amplitude
         << ", mode=" << spec.mode << ", seed=" << spec.seed;
      break;
    default:
      break;
  }
  return os.str();
}

FunctionHandle make_family(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::cosh_lambda: return make_cosh_lambda(spec.lambda);
    case Family::cos_k: return make_cos_k(spec.k);
    case Family::constant_one: return make_constant(1.0, "constant-one");
    case Family::zero: return make_constant(0.0, "zero");
    case Family::quad_log: return make_quad_log();
    case Family::noisy_cosh: return make_noisy_cosh(spec);
    case Family::power_law_w: return make_power_law_w(spec.lambda);
  }
  throw ParameterError("unknown family");
}

double quadlog_defect_oracle(double t, double u) { return -0.5 * t * t * u * u; }

FunctionHandle perturb(const FunctionHandle& base, const Perturbation& p) {
  if (base.domain() != Domain::log_line) {
    throw ParameterError("perturb: base handle must live on the log line");
  }
  if (!(p.amplitude >= 0.0) || !std::isfinite(p.amplitude)) {
    throw ParameterError("perturb: amplitude must be nonnegative and finite");
  }
  if (p.mode == PerturbMode::sine && !(p.frequency > 0.0)) {
    throw ParameterError("perturb: sine frequency must be positive");
  }
  const double a = p.amplitude;
  const double f = p.frequency;
  FunctionHandle::Evaluator add;
  std::string name = base.name();
  if (p.mode == PerturbMode::poly4) {
    name += "+poly4";
    add = [a](double t, int order) {
      switch (order) {
        case 0: return a * t * t * t * t;
        case 1: return 4.0 * a * t * t * t;
        case 2: return 12.0 * a * t * t;
        default: return 24.0 * a * t;
      }
    };
  } else {
    name += "+sine";
    add = [a, f](double t, int order) {
      switch (order) {
        case 0: return a * (1.0 - std::cos(f * t));
        case 1: return a * f * std::sin(f * t);
        case 2: return a * f * f * std::cos(f * t);
        default: return -a * f * f * f * std::sin(f * t);
      }
    };
  }
  std::vector<Parameter> params(base.params().begin(), base.params().end());
  params.emplace_back("perturbation_amplitude", a);
  if (p.mode == PerturbMode::sine) params.emplace_back("perturbation_frequency", f);
  const int capability = std::min(base.derivative_capability(), 3);
  return FunctionHandle::composed(
      std::move(name), Domain::log_line, base.kind(),
      [base, add](double t, int order) { return base.derivative(t, order) + add(t, order); },
      capability, base.lower(), base.upper(),
      std::vector<double>(base.nodes().begin(), base.nodes().end()),
      std::move(params));
}

}  // namespace reccost
