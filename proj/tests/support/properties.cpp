#include "properties.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <utility>

#include "reccost/reccost.hpp"
#include "grid_points.hpp"
#include "oracles.hpp"
#include "reccost_cli/cli.hpp"

namespace reccost::testing {

namespace {

class Recorder {
 public:
  explicit Recorder(std::string module) : module_(std::move(module)) {}

  // Runs `check`, which returns an empty string on success and a failure
  // description otherwise. Exceptions count as failures.
  void check(const std::string& name, const std::function<std::string()>& body) {
    PropertyResult r{module_, name, false, {}};
    try {
      r.detail = body();
      r.passed = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = std::string("unexpected exception: ") + e.what();
    }
    results_.push_back(std::move(r));
  }

  std::vector<PropertyResult> take() { return std::move(results_); }

 private:
  std::string module_;
  std::vector<PropertyResult> results_;
};

template <typename... Args>
std::string describe(const Args&... args) {
  std::ostringstream os;
  os.precision(17);
  (os << ... << args);
  return os.str();
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(std::log(lo), std::log(hi));
  return std::exp(d(rng));
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

FunctionHandle log_cosh(double lambda) {
  return make_family(FamilySpec::noisy_cosh(lambda, 0.0, 1.0, 0));
}

FunctionHandle lifted(const FamilySpec& spec) { return lift_to_log(make_family(spec)); }

// (sup over [-2T, 2T] of |H|)^2, at least 1: the magnitude of every term in
// the defect and in the identities.
double defect_scale(const FunctionHandle& h, double T) {
  const SymmetricGrid g(2.0 * T, T / 50.0);
  double m = 1.0;
  for (double t : g.points()) m = std::max(m, std::abs(h(t)));
  return m * m;
}

FunctionHandle add_odd_cubic(const FunctionHandle& base, double c) {
  return FunctionHandle::analytic(
      "cubic-perturbed", Domain::log_line,
      [base, c](double t, int order) {
        const double b = base.derivative(t, order);
        switch (order) {
          case 0: return b + c * t * t * t;
          case 1: return b + 3.0 * c * t * t;
          case 2: return b + 6.0 * c * t;
          default: return b + 6.0 * c;
        }
      },
      3);
}

}  // namespace

std::vector<PropertyResult> core_properties() {
  Recorder rec("core");

  rec.check("reciprocity", [] {
    std::mt19937_64 rng(0x5eed0001);
    for (int i = 0; i < 10000; ++i) {
      const double x = log_uniform(rng, 1e-6, 1e6);
      const double j = canonical_cost(PositiveRatio(x)).value();
      const double ji = canonical_cost(PositiveRatio(1.0 / x)).value();
      if (std::abs(j - ji) > 1e-12 * (1.0 + j)) {
        return describe("x = ", x, ": J(x) = ", j, ", J(1/x) = ", ji);
      }
    }
    return std::string();
  });

  rec.check("nonnegativity and unique minimum", [] {
    std::mt19937_64 rng(0x5eed0002);
    std::vector<double> xs;
    for (int i = 0; i < 10000; ++i) xs.push_back(log_uniform(rng, 1e-6, 1e6));
    double up = 1.0;
    double down = 1.0;
    for (int i = 0; i < 64; ++i) {
      xs.push_back(up);
      xs.push_back(down);
      up = std::nextafter(up, 2.0);
      down = std::nextafter(down, 0.0);
    }
    for (double x : xs) {
      const double j = canonical_cost(PositiveRatio(x)).value();
      if (!(j >= 0.0)) return describe("J(", x, ") = ", j, " is negative");
      if ((j == 0.0) != (x == 1.0)) return describe("J(", x, ") = ", j);
      // J(1 + d) = d^2 / 2 + O(d^3), so J < 1e-30 exactly when |d| < sqrt(2) 1e-15.
      if (j < 1e-30 && std::abs(x - 1.0) >= std::numbers::sqrt2 * 1e-15) {
        return describe("J(", x, ") = ", j, " below 1e-30 away from 1");
      }
    }
    return std::string();
  });

  rec.check("coordinate consistency", [] {
    for (int i = -2000; i <= 2000; ++i) {
      const double t = i * 0.01;
      const auto f = log_forms(LogCoord(t));
      const double j = canonical_cost(PositiveRatio(std::exp(t))).value();
      if (std::abs(j - (f.H - 1.0)) > 1e-12 * f.H) {
        return describe("t = ", t, ": J(e^t) = ", j, ", H - 1 = ", f.H - 1.0);
      }
    }
    return std::string();
  });

  rec.check("quadratic calibration", [] {
    for (int i = -500; i <= 500; ++i) {
      const double t = i * 0.001;
      const double g = log_forms(LogCoord(t)).G;
      if (std::abs(g - t * t / 2.0) > std::pow(t, 4) / 20.0) {
        return describe("t = ", t, ": G = ", g);
      }
    }
    return std::string();
  });

  rec.check("bregman equals G", [] {
    std::mt19937_64 rng(0x5eed0003);
    for (int i = 0; i < 10000; ++i) {
      const double t = uniform(rng, -700.0, 700.0) * (i % 2 == 0 ? 1e-3 : 1.0);
      const double b = bregman_divergence(LogCoord(t));
      const double g = log_forms(LogCoord(t)).G;
      if (b != g) return describe("t = ", t, ": D = ", b, ", G = ", g);
    }
    return std::string();
  });

  rec.check("golden identity", [] {
    for (double x0 : {0.01, 0.5, 1.0, 1.6180339887498949, 3.0, 10.0, 1e6}) {
      for (double tol : {1e-6, 1e-9, 1e-12}) {
        const auto g = golden_fixed_point(PositiveRatio(x0), tol, 500);
        const double r = std::abs(g.phi * g.phi - g.phi - 1.0);
        if (r > 10.0 * tol) {
          return describe("x0 = ", x0, ", tol = ", tol, ": residual ", r);
        }
      }
    }
    return std::string();
  });

  return rec.take();
}

std::vector<PropertyResult> dalembert_properties() {
  Recorder rec("dalembert");

  rec.check("lift consistency", [] {
    std::vector<FunctionHandle> fs{
        make_family(FamilySpec::cosh_lambda(0.5)),
        make_family(FamilySpec::cosh_lambda(1.0)),
        make_family(FamilySpec::cosh_lambda(2.0)),
        make_family(FamilySpec::power_law_w(1.5)),
        make_family(FamilySpec::quad_log()),
    };
    {
      std::vector<double> xs;
      std::vector<double> ys;
      for (int i = -840; i <= 840; ++i) {
        const double x = std::exp(i * 0.005);
        xs.push_back(x);
        ys.push_back(canonical_cost(PositiveRatio(x)).value());
      }
      fs.push_back(FunctionHandle::table(Domain::positive_ratios, xs, ys, "J-table"));
    }
    std::mt19937_64 rng(0x5eed0101);
    for (const auto& f : fs) {
      const FunctionHandle H = lift_to_log(f);
      for (int i = 0; i < 1000; ++i) {
        const double t = uniform(rng, -2.0, 2.0);
        const double u = uniform(rng, -2.0, 2.0);
        const double dl = defect_log(H, t, u);
        const double dr =
            defect_ratio(f, PositiveRatio(std::exp(t)), PositiveRatio(std::exp(u)));
        if (std::abs(dl - dr) > 1e-10 * (1.0 + std::abs(dl))) {
          return describe(f.name(), " at (", t, ", ", u, "): log ", dl, ", ratio ", dr);
        }
      }
    }
    return std::string();
  });

  rec.check("reciprocity forced", [] {
    const std::vector<FunctionHandle> fs{
        make_family(FamilySpec::cosh_lambda(1.0)),
        make_family(FamilySpec::cosh_lambda(2.0)),
        make_family(FamilySpec::power_law_w(0.5)),
        make_family(FamilySpec::quad_log()),
    };
    const SymmetricGrid grid(1.5, 0.1);
    int premises = 0;
    for (const auto& f : fs) {
      double worst = 0.0;
      double scale = 1.0;
      for (double t : grid.points()) {
        scale = std::max(scale, std::pow(f(std::exp(2.0 * std::abs(t))) + 1.0, 2));
        for (double u : grid.points()) {
          worst = std::max(worst, std::abs(defect_ratio(f, PositiveRatio(std::exp(t)),
                                                        PositiveRatio(std::exp(u)))));
        }
      }
      if (worst > 1e-10 * scale || f(1.0) != 0.0) continue;
      ++premises;
      for (double t : grid.points()) {
        const double x = std::exp(t);
        const double d = std::abs(f(x) - f(1.0 / x));
        if (d > 1e-10) return describe(f.name(), ": |f(x) - f(1/x)| = ", d, " at x = ", x);
      }
    }
    if (premises != 3) return describe("expected 3 exact solutions, saw ", premises);
    return std::string();
  });

  rec.check("defect symmetry", [] {
    const std::vector<FunctionHandle> hs{
        lifted(FamilySpec::cosh_lambda(1.0)),
        make_family(FamilySpec::cos_k(0.7)),
        make_family(FamilySpec::constant_one()),
        lifted(FamilySpec::quad_log()),
        perturb(log_cosh(1.0), {PerturbMode::poly4, 1e-3, 1.0}),
        perturb(log_cosh(1.0), {PerturbMode::sine, 1e-3, 5.0}),
    };
    std::mt19937_64 rng(0x5eed0102);
    for (const auto& h : hs) {
      for (int i = 0; i < 1000; ++i) {
        const double t = uniform(rng, -1.5, 1.5);
        const double u = uniform(rng, -1.5, 1.5);
        const double a = defect_log(h, t, u);
        const double b = defect_log(h, t, -u);
        const double scale =
            1.0 + std::abs(h(t + u)) + std::abs(h(t - u)) + 2.0 * std::abs(h(t) * h(u));
        if (std::abs(a - b) > 1e-12 * scale) {
          return describe(h.name(), " at (", t, ", ", u, "): ", a, " vs ", b);
        }
      }
    }
    return std::string();
  });

  rec.check("zero-solution branch", [] {
    const FunctionHandle h = make_family(FamilySpec::zero());
    const double T = 2.0;
    if (h(0.0) != 0.0) return describe("H(0) = ", h(0.0));
    const auto d = sup_defect(h, T, 0.05);
    if (d.epsilon != 0.0) return describe("defect ", d.epsilon);
    for (double t : grid_points(T, 0.05)) {
      if (h(t) != 0.0) return describe("H(", t, ") = ", h(t));
    }
    return std::string();
  });

  rec.check("identities vanish iff defect vanishes", [] {
    // The zero fixture is excluded: H = 0 has zero defect but is not
    // normalized, so the product and double-angle identities fail for it.
    const std::vector<FunctionHandle> hs{
        lifted(FamilySpec::cosh_lambda(1.0)),
        lifted(FamilySpec::cosh_lambda(2.0)),
        lifted(FamilySpec::power_law_w(0.5)),
        log_cosh(1.5),
        make_family(FamilySpec::cos_k(0.7)),
        make_family(FamilySpec::cos_k(3.0)),
        make_family(FamilySpec::constant_one()),
        lifted(FamilySpec::quad_log()),
        perturb(log_cosh(1.0), {PerturbMode::poly4, 1e-3, 1.0}),
        perturb(log_cosh(1.0), {PerturbMode::sine, 1e-3, 5.0}),
        make_family(FamilySpec::noisy_cosh(1.0, 1e-3, 5.0, 0)),
    };
    const double T = 1.5;
    const double step = 0.1;
    int solutions = 0;
    for (const auto& h : hs) {
      const double tol = 1e-10 * defect_scale(h, T);
      const bool defect_small = sup_defect(h, T, step).epsilon <= tol;
      const auto v = identity_report(h, T, step);
      const bool identities_small = v.product_identity <= tol &&
                                    v.difference_square <= tol &&
                                    v.double_angle <= tol && v.evenness <= tol;
      if (defect_small != identities_small) {
        return describe(h.name(), ": defect small = ", defect_small,
                        ", identities small = ", identities_small);
      }
      solutions += defect_small ? 1 : 0;
    }
    if (solutions != 7) return describe("expected 7 exact solutions, saw ", solutions);
    return std::string();
  });

  return rec.take();
}

std::vector<PropertyResult> calibration_properties() {
  Recorder rec("calibration");

  rec.check("branch recovery", [] {
    for (double lambda : {0.5, 1.0, 2.0}) {
      const auto c = classify(lifted(FamilySpec::cosh_lambda(lambda)));
      if (c.branch != Branch::cosh || !c.k ||
          std::abs(*c.k - lambda) > 1e-6 * lambda || c.residual > 1e-8) {
        return describe("cosh lambda = ", lambda, ": branch ", to_string(c.branch),
                        ", k = ", c.k.value_or(-1.0), ", residual ", c.residual);
      }
    }
    for (double k : {0.7, 1.0, 3.0}) {
      const auto c = classify(make_family(FamilySpec::cos_k(k)));
      if (c.branch != Branch::cos || !c.k || std::abs(*c.k - k) > 1e-6 * k ||
          c.residual > 1e-8) {
        return describe("cos k = ", k, ": branch ", to_string(c.branch), ", k = ",
                        c.k.value_or(-1.0), ", residual ", c.residual);
      }
    }
    return std::string();
  });

  rec.check("calibration fixes the family", [] {
    const auto unit = classify(lifted(FamilySpec::cosh_lambda(1.0)));
    if (unit.branch != Branch::cosh || std::abs(unit.k.value_or(0.0) - 1.0) > 1e-6) {
      return describe("F_1: k = ", unit.k.value_or(-1.0));
    }
    for (double lambda : {0.5, 1.2, 2.0}) {
      const FunctionHandle H = lifted(FamilySpec::cosh_lambda(lambda));
      const double kappa = estimate_kappa(H).kappa;
      const double k = classify(H).k.value_or(0.0);
      if (std::abs(k * k - kappa) > 1e-6 * kappa) {
        return describe("lambda = ", lambda, ": k^2 = ", k * k, ", kappa = ", kappa);
      }
    }
    return std::string();
  });

  rec.check("extrapolation order", [] {
    std::vector<std::pair<FunctionHandle, double>> cases;
    for (double lambda : {0.5, 1.0, 2.0}) {
      cases.emplace_back(lifted(FamilySpec::cosh_lambda(lambda)), lambda * lambda);
    }
    for (double k : {0.7, 1.0, 3.0}) {
      cases.emplace_back(make_family(FamilySpec::cos_k(k)), -k * k);
    }
    for (const auto& [h, kappa] : cases) {
      const auto est = estimate_kappa(h, kDefaultKappaStep, kDefaultKappaLevels);
      double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
      const double n = static_cast<double>(est.ratio_table.size());
      for (const auto& r : est.ratio_table) {
        const double x = std::log(r.step);
        const double y = std::log(std::abs(r.q - kappa));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
      }
      const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
      if (slope < 1.8 || slope > 2.2) {
        return describe(h.name(), ": log-log slope ", slope);
      }
    }
    return std::string();
  });

  rec.check("symmetrization", [] {
    const std::vector<FunctionHandle> bases{log_cosh(1.0), log_cosh(2.0),
                                            make_family(FamilySpec::cos_k(0.7))};
    for (const auto& base : bases) {
      const double k0 = estimate_kappa(base).kappa;
      for (double c : {1e-3, -1e-3, 1e-5, -1e-7}) {
        const double k1 = estimate_kappa(add_odd_cubic(base, c)).kappa;
        if (std::abs(k1 - k0) > 1e-12 * std::max(1.0, std::abs(k0))) {
          return describe(base.name(), ", c = ", c, ": ", k0, " vs ", k1);
        }
      }
    }
    return std::string();
  });

  return rec.take();
}

std::vector<PropertyResult> stability_properties() {
  Recorder rec("stability");

  rec.check("soundness on exact solutions", [] {
    const std::vector<FunctionHandle> hs{
        lifted(FamilySpec::cosh_lambda(0.5)), lifted(FamilySpec::cosh_lambda(1.0)),
        lifted(FamilySpec::cosh_lambda(1.5)), lifted(FamilySpec::cosh_lambda(2.0)),
        lifted(FamilySpec::power_law_w(1.2)), log_cosh(0.8),
    };
    const double T = 2.0;
    for (const auto& h : hs) {
      const auto c = certify(h, T, 0.05);
      const double bound = 1e-9 * std::cosh(std::sqrt(c.inputs.a) * T);
      if (!c.verified || c.max_observed_error > bound) {
        return describe(h.name(), ": verified ", c.verified, ", error ",
                        c.max_observed_error);
      }
    }
    return std::string();
  });

  rec.check("envelope monotonicity", [] {
    const std::vector<FunctionHandle> hs{
        lifted(FamilySpec::cosh_lambda(1.0)),
        perturb(log_cosh(1.0), {PerturbMode::poly4, 1e-3, 1.0}),
        perturb(log_cosh(2.0), {PerturbMode::sine, 1e-4, 3.0}),
    };
    for (const auto& h : hs) {
      const auto c = certify(h, 1.0, 0.02);
      const auto& s = c.sweep;
      const std::size_t n = s.size();
      for (std::size_t i = 0; i < n; ++i) {
        const auto& mirror = s[n - 1 - i];
        if (s[i].envelope != mirror.envelope || s[i].t != -mirror.t) {
          return describe(h.name(), ": envelope not even at t = ", s[i].t);
        }
        if (s[i].t == 0.0 && s[i].envelope != 0.0) {
          return describe(h.name(), ": envelope(0) = ", s[i].envelope);
        }
        if (s[i].t > 0.0 && !(s[i].envelope > s[i - 1].envelope)) {
          return describe(h.name(), ": envelope not increasing at t = ", s[i].t);
        }
      }
    }
    return std::string();
  });

  rec.check("delta convexity", [] {
    struct Case {
      double eps, B, K, T;
    };
    for (const Case& k : {Case{1e-6, 1.0, 3.0, 2.0}, Case{1e-3, 3.76, 3.63, 2.0},
                          Case{1e-8, 10.0, 50.0, 1.0}, Case{0.02, 1.0, 1.0, 5.0}}) {
      const double h = optimal_h(k.eps, k.B, k.K, k.T);
      if (2.0 * h > k.T) return describe("case eps = ", k.eps, " has 2h* > T");
      const double d = delta_of_h(k.eps, k.B, k.K, h);
      const double slack = 1e-12 * d;
      if (d > delta_of_h(k.eps, k.B, k.K, 0.5 * h) + slack ||
          d > delta_of_h(k.eps, k.B, k.K, 2.0 * h) + slack) {
        return describe("eps = ", k.eps, ": h* = ", h, " is not the minimizer");
      }
      const double oracle = golden_section_minimize(
          [&](double x) { return delta_of_h(k.eps, k.B, k.K, x); }, 1e-6 * h, k.T);
      if (std::abs(oracle - h) > 1e-6 * h) {
        return describe("eps = ", k.eps, ": h* = ", h, ", numerical minimizer ", oracle);
      }
    }
    return std::string();
  });

  rec.check("perturbation scaling", [] {
    std::vector<double> ratios;
    for (double eta : {1e-4, 1e-3, 1e-2}) {
      const auto h = perturb(log_cosh(1.0), {PerturbMode::poly4, eta, 1.0});
      ratios.push_back(sup_defect(h, 1.0, 0.02).epsilon / eta);
    }
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    if (*hi > 1.05 * *lo) {
      return describe("eps/eta ranges over [", *lo, ", ", *hi, "]");
    }
    return std::string();
  });

  rec.check("certificate consistency", [] {
    const std::vector<FunctionHandle> fs{
        make_family(FamilySpec::cosh_lambda(1.0)),
        make_family(FamilySpec::cosh_lambda(1.2)),
        make_family(FamilySpec::cosh_lambda(0.7)),
        make_family(FamilySpec::power_law_w(1.5)),
        make_family(FamilySpec::quad_log()),
    };
    for (const auto& f : fs) {
      const auto r = certify_ratio(f, 2.0, 0.05);
      const auto l = certify(lift_to_log(f), 2.0, 0.05);
      if (r.verified != l.verified ||
          std::abs(r.delta - l.delta) > 1e-12 * std::max(r.delta, l.delta)) {
        return describe(f.name(), ": ratio (", r.verified, ", ", r.delta, ") vs log (",
                        l.verified, ", ", l.delta, ")");
      }
    }
    return std::string();
  });

  return rec.take();
}

std::vector<PropertyResult> geometry_properties() {
  Recorder rec("geometry");
  constexpr double tol = 1e-10;
  const double e3 = std::exp(3.0);

  rec.check("reciprocal symmetry", [&] {
    std::mt19937_64 rng(0x5eed0401);
    for (int i = 0; i < 1000; ++i) {
      const double x = log_uniform(rng, 1.0 / e3, e3);
      const double y = log_uniform(rng, 1.0 / e3, e3);
      const double a = distance(PositiveRatio(x), PositiveRatio(y), tol).value;
      const double b = distance(PositiveRatio(1.0 / x), PositiveRatio(1.0 / y), tol).value;
      if (std::abs(a - b) > 10.0 * tol) {
        return describe("(", x, ", ", y, "): ", a, " vs ", b);
      }
    }
    return std::string();
  });

  rec.check("triangle inequality", [&] {
    std::mt19937_64 rng(0x5eed0402);
    for (int i = 0; i < 1000; ++i) {
      const PositiveRatio x(log_uniform(rng, 1.0 / e3, e3));
      const PositiveRatio y(log_uniform(rng, 1.0 / e3, e3));
      const PositiveRatio z(log_uniform(rng, 1.0 / e3, e3));
      const double xz = distance(x, z, tol).value;
      const double xy = distance(x, y, tol).value;
      const double yz = distance(y, z, tol).value;
      if (xz > xy + yz + 10.0 * tol) {
        return describe("d(x,z) = ", xz, " > ", xy, " + ", yz);
      }
    }
    return std::string();
  });

  rec.check("additivity along the line", [&] {
    std::mt19937_64 rng(0x5eed0403);
    for (int i = 0; i < 1000; ++i) {
      std::array<double, 3> v{log_uniform(rng, 1.0 / e3, e3), log_uniform(rng, 1.0 / e3, e3),
                              log_uniform(rng, 1.0 / e3, e3)};
      std::sort(v.begin(), v.end());
      if (i % 2 == 1) std::swap(v[0], v[2]);
      const PositiveRatio x(v[0]), y(v[1]), z(v[2]);
      const double xz = distance(x, z, tol).value;
      const double sum = distance(x, y, tol).value + distance(y, z, tol).value;
      if (std::abs(xz - sum) > 10.0 * tol) {
        return describe("d(x,z) = ", xz, ", d(x,y) + d(y,z) = ", sum);
      }
    }
    return std::string();
  });

  rec.check("local equivalence", [] {
    std::mt19937_64 rng(0x5eed0404);
    for (int i = 0; i < 1000; ++i) {
      const double x = uniform(rng, 0.99, 1.01);
      const double y = uniform(rng, 0.99, 1.01);
      if (x == y) continue;
      const double r = local_equivalence_ratio(PositiveRatio(x), PositiveRatio(y));
      if (std::abs(r - 1.0) > 1e-3) return describe("(", x, ", ", y, "): ratio ", r);
    }
    return std::string();
  });

  rec.check("asymptotic growth", [&] {
    const double R = 1e4;
    const double d = distance(PositiveRatio(1.0), PositiveRatio(R), tol).value;
    if (d < std::sqrt(2.0) * (std::sqrt(R) - 1.0)) {
      return describe("d(1, R) = ", d, " below the lower bound");
    }
    if (std::abs(d / (std::sqrt(2.0) * std::sqrt(R)) - 1.0) > 0.02) {
      return describe("d(1, R) = ", d);
    }
    return std::string();
  });

  rec.check("chebyshev consistency", [] {
    for (double x : {1.1, 2.0, 5.0}) {
      for (int n = 0; n <= 15; ++n) {
        const auto c = chebyshev_cost(PositiveRatio(x), n);
        if (c.rel_discrepancy > 1e-9) {
          return describe("x = ", x, ", n = ", n, ": ", c.rel_discrepancy);
        }
      }
    }
    return std::string();
  });

  return rec.take();
}

std::vector<PropertyResult> fixtures_properties() {
  Recorder rec("fixtures");

  rec.check("cosh-lambda and power-law agree", [] {
    for (double lambda : {0.5, 2.0}) {
      const auto a = make_family(FamilySpec::cosh_lambda(lambda));
      const auto b = make_family(FamilySpec::power_law_w(lambda));
      for (double t : grid_points(3.0, 0.01)) {
        const double x = std::exp(t);
        if (std::abs(a(x) - b(x)) > 1e-12 * std::cosh(3.0 * lambda)) {
          return describe("lambda = ", lambda, ", x = ", x, ": ", a(x), " vs ", b(x));
        }
      }
    }
    return std::string();
  });

  rec.check("cosh-lambda members have zero defect", [] {
    for (double lambda : {0.3, 0.5, 1.0, 1.2, 2.0}) {
      const auto H = lifted(FamilySpec::cosh_lambda(lambda));
      const double T = 1.5;
      const double eps = sup_defect(H, T, 0.05).epsilon;
      if (eps > 1e-10 * defect_scale(H, T)) {
        return describe("lambda = ", lambda, ": defect ", eps);
      }
    }
    return std::string();
  });

  rec.check("quad-log is normalized, calibrated and not a solution", [] {
    const auto f = make_family(FamilySpec::quad_log());
    if (f(1.0) != 0.0) return describe("F(1) = ", f(1.0));
    const double kappa = estimate_kappa(lift_to_log(f)).kappa;
    if (std::abs(kappa - 1.0) > 1e-8) return describe("kappa = ", kappa);
    const double e = std::exp(1.0);
    const double d = defect_ratio(f, PositiveRatio(e), PositiveRatio(e));
    if (std::abs(d + 0.5) > 1e-12) return describe("defect at (e, e) = ", d);
    return std::string();
  });

  rec.check("perturbations keep the hypotheses", [] {
    const std::vector<FunctionHandle> bases{log_cosh(1.0), log_cosh(2.0),
                                            make_family(FamilySpec::cos_k(0.7)),
                                            make_family(FamilySpec::constant_one())};
    const std::vector<Perturbation> ps{{PerturbMode::poly4, 1e-3, 1.0},
                                       {PerturbMode::poly4, 0.5, 1.0},
                                       {PerturbMode::sine, 1e-3, 5.0},
                                       {PerturbMode::sine, 0.1, 0.3}};
    for (const auto& base : bases) {
      for (const auto& p : ps) {
        const auto h = perturb(base, p);
        if (std::abs(h(0.0) - 1.0) > 1e-15) return describe(h.name(), ": H(0) = ", h(0.0));
        for (double t : grid_points(3.0, 0.01)) {
          if (std::abs(h(t) - h(-t)) > 1e-15 * std::max(1.0, std::abs(h(t)))) {
            return describe(h.name(), ": not even at t = ", t);
          }
        }
      }
    }
    return std::string();
  });

  return rec.take();
}

namespace {

struct CliCase {
  std::string command;
  std::vector<std::string> ok;
  std::vector<std::string> failed;  // empty when the command has no verdict
  std::vector<std::string> bad;
};

std::vector<CliCase> cli_cases() {
  const std::string quad = "family=quad-log";
  return {
      {"eval", {"eval", "--x", "2"}, {}, {"eval", "--x", "-1"}},
      {"defect", {"defect", "--family", "cosh", "--t", "1.3", "--u", "0.4"}, {},
       {"defect", "--family", "nonsense", "--t", "1"}},
      {"sup-defect", {"sup-defect", "--family", "cosh", "--T", "1", "--step", "0.1"}, {},
       {"sup-defect", "--family", "cosh", "--T", "-1"}},
      {"identities", {"identities", "--family", "cos-k,k=0.7", "--T", "1", "--step", "0.1"},
       {}, {"identities", "--family", "cosh", "--step", "0"}},
      {"ode-residual", {"ode-residual", "--family", "cosh", "--a", "1"}, {},
       {"ode-residual", "--family", "cosh", "--a", "1", "--fd-h", "-1"}},
      {"calibrate", {"calibrate", "--family", "cos-k,k=0.7"}, {},
       {"calibrate", "--family", "cosh", "--levels", "1"}},
      {"classify", {"classify", "--family", "cosh-lambda,lambda=2"},
       {"classify", "--family", quad}, {"classify", "--family", "cosh", "--window", "0"}},
      {"certify", {"certify", "--family", "cosh", "--T", "1", "--step", "0.05"},
       {"certify", "--family", "cos-k,k=1", "--T", "1", "--step", "0.05"},
       {"certify", "--family", "cosh", "--T", "1", "--step", "5"}},
      {"certify-ratio", {"certify-ratio", "--family", "j", "--T", "1", "--step", "0.05"},
       {"certify-ratio", "--family", "cosh", "--T", "1", "--step", "0.05", "--a", "4"},
       {"certify-ratio", "--family", "cos-k,k=1"}},
      {"distance", {"distance", "--x", "1", "--y", "2.718281828459045"}, {},
       {"distance", "--x", "1"}},
      {"chebyshev", {"chebyshev", "--x", "2", "--n", "3"}, {},
       {"chebyshev", "--h1", "0.5", "--N", "3"}},
      {"golden", {"golden"}, {}, {"golden", "--tol", "1e-300", "--max-iter", "5"}},
      {"report", {"report", "--family", "cosh", "--T", "1", "--step", "0.1"},
       {"report", "--family", quad, "--T", "1", "--step", "0.1"},
       {"report", "--family", "cosh", "--T", "1", "--step", "0.1", "--h", "3"}},
  };
}

}  // namespace

std::vector<PropertyResult> cli_properties() {
  Recorder rec("cli");

  rec.check("round-trip determinism", [] {
    for (const auto& c : cli_cases()) {
      for (const auto* args : {&c.ok, &c.failed}) {
        if (args->empty()) continue;
        std::ostringstream out1, err1, out2, err2;
        const auto first = cli::run(*args, out1, err1);
        const auto replay = cli::replay_arguments(first.report);
        const auto second = cli::run(replay, out2, err2);
        if (first.report.dump() != second.report.dump() || out1.str() != out2.str() ||
            first.exit_code != second.exit_code) {
          return describe(c.command, ": replay differs");
        }
      }
    }
    return std::string();
  });

  rec.check("exit-code contract", [] {
    for (const auto& c : cli_cases()) {
      const std::vector<std::pair<const std::vector<std::string>*, int>> runs{
          {&c.ok, 0}, {&c.failed, 1}, {&c.bad, 2}};
      for (const auto& [args, expected] : runs) {
        if (args->empty()) continue;
        std::ostringstream out, err;
        const auto r = cli::run(*args, out, err);
        if (r.exit_code != expected) {
          return describe(c.command, ": expected exit ", expected, ", got ", r.exit_code,
                          " (", err.str(), ")");
        }
        if (expected == 2 && !r.report.is_null() && !r.report.at("results").is_null()) {
          return describe(c.command, ": input-error report carries results");
        }
        if (expected != 2 && r.report.at("status") != (expected == 0 ? "ok" : "verification-failed")) {
          return describe(c.command, ": status ", r.report.at("status").dump());
        }
      }
    }
    return std::string();
  });

  return rec.take();
}

std::vector<PropertyResult> all_properties() {
  std::vector<PropertyResult> all;
  for (auto* suite : {&core_properties, &dalembert_properties, &calibration_properties,
                      &stability_properties, &geometry_properties, &fixtures_properties,
                      &cli_properties}) {
    auto part = suite();
    all.insert(all.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return all;
}

}  // namespace reccost::testing
