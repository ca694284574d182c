#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "reccost/reccost.hpp"
#include "reccost_cli/cli.hpp"

namespace reccost::cli {

using nlohmann::json;

std::string_view to_string(Status status) noexcept {
  switch (status) {
    case Status::ok: return "ok";
    case Status::verification_failed: return "verification-failed";
    case Status::input_error: return "input-error";
  }
  return "input-error";
}

int exit_code(Status status) noexcept {
  switch (status) {
    case Status::ok: return 0;
    case Status::verification_failed: return 1;
    case Status::input_error: return 2;
  }
  return 2;
}

namespace {

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

const std::set<std::string> kFlagOptions{"mirror"};

bool is_set(double v) { return !std::isnan(v); }

struct Options {
  // function source
  std::string family;
  std::string input;
  std::string domain;
  bool mirror = false;
  // points
  double x = kUnset, y = kUnset, t = kUnset, u = kUnset;
  // windows and grids
  double T = 2.0;
  double step = 0.05;
  double window = 2.0;
  double const_tol = kDefaultConstTol;
  double threshold = kUnset;
  double h = kUnset;
  double a = kUnset;
  double fd_h = 1e-4;
  double h0 = kDefaultKappaStep;
  int levels = kDefaultKappaLevels;
  double tol = 1e-10;
  double golden_tol = 1e-12;
  double residual_step = 0.0;
  int n = -1;
  double h1 = kUnset;
  int N = -1;
  double x0 = 1.0;
  int max_iter = 200;
  // outputs
  std::string json_path;
  std::string plot_path;
};

struct PlotRow {
  double t, value, branch, envelope, error;
};

struct Session {
  std::ostream& out;
  json results = json::object();
  json warnings = json::array();
  json grid = nullptr;
  Status status = Status::ok;
  std::vector<PlotRow> plot;
};

void emit(std::ostream& out, std::string_view key, double value) {
  out << key << " = " << std::setprecision(17) << value << '\n';
}

void emit(std::ostream& out, std::string_view key, std::string_view value) {
  out << key << " = " << value << '\n';
}

json grid_json(const GridSpec& g) {
  return {{"half_width", g.half_width},
          {"requested_step", g.requested_step},
          {"step", g.step},
          {"points_per_axis", g.points_per_axis}};
}

Domain parse_domain(const std::string& text) {
  if (text == "log-line") return Domain::log_line;
  if (text == "positive-ratios") return Domain::positive_ratios;
  throw ParameterError("--domain must be log-line or positive-ratios");
}

FunctionHandle load_source(const Options& o) {
  if (o.family.empty() == o.input.empty()) {
    throw ParameterError("exactly one of --family or --input is required");
  }
  std::optional<Domain> wanted;
  if (!o.domain.empty()) wanted = parse_domain(o.domain);
  if (!o.input.empty()) return load_samples(o.input, wanted, o.mirror);

  FunctionHandle h = make_family(parse_family_spec(o.family));
  if (wanted && *wanted != h.domain()) {
    if (*wanted == Domain::log_line) return lift_to_log(h);
    throw ParameterError("family lives on the log line and has no ratio form");
  }
  return h;
}

void describe_source(Session& s, const FunctionHandle& h) {
  s.results["function"] = {{"name", h.name()},
                           {"domain", to_string(h.domain())},
                           {"kind", to_string(h.kind())}};
}

json curvature_json(const CurvatureEstimate& c) {
  json table = json::array();
  for (const auto& r : c.ratio_table) table.push_back({{"step", r.step}, {"q", r.q}});
  return {{"kappa", c.kappa},
          {"uncertainty", c.uncertainty},
          {"levels", c.levels},
          {"levels_requested", c.levels_requested},
          {"precision_warning", c.precision_warning},
          {"ratio_table", table}};
}

json defect_json(const DefectReport& d) {
  return {{"epsilon", d.epsilon},
          {"argmax", {{"t", d.argmax_t}, {"u", d.argmax_u}}},
          {"grid", grid_json(d.grid)},
          {"count", d.count}};
}

json certificate_json(const StabilityCertificate& c) {
  json j = {
      {"inputs",
       {{"T", c.inputs.T},
        {"h", c.inputs.h},
        {"epsilon", c.inputs.epsilon},
        {"B", c.inputs.B},
        {"K", c.inputs.K},
        {"a", c.inputs.a}}},
      {"delta", c.delta},
      {"envelope",
       {{"form", c.unit_curvature_form ? "delta*J(x)"
                                       : "(delta/a)*(cosh(sqrt(a)*|t|)-1)"},
        {"delta", c.envelope.delta},
        {"a", c.envelope.a}}},
      {"max_observed_error", c.max_observed_error},
      {"max_envelope_margin", c.max_envelope_margin},
      {"worst_margin_t", c.worst_margin_t},
      {"sweep_limit", c.sweep_limit},
      {"sweep_points", c.sweep.size()},
      {"verified", c.verified},
      {"ratio_form", c.ratio_form},
      {"unit_curvature_form", c.unit_curvature_form},
      {"a_estimated", c.a_estimated},
      {"K_estimated", c.K_estimated},
      {"h_optimized", c.h_optimized},
      {"defect", defect_json(c.defect)},
  };
  if (c.curvature) j["curvature"] = curvature_json(*c.curvature);
  return j;
}

void print_certificate(std::ostream& out, const StabilityCertificate& c) {
  emit(out, "a", c.inputs.a);
  emit(out, "epsilon", c.inputs.epsilon);
  emit(out, "B", c.inputs.B);
  emit(out, "K", c.inputs.K);
  emit(out, "h", c.inputs.h);
  emit(out, "delta", c.delta);
  emit(out, "envelope", c.unit_curvature_form ? "delta*J(x)"
                                              : "(delta/a)*(cosh(sqrt(a)*|t|)-1)");
  emit(out, "max_observed_error", c.max_observed_error);
  emit(out, "min_envelope_margin", c.max_envelope_margin);
  emit(out, "verified", c.verified ? "true" : "false");
}

CertifyOptions certify_options(const Options& o) {
  CertifyOptions opts;
  if (is_set(o.h)) opts.h_choice = o.h;
  if (is_set(o.a)) opts.a_override = o.a;
  return opts;
}

void record_certificate(Session& s, const StabilityCertificate& c) {
  s.results["certificate"] = certificate_json(c);
  s.grid = grid_json(c.defect.grid);
  for (const auto& d : c.diagnostics) s.warnings.push_back(d);
  for (const auto& p : c.sweep) {
    s.plot.push_back({p.t, p.value, p.branch, p.envelope, p.error});
  }
}

// Runs classify; returns false (and records the failure) if rejected.
bool run_classify(Session& s, const FunctionHandle& H, const ClassifyOptions& opts) {
  try {
    const auto c = classify(H, opts);
    json j = {{"branch", to_string(c.branch)},
              {"k", c.k ? json(*c.k) : json(nullptr)},
              {"residual", c.residual},
              {"kappa_used", c.kappa_used},
              {"threshold", c.threshold},
              {"classified", true}};
    if (c.curvature) {
      j["curvature"] = curvature_json(*c.curvature);
      if (c.curvature->precision_warning) {
        s.warnings.push_back("curvature estimate is noise-limited");
      }
    }
    s.results["classification"] = j;
    emit(s.out, "branch", to_string(c.branch));
    if (c.k) emit(s.out, "k", *c.k);
    emit(s.out, "residual", c.residual);
    const SymmetricGrid grid(opts.window_T, opts.residual_grid_step > 0.0
                                                ? opts.residual_grid_step
                                                : opts.window_T / 100.0);
    s.grid = grid_json({grid.half_width(), grid.requested_step(), grid.step(), grid.size()});
    for (double t : grid.points()) {
      const double v = H(t);
      const double b = branch_value(c.branch, c.k.value_or(0.0), t);
      s.plot.push_back({t, v, b, kUnset, std::abs(v - b)});
    }
    return true;
  } catch (const ClassificationError& e) {
    s.results["classification"] = {{"classified", false},
                                   {"reason", e.what()},
                                   {"nearest_branch", e.nearest_branch()},
                                   {"k", e.k()},
                                   {"residual", e.residual()},
                                   {"threshold", e.threshold()}};
    s.out << e.what() << '\n';
  } catch (const PreconditionError& e) {
    s.results["classification"] = {{"classified", false}, {"reason", e.what()}};
    s.out << e.what() << '\n';
  }
  return false;
}

// ---- subcommand handlers -------------------------------------------------

void cmd_eval(const Options& o, Session& s) {
  if (is_set(o.x) == is_set(o.t)) throw ParameterError("eval needs exactly one of --x or --t");
  const PositiveRatio x(is_set(o.x) ? o.x : std::exp(LogCoord(o.t).value()));
  const LogCoord t = is_set(o.t) ? LogCoord(o.t) : LogCoord::of(x);
  const double J = canonical_cost(x).value();
  const auto forms = log_forms(t);
  const auto means = am_gm_decomposition(x);
  const double breg = bregman_divergence(t);
  const double weight = metric_weight(t);
  s.results = {{"x", x.value()}, {"t", t.value()},   {"J", J},
               {"G", forms.G},   {"H", forms.H},     {"am", means.am},
               {"gm", means.gm}, {"bregman", breg},  {"metric_weight", weight}};
  emit(s.out, "x", x.value());
  emit(s.out, "J", J);
  emit(s.out, "t", t.value());
  emit(s.out, "G", forms.G);
  emit(s.out, "H", forms.H);
  emit(s.out, "AM", means.am);
  emit(s.out, "GM", means.gm);
  emit(s.out, "bregman", breg);
  emit(s.out, "metric_weight", weight);
}

void cmd_defect(const Options& o, Session& s) {
  const FunctionHandle h = load_source(o);
  describe_source(s, h);
  const bool by_ratio = is_set(o.x) || is_set(o.y);
  const bool by_log = is_set(o.t) || is_set(o.u);
  if (by_ratio == by_log) throw ParameterError("defect needs --t/--u or --x/--y");
  double t = 0.0, u = 0.0;
  if (by_ratio) {
    if (!is_set(o.x) || !is_set(o.y)) throw ParameterError("defect needs both --x and --y");
    t = LogCoord::of(PositiveRatio(o.x)).value();
    u = LogCoord::of(PositiveRatio(o.y)).value();
  } else {
    if (!is_set(o.t) || !is_set(o.u)) throw ParameterError("defect needs both --t and --u");
    t = LogCoord(o.t).value();
    u = LogCoord(o.u).value();
  }
  const double dlog = defect_log(as_log_line(h), t, u);
  s.results["t"] = t;
  s.results["u"] = u;
  s.results["defect_log"] = dlog;
  emit(s.out, "defect_log", dlog);
  if (h.domain() == Domain::positive_ratios) {
    const PositiveRatio x(by_ratio ? o.x : std::exp(t));
    const PositiveRatio y(by_ratio ? o.y : std::exp(u));
    const double dratio = defect_ratio(h, x, y);
    s.results["x"] = x.value();
    s.results["y"] = y.value();
    s.results["defect_ratio"] = dratio;
    emit(s.out, "defect_ratio", dratio);
  }
}

void cmd_sup_defect(const Options& o, Session& s) {
  const FunctionHandle h = load_source(o);
  describe_source(s, h);
  const auto d = sup_defect(as_log_line(h), o.T, o.step);
  s.results["defect"] = defect_json(d);
  s.grid = grid_json(d.grid);
  emit(s.out, "epsilon", d.epsilon);
  emit(s.out, "argmax_t", d.argmax_t);
  emit(s.out, "argmax_u", d.argmax_u);
  emit(s.out, "grid_step", d.grid.step);
  emit(s.out, "samples", static_cast<double>(d.count));
}

void cmd_identities(const Options& o, Session& s) {
  const FunctionHandle h = load_source(o);
  describe_source(s, h);
  const auto v = identity_report(as_log_line(h), o.T, o.step);
  s.results["identities"] = {{"product_identity", v.product_identity},
                             {"difference_square", v.difference_square},
                             {"double_angle", v.double_angle},
                             {"evenness", v.evenness}};
  s.grid = grid_json(v.grid);
  emit(s.out, "product_identity", v.product_identity);
  emit(s.out, "difference_square", v.difference_square);
  emit(s.out, "double_angle", v.double_angle);
  emit(s.out, "evenness", v.evenness);
}

void cmd_ode(const Options& o, Session& s) {
  if (!is_set(o.a)) throw ParameterError("ode-residual needs --a");
  const FunctionHandle h = load_source(o);
  describe_source(s, h);
  const double r = ode_residual(as_log_line(h), o.a, o.T, o.step, o.fd_h);
  s.results["ode_residual"] = r;
  emit(s.out, "ode_residual", r);
}

void cmd_calibrate(const Options& o, Session& s) {
  const FunctionHandle h = load_source(o);
  describe_source(s, h);
  const auto c = estimate_kappa(as_log_line(h), o.h0, o.levels);
  s.results["curvature"] = curvature_json(c);
  if (c.precision_warning) s.warnings.push_back("curvature estimate is noise-limited");
  emit(s.out, "kappa", c.kappa);
  emit(s.out, "uncertainty", c.uncertainty);
  emit(s.out, "levels", static_cast<double>(c.levels));
}

ClassifyOptions classify_options(const Options& o) {
  ClassifyOptions opts;
  opts.window_T = o.window;
  opts.const_tol = o.const_tol;
  opts.residual_grid_step = o.residual_step;
  if (is_set(o.threshold)) opts.acceptance_threshold = o.threshold;
  return opts;
}

void cmd_classify(const Options& o, Session& s) {
  const FunctionHandle h = load_source(o);
  describe_source(s, h);
  if (!run_classify(s, as_log_line(h), classify_options(o))) {
    s.status = Status::verification_failed;
  }
}

void finish_certificate(Session& s, const StabilityCertificate& c) {
  record_certificate(s, c);
  print_certificate(s.out, c);
  if (!c.verified) s.status = Status::verification_failed;
}

void cmd_certify(const Options& o, Session& s, bool ratio) {
  const FunctionHandle h = load_source(o);
  describe_source(s, h);
  try {
    if (ratio) {
      if (h.domain() != Domain::positive_ratios) {
        throw ParameterError("certify-ratio needs a positive-ratio function");
      }
      finish_certificate(s, certify_ratio(h, o.T, o.step, certify_options(o)));
    } else {
      finish_certificate(s, certify(as_log_line(h), o.T, o.step, certify_options(o)));
    }
  } catch (const PreconditionError& e) {
    s.results["certificate"] = {{"verified", false}, {"reason", e.what()}};
    s.out << e.what() << '\n';
    s.status = Status::verification_failed;
  }
}

std::size_t eval_budget() {
  const char* env = std::getenv("RECCOST_EVAL_BUDGET");
  if (env == nullptr || *env == '\0') return kDefaultEvalBudget;
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (errno != 0 || *end != '\0' || v < 3) {
    throw ParameterError("RECCOST_EVAL_BUDGET must be an integer >= 3");
  }
  return static_cast<std::size_t>(v);
}

void cmd_distance(const Options& o, Session& s) {
  if (!is_set(o.x) || !is_set(o.y)) throw ParameterError("distance needs --x and --y");
  const std::size_t budget = eval_budget();
  const auto d = distance(PositiveRatio(o.x), PositiveRatio(o.y), o.tol, budget);
  s.results = {{"value", d.value},
               {"abs_error_estimate", d.abs_error_estimate},
               {"t_from", d.t_from},
               {"t_to", d.t_to},
               {"evaluations", d.evaluations},
               {"log_distance", std::abs(d.t_to - d.t_from)}};
  s.results["eval_budget"] = budget;
  emit(s.out, "distance", d.value);
  emit(s.out, "abs_error_estimate", d.abs_error_estimate);
  emit(s.out, "evaluations", static_cast<double>(d.evaluations));
}

void cmd_chebyshev(const Options& o, Session& s) {
  if (is_set(o.h1) || o.N >= 0) {
    if (!is_set(o.h1) || o.N < 0) throw ParameterError("chebyshev needs both --h1 and --N");
    const auto seq = chebyshev_sequence(o.h1, o.N);
    s.results = {{"H1", o.h1}, {"N", o.N}, {"sequence", seq}};
    for (std::size_t i = 0; i < seq.size(); ++i) emit(s.out, "H_" + std::to_string(i), seq[i]);
    return;
  }
  if (!is_set(o.x) || o.n < 0) throw ParameterError("chebyshev needs --x and --n (or --h1 and --N)");
  const auto c = chebyshev_cost(PositiveRatio(o.x), o.n);
  s.results = {{"x", c.x},
               {"n", c.n},
               {"via_identity", c.via_identity},
               {"direct", c.direct},
               {"rel_discrepancy", c.rel_discrepancy}};
  emit(s.out, "via_identity", c.via_identity);
  emit(s.out, "direct", c.direct);
  emit(s.out, "rel_discrepancy", c.rel_discrepancy);
}

void cmd_golden(const Options& o, Session& s) {
  const auto g = golden_fixed_point(PositiveRatio(o.x0), o.golden_tol, o.max_iter);
  s.results = {{"phi", g.phi}, {"iterations", g.iterations}, {"cost_at_phi", g.cost_at_phi}};
  emit(s.out, "phi", g.phi);
  emit(s.out, "iterations", static_cast<double>(g.iterations));
  emit(s.out, "cost_at_phi", g.cost_at_phi);
}

void cmd_report(const Options& o, Session& s) {
  const FunctionHandle h = load_source(o);
  describe_source(s, h);
  const FunctionHandle H = as_log_line(h);

  s.out << "[sup-defect]\n";
  const auto d = sup_defect(H, o.T, o.step);
  s.results["defect"] = defect_json(d);
  s.grid = grid_json(d.grid);
  emit(s.out, "epsilon", d.epsilon);

  s.out << "[identities]\n";
  const auto v = identity_report(H, o.T, o.step);
  s.results["identities"] = {{"product_identity", v.product_identity},
                             {"difference_square", v.difference_square},
                             {"double_angle", v.double_angle},
                             {"evenness", v.evenness}};
  emit(s.out, "product_identity", v.product_identity);
  emit(s.out, "difference_square", v.difference_square);
  emit(s.out, "double_angle", v.double_angle);
  emit(s.out, "evenness", v.evenness);

  s.out << "[calibrate]\n";
  const auto c = estimate_kappa(H, std::min(o.h0, o.T), o.levels);
  s.results["curvature"] = curvature_json(c);
  emit(s.out, "kappa", c.kappa);

  s.out << "[ode-residual]\n";
  const double r = ode_residual(H, c.kappa, o.T, o.step, o.fd_h);
  s.results["ode_residual"] = r;
  emit(s.out, "ode_residual", r);

  s.out << "[classify]\n";
  ClassifyOptions copts;
  copts.window_T = o.T;
  copts.const_tol = o.const_tol;
  if (is_set(o.threshold)) copts.acceptance_threshold = o.threshold;
  const bool classified = run_classify(s, H, copts);
  s.plot.clear();

  s.out << "[certify]\n";
  try {
    const auto cert = h.domain() == Domain::positive_ratios
                          ? certify_ratio(h, o.T, o.step, certify_options(o))
                          : certify(H, o.T, o.step, certify_options(o));
    finish_certificate(s, cert);
  } catch (const PreconditionError& e) {
    s.results["certificate"] = {{"verified", false}, {"reason", e.what()}};
    s.out << e.what() << '\n';
    s.status = Status::verification_failed;
  }
  if (!classified) s.status = Status::verification_failed;
}

void write_plot(const std::string& path, const std::vector<PlotRow>& rows) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot write plot file " + path);
  out << "t,H,branch,envelope,error\n" << std::setprecision(17);
  for (const auto& r : rows) {
    out << r.t << ',' << r.value << ',' << r.branch << ',';
    if (!std::isnan(r.envelope)) out << r.envelope;
    out << ',' << r.error << '\n';
  }
}

void add_source(CLI::App* sub, Options& o) {
  sub->add_option("--family", o.family, "builtin family, e.g. 'family=cosh-lambda, lambda=2'");
  sub->add_option("--input", o.input, "CSV sample file with header t,H or x,F");
  sub->add_option("--domain", o.domain, "log-line or positive-ratios");
  sub->add_flag("--mirror", o.mirror, "even/reciprocal extension of a one-sided table");
}

void add_window(CLI::App* sub, Options& o) {
  sub->add_option("--T", o.T, "window half-width")->capture_default_str();
  sub->add_option("--step", o.step, "grid spacing")->capture_default_str();
}

}  // namespace

std::vector<std::string> replay_arguments(const json& report) {
  std::vector<std::string> args{report.at("command").get<std::string>()};
  for (const auto& [key, value] : report.at("inputs").items()) {
    args.push_back("--" + key);
    if (kFlagOptions.count(key) == 0) args.push_back(value.get<std::string>());
  }
  return args;
}

RunResult run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"reccost: verification toolkit for the canonical reciprocal cost", "reccost"};
  app.set_help_flag("--help", "print this help message and exit");
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--json", o.json_path, "write the JSON run report to PATH");
  app.add_option("--plot-csv", o.plot_path, "write t,H,branch,envelope,error columns to PATH");

  std::map<std::string, std::function<void(Session&)>> handlers;

  auto* eval = app.add_subcommand("eval", "canonical cost, log forms, AM-GM and Bregman at one point");
  eval->add_option("--x", o.x, "positive ratio");
  eval->add_option("--t", o.t, "log coordinate");
  handlers["eval"] = [&](Session& s) { cmd_eval(o, s); };

  auto* defect = app.add_subcommand("defect", "d'Alembert / composition-law defect at one point");
  add_source(defect, o);
  defect->add_option("--t", o.t);
  defect->add_option("--u", o.u);
  defect->add_option("--x", o.x);
  defect->add_option("--y", o.y);
  handlers["defect"] = [&](Session& s) { cmd_defect(o, s); };

  auto* sup = app.add_subcommand("sup-defect", "grid supremum of |defect| on [-T,T]^2");
  add_source(sup, o);
  add_window(sup, o);
  handlers["sup-defect"] = [&](Session& s) { cmd_sup_defect(o, s); };

  auto* ident = app.add_subcommand("identities", "violations of the product, difference-square, double-angle and evenness identities");
  add_source(ident, o);
  add_window(ident, o);
  handlers["identities"] = [&](Session& s) { cmd_identities(o, s); };

  auto* ode = app.add_subcommand("ode-residual", "sup |D2 H - a H| with central second differences");
  add_source(ode, o);
  add_window(ode, o);
  ode->add_option("--a", o.a, "curvature coefficient");
  ode->add_option("--fd-h", o.fd_h, "difference spacing")->capture_default_str();
  handlers["ode-residual"] = [&](Session& s) { cmd_ode(o, s); };

  auto* cal = app.add_subcommand("calibrate", "extrapolated log-curvature kappa");
  add_source(cal, o);
  cal->add_option("--h0", o.h0, "largest step")->capture_default_str();
  cal->add_option("--levels", o.levels, "extrapolation levels")->capture_default_str();
  handlers["calibrate"] = [&](Session& s) { cmd_calibrate(o, s); };

  auto* cls = app.add_subcommand("classify", "assign the zero / constant-one / cos / cosh branch");
  add_source(cls, o);
  cls->add_option("--window", o.window, "classification half-width")->capture_default_str();
  cls->add_option("--const-tol", o.const_tol)->capture_default_str();
  cls->add_option("--step", o.residual_step, "residual grid spacing (default window/100)");
  cls->add_option("--threshold", o.threshold, "acceptance threshold on the residual");
  handlers["classify"] = [&](Session& s) { cmd_classify(o, s); };

  for (const bool ratio : {false, true}) {
    auto* c = app.add_subcommand(ratio ? "certify-ratio" : "certify",
                                 ratio ? "stability certificate on positive ratios"
                                       : "stability certificate on the log line");
    add_source(c, o);
    add_window(c, o);
    c->add_option("--h", o.h, "difference step (default: minimizer of delta)");
    c->add_option("--a", o.a, "curvature override (default: estimated)");
    handlers[c->get_name()] = [&o, ratio](Session& s) { cmd_certify(o, s, ratio); };
  }

  auto* dist = app.add_subcommand("distance", "Riemannian distance d_J(x, y)");
  dist->add_option("--x", o.x);
  dist->add_option("--y", o.y);
  dist->add_option("--tol", o.tol, "absolute quadrature tolerance")->capture_default_str();
  handlers["distance"] = [&](Session& s) { cmd_distance(o, s); };

  auto* cheb = app.add_subcommand("chebyshev", "J(x^n) = T_n(J(x)+1) - 1, or the H_n sequence");
  cheb->add_option("--x", o.x);
  cheb->add_option("--n", o.n);
  cheb->add_option("--h1", o.h1);
  cheb->add_option("--N", o.N);
  handlers["chebyshev"] = [&](Session& s) { cmd_chebyshev(o, s); };

  auto* gold = app.add_subcommand("golden", "fixed point of x -> 1 + 1/x");
  gold->add_option("--x0", o.x0)->capture_default_str();
  gold->add_option("--tol", o.golden_tol)->capture_default_str();
  gold->add_option("--max-iter", o.max_iter)->capture_default_str();
  handlers["golden"] = [&](Session& s) { cmd_golden(o, s); };

  auto* rep = app.add_subcommand("report", "full suite on one function");
  add_source(rep, o);
  add_window(rep, o);
  rep->add_option("--const-tol", o.const_tol)->capture_default_str();
  rep->add_option("--threshold", o.threshold);
  rep->add_option("--h", o.h);
  rep->add_option("--a", o.a);
  handlers["report"] = [&](Session& s) { cmd_report(o, s); };

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return {code == 0 ? 0 : exit_code(Status::input_error), nullptr};
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string command = chosen->get_name();
  json inputs = json::object();
  for (const CLI::Option* opt : chosen->get_options()) {
    if (opt->count() == 0 || opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (kFlagOptions.count(name) != 0) {
      inputs[name] = "true";
    } else {
      inputs[name] = opt->results().empty() ? std::string() : opt->results().back();
    }
  }

  Session session{out, json::object(), json::array(), nullptr, Status::ok, {}};
  std::string error_message;
  try {
    handlers.at(command)(session);
  } catch (const Error& e) {
    session.status = Status::input_error;
    error_message = e.what();
  } catch (const std::exception& e) {
    session.status = Status::input_error;
    error_message = e.what();
  }

  json diagnostics = {{"warnings", session.warnings}};
  if (!session.grid.is_null()) diagnostics["grid"] = session.grid;
  if (session.status == Status::input_error) {
    err << "error: " << error_message << '\n';
    diagnostics["error"] = error_message;
    session.results = nullptr;
  }
  for (const auto& w : session.warnings) err << "warning: " << w.get<std::string>() << '\n';

  RunResult result;
  result.report = {{"command", command},
                   {"inputs", inputs},
                   {"results", session.results},
                   {"diagnostics", diagnostics},
                   {"status", to_string(session.status)}};
  result.exit_code = exit_code(session.status);

  try {
    if (!o.json_path.empty()) {
      std::ofstream file(o.json_path);
      if (!file) throw ParameterError("cannot write report file " + o.json_path);
      file << result.report.dump(2) << '\n';
    }
    if (!o.plot_path.empty() && session.status != Status::input_error) {
      write_plot(o.plot_path, session.plot);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    result.exit_code = exit_code(Status::input_error);
  }
  return result;
}

}  // namespace reccost::cli
