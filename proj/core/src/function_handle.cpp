#include "reccost/function_handle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "reccost/errors.hpp"

namespace reccost {

std::string_view to_string(Domain domain) noexcept {
  return domain == Domain::log_line ? "log-line" : "positive-ratios";
}

std::string_view to_string(HandleKind kind) noexcept {
  return kind == HandleKind::builtin_family ? "builtin-family" : "sample-table";
}

struct FunctionHandle::State {
  std::string name;
  Domain domain;
  HandleKind kind;
  Evaluator eval;
  int max_derivative;
  double lower;
  double upper;
  std::vector<double> nodes;
  std::vector<Parameter> params;
  double spacing = 0.0;
};

FunctionHandle::FunctionHandle(std::shared_ptr<const State> state)
    : state_(std::move(state)) {}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double natural_lower(Domain domain) {
  return domain == Domain::log_line ? -kInf : 0.0;
}

double largest_gap(const std::vector<double>& nodes) {
  double gap = 0.0;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    gap = std::max(gap, nodes[i] - nodes[i - 1]);
  }
  return gap;
}

}  // namespace

FunctionHandle FunctionHandle::analytic(std::string name, Domain domain,
                                        Evaluator eval, int max_derivative,
                                        std::vector<Parameter> params) {
  return composed(std::move(name), domain, HandleKind::builtin_family,
                  std::move(eval), max_derivative, natural_lower(domain), kInf,
                  {}, std::move(params));
}

FunctionHandle FunctionHandle::composed(std::string name, Domain domain,
                                        HandleKind kind, Evaluator eval,
                                        int max_derivative, double lower,
                                        double upper, std::vector<double> nodes,
                                        std::vector<Parameter> params) {
  if (!eval) throw ParameterError("function handle needs an evaluator");
  if (max_derivative < 0) throw ParameterError("negative derivative order");
  if (!(lower <= upper)) throw ParameterError("empty evaluation range");
  auto state = std::make_shared<State>();
  state->name = std::move(name);
  state->domain = domain;
  state->kind = kind;
  state->eval = std::move(eval);
  state->max_derivative = max_derivative;
  state->lower = lower;
  state->upper = upper;
  state->spacing = largest_gap(nodes);
  state->nodes = std::move(nodes);
  state->params = std::move(params);
  return FunctionHandle(std::move(state));
}

FunctionHandle FunctionHandle::table(Domain domain,
                                     std::vector<double> abscissas,
                                     std::vector<double> ordinates,
                                     std::string name) {
  if (abscissas.size() != ordinates.size()) {
    throw ParameterError("sample table: abscissa and ordinate counts differ");
  }
  if (abscissas.size() < 2) {
    throw ParameterError("sample table needs at least two nodes");
  }
  for (std::size_t i = 0; i < abscissas.size(); ++i) {
    if (!std::isfinite(abscissas[i]) || !std::isfinite(ordinates[i])) {
      std::ostringstream os;
      os << "sample table: non-finite value at node " << i;
      throw ParameterError(os.str());
    }
    if (domain == Domain::positive_ratios && abscissas[i] <= 0.0) {
      std::ostringstream os;
      os << "sample table: ratio abscissa must be positive at node " << i;
      throw DomainError(os.str());
    }
    if (i > 0 && !(abscissas[i] > abscissas[i - 1])) {
      std::ostringstream os;
      os << "sample table: abscissas not strictly increasing at node " << i;
      throw ParameterError(os.str());
    }
  }
  const double lo = abscissas.front();
  const double hi = abscissas.back();
  auto spline =
      std::make_shared<const detail::CubicSpline>(abscissas, std::move(ordinates));
  return composed(
      std::move(name), domain, HandleKind::sample_table,
      [spline](double x, int) { return (*spline)(x); }, 0, lo, hi,
      std::move(abscissas));
}

double FunctionHandle::derivative(double x, int order) const {
  if (!evaluable(x)) {
    std::ostringstream os;
    os.precision(17);
    os << name() << ": argument " << x << " outside evaluable range";
    throw DomainError(os.str());
  }
  if (order < 0 || order > state_->max_derivative) {
    std::ostringstream os;
    os << name() << ": derivative of order " << order
       << " not available (capability " << state_->max_derivative << ")";
    throw DomainError(os.str());
  }
  const double value = state_->eval(x, order);
  if (!std::isfinite(value)) {
    std::ostringstream os;
    os.precision(17);
    os << name() << ": value at " << x << " is not representable";
    throw OverflowError(os.str());
  }
  return value;
}

bool FunctionHandle::evaluable(double x) const noexcept {
  if (!std::isfinite(x)) return false;
  if (state_->domain == Domain::positive_ratios && x <= 0.0) return false;
  return x >= state_->lower && x <= state_->upper;
}

void FunctionHandle::require_evaluable(double lo, double hi) const {
  if (!evaluable(lo) || !evaluable(hi)) {
    std::ostringstream os;
    os.precision(17);
    os << name() << ": interval [" << lo << ", " << hi
       << "] is not inside the evaluable range [" << lower() << ", " << upper()
       << "]";
    throw DomainError(os.str());
  }
}

Domain FunctionHandle::domain() const noexcept { return state_->domain; }
HandleKind FunctionHandle::kind() const noexcept { return state_->kind; }
int FunctionHandle::derivative_capability() const noexcept {
  return state_->max_derivative;
}
const std::string& FunctionHandle::name() const noexcept { return state_->name; }
std::span<const Parameter> FunctionHandle::params() const noexcept {
  return state_->params;
}
double FunctionHandle::lower() const noexcept { return state_->lower; }
double FunctionHandle::upper() const noexcept { return state_->upper; }
std::span<const double> FunctionHandle::nodes() const noexcept {
  return state_->nodes;
}
double FunctionHandle::max_node_spacing() const noexcept {
  return state_->spacing;
}

namespace detail {

CubicSpline::CubicSpline(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)), second_(xs_.size(), 0.0) {
  const std::size_t n = xs_.size();
  if (n < 3) return;
  // Tridiagonal system for interior second derivatives, natural ends.
  std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = xs_[i] - xs_[i - 1];
    const double h1 = xs_[i + 1] - xs_[i];
    diag[i] = 2.0 * (h0 + h1);
    upper[i] = h1;
    rhs[i] = 6.0 * ((ys_[i + 1] - ys_[i]) / h1 - (ys_[i] - ys_[i - 1]) / h0);
  }
  for (std::size_t i = 2; i + 1 < n; ++i) {
    const double lower = xs_[i] - xs_[i - 1];
    const double m = lower / diag[i - 1];
    diag[i] -= m * upper[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    second_[i] = (rhs[i] - upper[i] * second_[i + 1]) / diag[i];
  }
}

double CubicSpline::operator()(double x) const {
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t hi = static_cast<std::size_t>(it - xs_.begin());
  if (hi == 0) hi = 1;
  if (hi >= xs_.size()) hi = xs_.size() - 1;
  const std::size_t lo = hi - 1;
  const double h = xs_[hi] - xs_[lo];
  const double a = (xs_[hi] - x) / h;
  const double b = (x - xs_[lo]) / h;
  return a * ys_[lo] + b * ys_[hi] +
         ((a * a * a - a) * second_[lo] + (b * b * b - b) * second_[hi]) *
             (h * h) / 6.0;
}

}  // namespace detail

}  // namespace reccost
