#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace reccost {

/// Coordinate system a handle is written in: the log line t = ln x, or the
/// multiplicative group of positive ratios x.
enum class Domain { log_line, positive_ratios };

enum class HandleKind { builtin_family, sample_table };

std::string_view to_string(Domain domain) noexcept;
std::string_view to_string(HandleKind kind) noexcept;

using Parameter = std::pair<std::string, double>;

/// An immutable, cheaply copyable real function of one real variable.
///
/// Builtin families expose analytic derivatives up to `derivative_capability()`.
/// Sample tables are interpolated by a natural cubic spline over strictly
/// increasing abscissas and refuse to extrapolate. Copies share state, so a
/// handle can be evaluated concurrently from any number of threads.
class FunctionHandle {
 public:
  /// `eval(x, order)` returns the order-th derivative at x, order in
  /// [0, max_derivative].
  using Evaluator = std::function<double(double, int)>;

  static FunctionHandle analytic(std::string name, Domain domain,
                                 Evaluator eval, int max_derivative,
                                 std::vector<Parameter> params = {});

  /// Throws ParameterError for fewer than two nodes, non-finite values or
  /// non-increasing abscissas, DomainError for x <= 0 on the ratio domain.
  static FunctionHandle table(Domain domain, std::vector<double> abscissas,
                              std::vector<double> ordinates,
                              std::string name = "sample-table");

  /// Lifted or otherwise composed handle. `nodes` records the sample
  /// abscissas in this handle's coordinate when the source was a table.
  static FunctionHandle composed(std::string name, Domain domain,
                                 HandleKind kind, Evaluator eval,
                                 int max_derivative, double lower, double upper,
                                 std::vector<double> nodes = {},
                                 std::vector<Parameter> params = {});

  /// Value at x. DomainError if x is not evaluable, OverflowError if the
  /// value is not finite.
  double operator()(double x) const { return derivative(x, 0); }
  double derivative(double x, int order) const;

  bool evaluable(double x) const noexcept;
  /// Throws DomainError unless the closed interval [lo, hi] is evaluable.
  void require_evaluable(double lo, double hi) const;

  Domain domain() const noexcept;
  HandleKind kind() const noexcept;
  int derivative_capability() const noexcept;
  const std::string& name() const noexcept;
  std::span<const Parameter> params() const noexcept;

  double lower() const noexcept;
  double upper() const noexcept;

  /// Sample abscissas in this handle's coordinate; empty for builtins.
  std::span<const double> nodes() const noexcept;
  /// Largest gap between consecutive nodes, 0 for builtins.
  double max_node_spacing() const noexcept;

 private:
  struct State;
  explicit FunctionHandle(std::shared_ptr<const State> state);
  std::shared_ptr<const State> state_;
};

namespace detail {

/// Natural cubic spline on strictly increasing knots.
class CubicSpline {
 public:
  CubicSpline(std::vector<double> xs, std::vector<double> ys);
  double operator()(double x) const;
  double front() const noexcept { return xs_.front(); }
  double back() const noexcept { return xs_.back(); }
  std::span<const double> knots() const noexcept { return xs_; }

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<double> second_;  // second derivatives at the knots
};

}  // namespace detail

}  // namespace reccost
