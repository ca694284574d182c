#pragma once

#include <cstddef>
#include <vector>

namespace reccost {

/// Uniform inclusive grid {-T, -T + step, ..., T} on a symmetric window.
///
/// The requested step is rounded so that it divides 2T exactly; `step()`
/// reports the effective spacing. Points are mirrored so that
/// `at(size() - 1 - i) == -at(i)` holds bit for bit.
class SymmetricGrid {
 public:
  /// Throws ParameterError unless T > 0 and 0 < step <= 2T.
  SymmetricGrid(double half_width, double requested_step);

  double half_width() const noexcept { return half_width_; }
  double requested_step() const noexcept { return requested_step_; }
  double step() const noexcept { return step_; }
  std::size_t intervals() const noexcept { return intervals_; }
  std::size_t size() const noexcept { return points_.size(); }
  double at(std::size_t i) const { return points_[i]; }
  const std::vector<double>& points() const noexcept { return points_; }

 private:
  double half_width_;
  double requested_step_;
  double step_;
  std::size_t intervals_;
  std::vector<double> points_;
};

}  // namespace reccost
