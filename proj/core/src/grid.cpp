#include "reccost/grid.hpp"

#include <algorithm>
#include <cmath>

#include "reccost/errors.hpp"

namespace reccost {

SymmetricGrid::SymmetricGrid(double half_width, double requested_step)
    : half_width_(half_width), requested_step_(requested_step) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw ParameterError("grid half-width must be positive and finite");
  }
  if (!(requested_step > 0.0) || requested_step > 2.0 * half_width) {
    throw ParameterError("grid step must lie in (0, 2T]");
  }
  const double ratio = 2.0 * half_width / requested_step;
  if (ratio > 1e8) throw ParameterError("grid too fine (more than 1e8 cells)");
  intervals_ = static_cast<std::size_t>(std::max(1.0, std::round(ratio)));
  step_ = 2.0 * half_width / static_cast<double>(intervals_);

  points_.resize(intervals_ + 1);
  for (std::size_t i = 0; 2 * i <= intervals_; ++i) {
    const double t = -half_width + static_cast<double>(i) * step_;
    points_[i] = t;
    points_[intervals_ - i] = -t;
  }
  if (intervals_ % 2 == 0) points_[intervals_ / 2] = 0.0;
  points_.front() = -half_width;
  points_.back() = half_width;
}

}  // namespace reccost
