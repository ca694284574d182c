#include "reccost/errors.hpp"

#include <utility>

namespace reccost {

ClassificationError::ClassificationError(const std::string& what,
                                         std::string nearest_branch, double k,
                                         double residual, double threshold)
    : Error(what),
      nearest_branch_(std::move(nearest_branch)),
      k_(k),
      residual_(residual),
      threshold_(threshold) {}

}  // namespace reccost
