#pragma once

#include "reccost/calibration.hpp"
#include "reccost/cost.hpp"
#include "reccost/dalembert.hpp"
#include "reccost/errors.hpp"
#include "reccost/fixtures.hpp"
#include "reccost/function_handle.hpp"
#include "reccost/geometry.hpp"
#include "reccost/grid.hpp"
#include "reccost/stability.hpp"
