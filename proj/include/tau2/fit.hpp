#pragma once

#include <cstddef>
#include <vector>

namespace ntw {

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double r2 = 0.0;
    std::size_t n_points = 0;
};

// ordinary least squares y = intercept + slope x; needs at least two distinct x
FitResult least_squares(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace ntw
