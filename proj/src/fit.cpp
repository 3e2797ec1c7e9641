#include "tau2/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace ntw {

FitResult least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("fit needs equal-length samples");
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("fit needs at least two points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit needs distinct abscissae");
    FitResult f;
    f.n_points = n;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = y[i] - f.intercept - f.slope * x[i];
        sse += r * r;
    }
    f.r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;
    f.slope_stderr = n > 2 ? std::sqrt(sse / double(n - 2) / sxx) : 0.0;
    return f;
}

}  // namespace ntw
