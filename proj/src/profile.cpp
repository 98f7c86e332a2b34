#include "lph/profile.hpp"

#include <cmath>

namespace lph {

double smooth_step(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / u);
    const double b = std::exp(-1.0 / (1.0 - u));
    return a / (a + b);
}

double AnnularProfile::operator()(double t) const {
    if (t <= 0.5 || t >= 2.0) return 0.0;
    return smooth_step((t - 0.5) / 0.25) * smooth_step((2.0 - t) / 0.5);
}

double AnnularProfile::dyadic_sum(double t) const {
    // rho(2^j t) != 0 needs 1/2 < 2^j t < 2; scan a safe window around -log2 t.
    const int j0 = static_cast<int>(std::floor(-std::log2(t)));
    double s = 0.0;
    for (int j = j0 - 2; j <= j0 + 2; ++j) s += (*this)(std::ldexp(t, j));
    return s;
}

AnnularProfile build_profile() { return AnnularProfile{}; }

}  // namespace lph
