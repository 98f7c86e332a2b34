#pragma once

namespace lph {

// C^inf monotone step: 0 for u <= 0, 1 for u >= 1.
// s(u) = e^{-1/u} / (e^{-1/u} + e^{-1/(1-u)}) on (0,1).
double smooth_step(double u);

// Radial annular profile: supported on (1/2, 2), identically 1 on
// [3/4, 3/2], values in [0,1], smooth transitions built from smooth_step.
// Its dyadic dilates satisfy 1 <= sum_j rho(2^j t) <= 2 for every t > 0.
struct AnnularProfile {
    double operator()(double t) const;

    // sum over j in Z of rho(2^j t); at most two terms are nonzero.
    double dyadic_sum(double t) const;
};

AnnularProfile build_profile();

}  // namespace lph
