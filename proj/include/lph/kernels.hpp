#pragma once

#include <vector>

#include "lph/grid.hpp"

namespace lph {

// Lattice-sum machinery for the two control kernels.
//
// tail kernel  T(x) = min(1, |x|^-(d+1)),   T_j(x) = 2^(jd) T(2^j x)
// aniso kernel E(x) = exp(-sqrt(1+|x_s|^2)), x_s = (2^-sigma x_1..x_kappa, x_kappa+1..x_d)
//
// Periodization of T decays only polynomially, so direct image sums cannot
// reach full precision; tail_periodized uses Ewald splitting (Gaussian
// screening + Poisson summation), exact to machine precision at any real
// argument. E decays exponentially and is periodized by direct image
// summation, truncated when a term falls below 1e-16 of the running sum.

// sum_{m in Z^d} |u + m*period|^(-(d+1)); exclude_origin_image drops the
// m = -u/period singular term (u must then be a lattice multiple of period).
double power_tail_lattice_sum(const double* u, int d, double period, bool exclude_origin_image);

// sum_{m in Z^d} T(u + m*period): the lattice sum with min(1,.) caps applied
// to every image closer than 1.
double tail_periodized(const double* u, int d, double period);

// T_j periodized on the grid: value at grid point x is
// sum_m 2^(jd) T(2^j (x + m L)).
GridFunction tail_kernel(const GridSpec& spec, int j);

// T_j(x + 2^-j r) periodized; r is a physical-space vector shared by all j.
GridFunction tail_kernel_shifted(const GridSpec& spec, int j, const std::vector<double>& r);

// integral of T over R^d: vol(B_1) + surface(S^{d-1})  (d <= 3)
double tail_kernel_mass(int d);

// E evaluated at a single point (no periodization), pow = power applied to E.
double aniso_exp(const double* x, int d, int sigma, int kappa);

// E_j periodized on the grid (pow = 1) or its p-th power periodized
// (sum_m E(2^j(x+mL))^pow), used for the ell^p control sums.
GridFunction aniso_exp_kernel(const GridSpec& spec, int sigma, int kappa, int j, double pow = 1.0);

// Per-band kernels k_j(x) = T_j(x + 2^-j r), each normalized to the same
// discrete mass tail_kernel_mass(d).
struct ShiftedKernels {
    GridSpec spec;
    int j_min = 0;
    int j_max = 0;
    std::vector<double> shift;          // r
    std::vector<GridFunction> kernels;  // [j - j_min], normalized
    std::vector<double> raw_mass;       // discrete masses before normalization

    const GridFunction& band(int j) const {
        return kernels[static_cast<std::size_t>(j - j_min)];
    }
};
ShiftedKernels build_shifted_kernels(const GridSpec& spec, int j_min, int j_max,
                                     const std::vector<double>& r);

}  // namespace lph
