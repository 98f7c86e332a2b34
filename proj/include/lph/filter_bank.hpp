#pragma once

#include <vector>

#include "lph/grid.hpp"
#include "lph/profile.hpp"

namespace lph {

// Dyadic annular multiplier family Delta_hat(2^-j xi) over a finite band
// range. Band j is supported on integer frequencies 2^(j-1) < |xi| < 2^(j+1);
// the multipliers sum to 1 on every covered frequency and vanish at xi = 0.
struct FilterBank {
    GridSpec spec;
    int j_min = 0;
    int j_max = 0;
    AnnularProfile profile;
    std::vector<std::vector<double>> multiplier;  // [j - j_min][flat index]

    int bands() const { return j_max - j_min + 1; }
    const std::vector<double>& band(int j) const {
        return multiplier[static_cast<std::size_t>(j - j_min)];
    }
    bool in_range(int j) const { return j >= j_min && j <= j_max; }
};

// Largest j_max with 2^(j_max+1) <= n/2.
int default_j_max(const GridSpec& spec);

FilterBank build_filter_bank(const GridSpec& spec, int j_min, int j_max);

struct BandDecomposition {
    GridSpec spec;
    int j_min = 0;
    int j_max = 0;
    cplx stripped_mean;               // xi = 0 coefficient removed at decompose
    std::vector<GridFunction> bands;  // [j - j_min]

    const GridFunction& band(int j) const {
        return bands[static_cast<std::size_t>(j - j_min)];
    }
    GridFunction& band(int j) { return bands[static_cast<std::size_t>(j - j_min)]; }
    int count() const { return j_max - j_min + 1; }
};

GridFunction project(const FilterBank& bank, const GridFunction& f, int j);
BandDecomposition decompose(const FilterBank& bank, const GridFunction& f);
GridFunction reconstruct(const BandDecomposition& decomp);

// Spatial convolution kernel of band j (inverse transform of the multiplier).
GridFunction band_kernel(const FilterBank& bank, int j);

// max over fully covered frequencies (2^j_min <= |xi| <= 2^j_max) of
// |sum_j multiplier_j - 1|. Frequencies in the boundary octaves
// (2^(j_min-1), 2^j_min) and (2^j_max, 2^(j_max+1)) would need bands
// outside the finite range to sum to 1; their worst deviation is reported
// by boundary_deficit, not asserted.
double partition_deficit(const FilterBank& bank);
double boundary_deficit(const FilterBank& bank);

// max_x |Delta_k f - sum_{|j-k|<=1} Delta_k Delta_j f| for an interior band k.
double superposition_residual(const FilterBank& bank, const GridFunction& f, int k);

// Fraction of a band's spectral mass outside its annulus (relative).
double band_leakage(const FilterBank& bank, const GridFunction& band_j, int j);

// Writes band j as a sum of order-a derivatives: returns per multi-index gamma
// (|gamma| = a) the kernel whose derivative-sum reassembles the band kernel.
struct MomentFactorization {
    int order = 1;
    std::vector<std::vector<int>> gammas;  // exponents per axis
    std::vector<GridFunction> parts;       // spatial kernels, aligned with gammas
};
MomentFactorization moment_factorize(const FilterBank& bank, int a, int j);

struct BernsteinRow {
    int j = 0;
    double ratio = 0.0;
    bool empty_band = false;
};
struct BernsteinReport {
    bool critical_mismatch = false;  // alpha*p != d
    std::vector<BernsteinRow> rows;
};
BernsteinReport bernstein_ratios(const BandDecomposition& decomp, double alpha, double p);

}  // namespace lph
