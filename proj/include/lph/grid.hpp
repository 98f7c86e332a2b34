#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "lph/common.hpp"

namespace lph {

// Uniform periodic lattice on a d-dimensional torus of side `period`,
// n samples per axis. n must be a power of two so that dyadic frequency
// bands align exactly and transforms stay radix-2.
struct GridSpec {
    int dim = 1;
    int n = 4;
    double period = two_pi;

    GridSpec() = default;
    GridSpec(int dim_, int n_, double period_ = two_pi);

    double spacing() const { return period / n; }
    std::size_t size() const;
    double cell_volume() const;  // spacing()^dim

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

// Sampled complex scalar field, row-major over axes (axis 0 slowest).
struct GridFunction {
    GridSpec spec;
    std::vector<cplx> samples;

    GridFunction() = default;
    explicit GridFunction(const GridSpec& s) : spec(s), samples(s.size()) {}

    cplx& operator[](std::size_t i) { return samples[i]; }
    const cplx& operator[](std::size_t i) const { return samples[i]; }
    std::size_t size() const { return samples.size(); }
};

// Discrete Fourier coefficients, row-major with axis index k encoding the
// integer frequency xi = (k < n/2) ? k : k - n, in units of 2*pi/period.
// Normalized so a constant field c has coefficient c at xi = 0.
struct SpectralField {
    GridSpec spec;
    std::vector<cplx> coeff;

    SpectralField() = default;
    explicit SpectralField(const GridSpec& s) : spec(s), coeff(s.size()) {}
};

inline int freq_of_index(int k, int n) { return (k < n / 2) ? k : k - n; }
inline int index_of_freq(int xi, int n) { return (xi >= 0) ? xi : xi + n; }

// Decodes flat row-major index into per-axis indices (axis 0 slowest).
void decode_index(const GridSpec& spec, std::size_t flat, int* idx);
std::size_t encode_index(const GridSpec& spec, const int* idx);

// Euclidean norm of the integer frequency vector for flat coefficient index.
double freq_norm(const GridSpec& spec, std::size_t flat);

SpectralField forward_transform(const GridFunction& f);
GridFunction inverse_transform(const SpectralField& F);

// Multiplies coefficients by (i * xi_axis * 2pi/period)^order. The Nyquist
// plane xi_axis = -n/2 is zeroed for odd order. axis is 0-based.
GridFunction spectral_derivative(const GridFunction& f, int axis, int order);

// Periodic convolution h^d * sum_y kernel(y) f(x-y), evaluated spectrally.
GridFunction circular_convolve(const GridFunction& f, const GridFunction& kernel);

// (h^d sum |f|^p)^(1/p) for finite p in (1,inf); max |f| for p = inf.
double lp_norm(const GridFunction& f, double p);

double sup_norm(const GridFunction& f);
cplx mean(const GridFunction& f);
bool all_finite(const GridFunction& f);

// Remaps axes: result axis a carries input axis perm[a].
GridFunction permute_axes(const GridFunction& f, const std::vector<int>& perm);

GridFunction scaled(const GridFunction& f, cplx factor);
void add_scaled(GridFunction& acc, const GridFunction& f, cplx factor);
GridFunction abs_field(const GridFunction& f);

namespace detail {
// In-place power-of-two FFT along one axis; sign = -1 forward, +1 inverse.
void fft_axis(std::vector<cplx>& a, const GridSpec& spec, int axis, int sign);
}  // namespace detail

}  // namespace lph
