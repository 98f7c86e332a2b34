#include "lph/grid.hpp"

#include <algorithm>
#include <cmath>

#include "lph/reduce.hpp"

namespace lph {

namespace {

bool is_pow2(int n) { return n >= 1 && (n & (n - 1)) == 0; }

}  // namespace

GridSpec::GridSpec(int dim_, int n_, double period_) : dim(dim_), n(n_), period(period_) {
    if (dim < 1) throw param_error("GridSpec: dim must be >= 1");
    if (n < 4 || !is_pow2(n)) throw param_error("GridSpec: n must be a power of two >= 4");
    if (!(period > 0.0) || !std::isfinite(period)) throw param_error("GridSpec: period must be positive");
}

std::size_t GridSpec::size() const {
    std::size_t s = 1;
    for (int a = 0; a < dim; ++a) s *= static_cast<std::size_t>(n);
    return s;
}

double GridSpec::cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < dim; ++a) v *= spacing();
    return v;
}

void decode_index(const GridSpec& spec, std::size_t flat, int* idx) {
    for (int a = spec.dim - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(flat % static_cast<std::size_t>(spec.n));
        flat /= static_cast<std::size_t>(spec.n);
    }
}

std::size_t encode_index(const GridSpec& spec, const int* idx) {
    std::size_t flat = 0;
    for (int a = 0; a < spec.dim; ++a)
        flat = flat * static_cast<std::size_t>(spec.n) + static_cast<std::size_t>(idx[a]);
    return flat;
}

double freq_norm(const GridSpec& spec, std::size_t flat) {
    double s = 0.0;
    for (int a = spec.dim - 1; a >= 0; --a) {
        const int k = static_cast<int>(flat % static_cast<std::size_t>(spec.n));
        flat /= static_cast<std::size_t>(spec.n);
        const double xi = freq_of_index(k, spec.n);
        s += xi * xi;
    }
    return std::sqrt(s);
}

SpectralField forward_transform(const GridFunction& f) {
    SpectralField F(f.spec);
    F.coeff = f.samples;
    for (int a = 0; a < f.spec.dim; ++a) detail::fft_axis(F.coeff, f.spec, a, -1);
    const double scale = 1.0 / static_cast<double>(f.spec.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(F.coeff.size()); ++i)
        F.coeff[static_cast<std::size_t>(i)] *= scale;
    return F;
}

GridFunction inverse_transform(const SpectralField& F) {
    GridFunction f(F.spec);
    f.samples = F.coeff;
    for (int a = 0; a < F.spec.dim; ++a) detail::fft_axis(f.samples, F.spec, a, +1);
    return f;
}

GridFunction spectral_derivative(const GridFunction& f, int axis, int order) {
    const GridSpec& spec = f.spec;
    if (axis < 0 || axis >= spec.dim) throw param_error("spectral_derivative: axis out of range");
    if (order < 1) throw param_error("spectral_derivative: order must be >= 1");

    SpectralField F = forward_transform(f);
    const double unit = two_pi / spec.period;
    std::size_t stride = 1;
    for (int a = spec.dim - 1; a > axis; --a) stride *= static_cast<std::size_t>(spec.n);

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(F.coeff.size()); ++ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        const int k = static_cast<int>((i / stride) % static_cast<std::size_t>(spec.n));
        const int xi = freq_of_index(k, spec.n);
        if (xi == -spec.n / 2 && (order % 2) != 0) {
            F.coeff[i] = 0.0;
            continue;
        }
        cplx m(1.0, 0.0);
        const cplx base(0.0, xi * unit);
        for (int o = 0; o < order; ++o) m *= base;
        F.coeff[i] *= m;
    }
    return inverse_transform(F);
}

GridFunction circular_convolve(const GridFunction& f, const GridFunction& kernel) {
    if (!(f.spec == kernel.spec)) throw param_error("circular_convolve: spec mismatch");
    SpectralField F = forward_transform(f);
    const SpectralField K = forward_transform(kernel);
    double vol = 1.0;
    for (int a = 0; a < f.spec.dim; ++a) vol *= f.spec.period;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(F.coeff.size()); ++i)
        F.coeff[static_cast<std::size_t>(i)] *= K.coeff[static_cast<std::size_t>(i)] * vol;
    return inverse_transform(F);
}

double lp_norm(const GridFunction& f, double p) {
    if (!(p > 1.0)) throw param_error("lp_norm: p must be in (1, inf]");
    if (std::isinf(p)) return sup_norm(f);
    if (p == 2.0) {
        const double s = pairwise_sum(f.size(), [&](std::size_t i) { return std::norm(f[i]); });
        return std::sqrt(f.spec.cell_volume() * s);
    }
    const double s =
        pairwise_sum(f.size(), [&](std::size_t i) { return std::pow(std::abs(f[i]), p); });
    return std::pow(f.spec.cell_volume() * s, 1.0 / p);
}

double sup_norm(const GridFunction& f) {
    return max_over(f.size(), [&](std::size_t i) { return std::abs(f[i]); });
}

cplx mean(const GridFunction& f) {
    const double re = pairwise_sum(f.size(), [&](std::size_t i) { return f[i].real(); });
    const double im = pairwise_sum(f.size(), [&](std::size_t i) { return f[i].imag(); });
    return cplx(re, im) / static_cast<double>(f.size());
}

bool all_finite(const GridFunction& f) {
    for (const cplx& z : f.samples)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

GridFunction permute_axes(const GridFunction& f, const std::vector<int>& perm) {
    const GridSpec& spec = f.spec;
    if (static_cast<int>(perm.size()) != spec.dim) throw param_error("permute_axes: bad permutation size");
    std::vector<int> seen(static_cast<std::size_t>(spec.dim), 0);
    for (int a : perm) {
        if (a < 0 || a >= spec.dim || seen[static_cast<std::size_t>(a)]) throw param_error("permute_axes: invalid permutation");
        seen[static_cast<std::size_t>(a)] = 1;
    }
    GridFunction out(spec);
    std::vector<int> idx(static_cast<std::size_t>(spec.dim));
    std::vector<int> src(static_cast<std::size_t>(spec.dim));
    for (std::size_t i = 0; i < out.size(); ++i) {
        decode_index(spec, i, idx.data());
        for (int a = 0; a < spec.dim; ++a) src[static_cast<std::size_t>(perm[static_cast<std::size_t>(a)])] = idx[static_cast<std::size_t>(a)];
        out[i] = f[encode_index(spec, src.data())];
    }
    return out;
}

GridFunction scaled(const GridFunction& f, cplx factor) {
    GridFunction out(f.spec);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(f.size()); ++i)
        out[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(i)] * factor;
    return out;
}

void add_scaled(GridFunction& acc, const GridFunction& f, cplx factor) {
    if (!(acc.spec == f.spec)) throw param_error("add_scaled: spec mismatch");
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(f.size()); ++i)
        acc[static_cast<std::size_t>(i)] += f[static_cast<std::size_t>(i)] * factor;
}

GridFunction abs_field(const GridFunction& f) {
    GridFunction out(f.spec);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(f.size()); ++i)
        out[static_cast<std::size_t>(i)] = std::abs(f[static_cast<std::size_t>(i)]);
    return out;
}

}  // namespace lph
