#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "lph/grid.hpp"

namespace lph::testing {

// Deterministic Box-Muller normals from a mt19937_64 stream; avoids the
// implementation-defined state of std::normal_distribution.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : eng_(seed) {}
    double next() {
        if (have_) {
            have_ = false;
            return cached_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 1e-300);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        cached_ = r * std::sin(two_pi * u2);
        have_ = true;
        return r * std::cos(two_pi * u2);
    }

private:
    double uniform() {
        return (eng_() >> 11) * 0x1.0p-53;
    }
    std::mt19937_64 eng_;
    bool have_ = false;
    double cached_ = 0.0;
};

inline GridFunction random_field(const GridSpec& spec, std::uint64_t seed) {
    NormalStream ns(seed);
    GridFunction f(spec);
    for (cplx& z : f.samples) z = cplx(ns.next(), ns.next());
    return f;
}

// Random field whose spectrum lies in the union of annuli 2^(j-1)<|xi|<2^(j+1).
inline GridFunction random_band_field(const GridSpec& spec, const std::vector<int>& bands,
                                      std::uint64_t seed) {
    NormalStream ns(seed);
    SpectralField F(spec);
    for (std::size_t i = 0; i < F.coeff.size(); ++i) {
        const double re = ns.next();
        const double im = ns.next();
        const double r = freq_norm(spec, i);
        bool in = false;
        for (int j : bands)
            if (r > std::ldexp(1.0, j - 1) && r < std::ldexp(1.0, j + 1)) in = true;
        if (in) F.coeff[i] = cplx(re, im);
    }
    return inverse_transform(F);
}

inline double max_abs_diff(const GridFunction& a, const GridFunction& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// 4th-order centered finite difference along an axis (periodic).
inline GridFunction fd4_derivative(const GridFunction& f, int axis) {
    const GridSpec& spec = f.spec;
    GridFunction out(spec);
    std::vector<int> idx(static_cast<std::size_t>(spec.dim));
    const double h = spec.spacing();
    for (std::size_t i = 0; i < f.size(); ++i) {
        decode_index(spec, i, idx.data());
        auto sample = [&](int off) {
            std::vector<int> j(idx);
            j[static_cast<std::size_t>(axis)] =
                ((idx[static_cast<std::size_t>(axis)] + off) % spec.n + spec.n) % spec.n;
            return f[encode_index(spec, j.data())];
        };
        out[i] = (-sample(2) + 8.0 * sample(1) - 8.0 * sample(-1) + sample(-2)) / (12.0 * h);
    }
    return out;
}

}  // namespace lph::testing
