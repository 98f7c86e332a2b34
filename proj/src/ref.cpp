#include "lph/ref.hpp"

#include <cmath>
#include <vector>

namespace lph::ref {

namespace {

void dft_axis(std::vector<cplx>& a, const GridSpec& spec, int axis, int sign) {
    const int n = spec.n;
    std::size_t stride = 1;
    for (int ax = spec.dim - 1; ax > axis; --ax) stride *= static_cast<std::size_t>(n);
    const std::size_t block = stride * static_cast<std::size_t>(n);
    const std::size_t lines = a.size() / static_cast<std::size_t>(n);

    std::vector<cplx> in(static_cast<std::size_t>(n)), out(static_cast<std::size_t>(n));
    for (std::size_t l = 0; l < lines; ++l) {
        const std::size_t base = (l / stride) * block + (l % stride);
        for (int k = 0; k < n; ++k) in[static_cast<std::size_t>(k)] = a[base + k * stride];
        for (int k = 0; k < n; ++k) {
            cplx acc(0.0, 0.0);
            for (int m = 0; m < n; ++m) {
                const double ang = sign * two_pi * static_cast<double>(k) * m / n;
                acc += in[static_cast<std::size_t>(m)] * cplx(std::cos(ang), std::sin(ang));
            }
            out[static_cast<std::size_t>(k)] = acc;
        }
        for (int k = 0; k < n; ++k) a[base + k * stride] = out[static_cast<std::size_t>(k)];
    }
}

}  // namespace

SpectralField forward_transform(const GridFunction& f) {
    SpectralField F(f.spec);
    F.coeff = f.samples;
    for (int a = 0; a < f.spec.dim; ++a) dft_axis(F.coeff, f.spec, a, -1);
    const double scale = 1.0 / static_cast<double>(f.spec.size());
    for (cplx& z : F.coeff) z *= scale;
    return F;
}

GridFunction inverse_transform(const SpectralField& F) {
    GridFunction f(F.spec);
    f.samples = F.coeff;
    for (int a = 0; a < F.spec.dim; ++a) dft_axis(f.samples, F.spec, a, +1);
    return f;
}

GridFunction circular_convolve(const GridFunction& f, const GridFunction& kernel) {
    if (!(f.spec == kernel.spec)) throw param_error("ref::circular_convolve: spec mismatch");
    const GridSpec& spec = f.spec;
    const std::size_t total = spec.size();
    GridFunction out(spec);
    std::vector<int> xi(static_cast<std::size_t>(spec.dim)), yi(static_cast<std::size_t>(spec.dim)),
        di(static_cast<std::size_t>(spec.dim));
    for (std::size_t x = 0; x < total; ++x) {
        decode_index(spec, x, xi.data());
        cplx acc(0.0, 0.0);
        for (std::size_t y = 0; y < total; ++y) {
            decode_index(spec, y, yi.data());
            for (int a = 0; a < spec.dim; ++a) {
                int v = xi[static_cast<std::size_t>(a)] - yi[static_cast<std::size_t>(a)];
                if (v < 0) v += spec.n;
                di[static_cast<std::size_t>(a)] = v;
            }
            acc += kernel[y] * f[encode_index(spec, di.data())];
        }
        out[x] = acc * spec.cell_volume();
    }
    return out;
}

double lp_norm(const GridFunction& f, double p) {
    if (!(p > 1.0)) throw param_error("ref::lp_norm: p must be in (1, inf]");
    if (std::isinf(p)) {
        double m = 0.0;
        for (const cplx& z : f.samples) m = std::max(m, std::abs(z));
        return m;
    }
    long double s = 0.0L;
    for (const cplx& z : f.samples) s += powl(static_cast<long double>(std::abs(z)), p);
    return static_cast<double>(powl(static_cast<long double>(f.spec.cell_volume()) * s, 1.0L / p));
}

GridFunction hl_maximal(const GridFunction& f) {
    const GridSpec& spec = f.spec;
    const std::size_t total = spec.size();
    const int d = spec.dim;
    GridFunction out(spec);
    std::vector<int> xi(static_cast<std::size_t>(d)), ci(static_cast<std::size_t>(d)),
        pi(static_cast<std::size_t>(d));

    int levels = 0;
    for (int s = 1; s < spec.n; s <<= 1) ++levels;  // log2(n)

    for (std::size_t x = 0; x < total; ++x) {
        decode_index(spec, x, xi.data());
        double best = 0.0;
        for (int k = 0; k <= levels; ++k) {
            const int side = 1 << k;
            // anchors c with c <= x < c + side (componentwise, mod n)
            std::size_t anchors = 1;
            for (int a = 0; a < d; ++a) anchors *= static_cast<std::size_t>(side);
            for (std::size_t ac = 0; ac < anchors; ++ac) {
                std::size_t t = ac;
                for (int a = d - 1; a >= 0; --a) {
                    const int off = static_cast<int>(t % static_cast<std::size_t>(side));
                    t /= static_cast<std::size_t>(side);
                    ci[static_cast<std::size_t>(a)] =
                        ((xi[static_cast<std::size_t>(a)] - off) % spec.n + spec.n) % spec.n;
                }
                double sum = 0.0;
                std::size_t cells = 1;
                for (int a = 0; a < d; ++a) cells *= static_cast<std::size_t>(side);
                for (std::size_t cc = 0; cc < cells; ++cc) {
                    std::size_t u = cc;
                    for (int a = d - 1; a >= 0; --a) {
                        const int off = static_cast<int>(u % static_cast<std::size_t>(side));
                        u /= static_cast<std::size_t>(side);
                        pi[static_cast<std::size_t>(a)] = (ci[static_cast<std::size_t>(a)] + off) % spec.n;
                    }
                    sum += std::abs(f[encode_index(spec, pi.data())]);
                }
                best = std::max(best, sum / static_cast<double>(cells));
            }
        }
        out[x] = best;
    }
    return out;
}

}  // namespace lph::ref
