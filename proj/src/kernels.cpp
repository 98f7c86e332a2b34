#include "lph/kernels.hpp"

#include <cmath>

namespace lph {

namespace {

// upper incomplete Gamma((d+1)/2, w) via the recurrence
// Gamma(a+1,w) = a*Gamma(a,w) + w^a e^{-w}, seeded at 1/2 or 1.
double upper_gamma_half(int twice_a, double w) {
    double a;
    double g;
    if (twice_a % 2 == 0) {
        a = 1.0;
        g = std::exp(-w);
    } else {
        a = 0.5;
        g = std::sqrt(M_PI) * std::erfc(std::sqrt(w));
    }
    while (2.0 * a + 0.5 < twice_a) {
        g = a * g + std::pow(w, a) * std::exp(-w);
        a += 1.0;
    }
    return g;
}

double complete_gamma_half(int twice_a) {
    double a, g;
    if (twice_a % 2 == 0) {
        a = 1.0;
        g = 1.0;
    } else {
        a = 0.5;
        g = std::sqrt(M_PI);
    }
    while (2.0 * a + 0.5 < twice_a) {
        g *= a;
        a += 1.0;
    }
    return g;
}

void min_image(double* u, int d, double period) {
    for (int i = 0; i < d; ++i) {
        u[i] = std::remainder(u[i], period);
        if (u[i] >= period / 2) u[i] -= period;
    }
}

}  // namespace

double power_tail_lattice_sum(const double* u_in, int d, double period, bool exclude_origin_image) {
    const int s = d + 1;
    const double gamma_s2 = complete_gamma_half(s);
    const double eta = M_PI / (period * period);

    double u[8];
    for (int i = 0; i < d; ++i) u[i] = u_in[i];
    min_image(u, d, period);

    // direct (screened) part
    double direct = 0.0;
    const int M = 5;
    int m[8] = {0};
    for (int i = 0; i < d; ++i) m[i] = -M;
    while (true) {
        double r2 = 0.0;
        for (int i = 0; i < d; ++i) {
            const double y = u[i] + m[i] * period;
            r2 += y * y;
        }
        const bool origin = r2 < 1e-24;
        if (!(origin && exclude_origin_image)) {
            const double w = eta * r2;
            if (w < 60.0) {
                if (origin)
                    throw param_error("power_tail_lattice_sum: singular argument");
                direct += upper_gamma_half(s, w) / (gamma_s2 * std::pow(r2, 0.5 * s));
            }
        }
        int ax = d - 1;
        while (ax >= 0 && m[ax] == M) m[ax--] = -M;
        if (ax < 0) break;
        ++m[ax];
    }

    // reciprocal part: a = (s-d)/2 = 1/2 throughout
    double vol = 1.0;
    for (int i = 0; i < d; ++i) vol *= period;
    const double front = std::pow(M_PI, 0.5 * d) / (gamma_s2 * vol);
    double recip = 2.0 * std::sqrt(eta);  // k = 0
    const int K = 5;
    int k[8] = {0};
    for (int i = 0; i < d; ++i) k[i] = -K;
    while (true) {
        double k2 = 0.0;
        double phase = 0.0;
        for (int i = 0; i < d; ++i) {
            k2 += static_cast<double>(k[i]) * k[i];
            phase += k[i] * u[i];
        }
        if (k2 > 0.0) {
            const double B = M_PI * M_PI * k2 / (period * period);
            const double z = B / eta;
            if (z < 60.0) {
                const double gneg = 2.0 * std::exp(-z) / std::sqrt(z) -
                                    2.0 * std::sqrt(M_PI) * std::erfc(std::sqrt(z));
                recip += std::cos(two_pi * phase / period) * std::sqrt(B) * gneg;
            }
        }
        int ax = d - 1;
        while (ax >= 0 && k[ax] == K) k[ax--] = -K;
        if (ax < 0) break;
        ++k[ax];
    }
    double out = direct + front * recip;
    if (exclude_origin_image)
        out -= std::pow(eta, 0.5 * s) / ((0.5 * s) * gamma_s2);
    return out;
}

double tail_periodized(const double* u_in, int d, double period) {
    const int s = d + 1;
    double u[8];
    for (int i = 0; i < d; ++i) u[i] = u_in[i];
    min_image(u, d, period);

    double r0 = 0.0;
    for (int i = 0; i < d; ++i) r0 += u[i] * u[i];
    r0 = std::sqrt(r0);
    const bool on_lattice = r0 < 1e-12;

    double out = power_tail_lattice_sum(u, d, period, on_lattice);
    if (on_lattice) out += 1.0;  // capped origin image, T(0) = 1

    // cap every non-singular image closer than 1: T uses 1, not r^-s
    const int M = std::max(1, static_cast<int>(std::ceil(1.0 / period)) + 1);
    int m[8];
    for (int i = 0; i < d; ++i) m[i] = -M;
    while (true) {
        double r2 = 0.0;
        for (int i = 0; i < d; ++i) {
            const double y = u[i] + m[i] * period;
            r2 += y * y;
        }
        if (r2 >= 1e-24 && r2 < 1.0) out += 1.0 - std::pow(r2, -0.5 * s);
        int ax = d - 1;
        while (ax >= 0 && m[ax] == M) m[ax--] = -M;
        if (ax < 0) break;
        ++m[ax];
    }
    return out;
}

double tail_kernel_mass(int d) {
    switch (d) {
        case 1: return 4.0;                       // 2 + 2
        case 2: return 3.0 * M_PI;                // pi + 2 pi
        case 3: return 16.0 * M_PI / 3.0;         // 4pi/3 + 4pi
        default: throw param_error("tail_kernel_mass: d > 3 not tabulated");
    }
}

namespace {

GridFunction tail_kernel_impl(const GridSpec& spec, int j, const double* r) {
    GridFunction out(spec);
    const double scale = std::ldexp(1.0, j);
    const double amp = std::pow(scale, spec.dim);
    const double big_period = scale * spec.period;
    const double h = spec.spacing();
    const std::size_t total = spec.size();

#pragma omp parallel
    {
        std::vector<int> idx(static_cast<std::size_t>(spec.dim));
        double u[8];
#pragma omp for schedule(static)
        for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(total); ++ii) {
            const std::size_t i = static_cast<std::size_t>(ii);
            decode_index(spec, i, idx.data());
            for (int ax = 0; ax < spec.dim; ++ax) {
                u[ax] = scale * h * idx[static_cast<std::size_t>(ax)];
                if (r) u[ax] += r[ax];
            }
            out[i] = amp * tail_periodized(u, spec.dim, big_period);
        }
    }
    return out;
}

}  // namespace

GridFunction tail_kernel(const GridSpec& spec, int j) { return tail_kernel_impl(spec, j, nullptr); }

GridFunction tail_kernel_shifted(const GridSpec& spec, int j, const std::vector<double>& r) {
    if (static_cast<int>(r.size()) != spec.dim) throw param_error("tail_kernel_shifted: bad shift size");
    return tail_kernel_impl(spec, j, r.data());
}

double aniso_exp(const double* x, int d, int sigma, int kappa) {
    double n2 = 0.0;
    for (int i = 0; i < d; ++i) {
        const double xi = (i < kappa) ? std::ldexp(x[i], -sigma) : x[i];
        n2 += xi * xi;
    }
    return std::exp(-std::sqrt(1.0 + n2));
}

GridFunction aniso_exp_kernel(const GridSpec& spec, int sigma, int kappa, int j, double pow) {
    if (sigma < 0) throw param_error("aniso_exp_kernel: sigma must be >= 0");
    if (kappa < 0 || kappa > spec.dim) throw param_error("aniso_exp_kernel: bad kappa");
    if (!(pow > 0.0)) throw param_error("aniso_exp_kernel: pow must be positive");

    GridFunction out(spec);
    const double scale = std::ldexp(1.0, j);
    const double amp = (pow == 1.0) ? std::pow(scale, spec.dim) : 1.0;
    const double h = spec.spacing();
    const double L = spec.period;
    const std::size_t total = spec.size();

    // per-axis image window: exponent pow * axis_scale * scale * |x_i + m L|
    // exceeds ~46 -> the term is below e^-46 and cannot matter
    std::vector<int> window(static_cast<std::size_t>(spec.dim));
    for (int ax = 0; ax < spec.dim; ++ax) {
        const double axis_scale = (ax < kappa) ? std::ldexp(1.0, -sigma) : 1.0;
        const double reach = 46.0 / (pow * axis_scale * scale * L);
        window[static_cast<std::size_t>(ax)] = static_cast<int>(std::ceil(reach)) + 1;
    }

#pragma omp parallel
    {
        std::vector<int> idx(static_cast<std::size_t>(spec.dim));
        double base[8];
        int m[8];
#pragma omp for schedule(static)
        for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(total); ++ii) {
            const std::size_t i = static_cast<std::size_t>(ii);
            decode_index(spec, i, idx.data());
            for (int ax = 0; ax < spec.dim; ++ax) {
                base[ax] = h * idx[static_cast<std::size_t>(ax)];
                base[ax] = std::remainder(base[ax], L);
                m[ax] = -window[static_cast<std::size_t>(ax)];
            }
            double sum = 0.0;
            while (true) {
                double n2 = 0.0;
                for (int ax = 0; ax < spec.dim; ++ax) {
                    const double axis_scale = (ax < kappa) ? std::ldexp(1.0, -sigma) : 1.0;
                    const double y = axis_scale * scale * (base[ax] + m[ax] * L);
                    n2 += y * y;
                }
                const double e = pow * std::sqrt(1.0 + n2);
                if (e < 46.0) sum += std::exp(-e);
                int ax = spec.dim - 1;
                while (ax >= 0 && m[ax] == window[static_cast<std::size_t>(ax)])
                    m[ax] = -window[static_cast<std::size_t>(ax)], --ax;
                if (ax < 0) break;
                ++m[ax];
            }
            out[i] = amp * sum;
        }
    }
    return out;
}

ShiftedKernels build_shifted_kernels(const GridSpec& spec, int j_min, int j_max,
                                     const std::vector<double>& r) {
    if (j_min > j_max) throw param_error("build_shifted_kernels: j_min > j_max");
    ShiftedKernels out;
    out.spec = spec;
    out.j_min = j_min;
    out.j_max = j_max;
    out.shift = r;
    const double target = tail_kernel_mass(spec.dim);
    for (int j = j_min; j <= j_max; ++j) {
        GridFunction k = tail_kernel_shifted(spec, j, r);
        double mass = 0.0;
        for (const cplx& z : k.samples) mass += z.real();
        mass *= spec.cell_volume();
        out.raw_mass.push_back(mass);
        out.kernels.push_back(scaled(k, target / mass));
    }
    return out;
}

}  // namespace lph
