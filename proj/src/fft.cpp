#include <cmath>
#include <utility>
#include <vector>

#include "lph/grid.hpp"

namespace lph::detail {

namespace {

// Iterative radix-2 Cooley-Tukey on a contiguous line. Twiddles come from a
// shared table (tw[k] = exp(sign * i * 2pi k / n)) so no running products
// accumulate error and the computation graph is fixed for a given n.
void fft_line(cplx* a, int n, const cplx* tw) {
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        const int half = len >> 1;
        const int step = n / len;
        for (int base = 0; base < n; base += len) {
            for (int k = 0; k < half; ++k) {
                const cplx u = a[base + k];
                const cplx v = a[base + k + half] * tw[k * step];
                a[base + k] = u + v;
                a[base + k + half] = u - v;
            }
        }
    }
}

std::vector<cplx> twiddle_table(int n, int sign) {
    std::vector<cplx> tw(static_cast<std::size_t>(n) / 2);
    for (int k = 0; k < n / 2; ++k) {
        const double ang = sign * two_pi * k / n;
        tw[static_cast<std::size_t>(k)] = cplx(std::cos(ang), std::sin(ang));
    }
    return tw;
}

}  // namespace

void fft_axis(std::vector<cplx>& a, const GridSpec& spec, int axis, int sign) {
    const int n = spec.n;
    const int d = spec.dim;
    const std::vector<cplx> tw = twiddle_table(n, sign);

    // stride of the axis and number of independent lines
    std::size_t stride = 1;
    for (int ax = d - 1; ax > axis; --ax) stride *= static_cast<std::size_t>(n);
    const std::size_t total = a.size();
    const std::size_t lines = total / static_cast<std::size_t>(n);

    if (stride == 1) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t li = 0; li < static_cast<std::ptrdiff_t>(lines); ++li)
            fft_line(a.data() + static_cast<std::size_t>(li) * n, n, tw.data());
        return;
    }

    const std::size_t block = stride * static_cast<std::size_t>(n);
#pragma omp parallel
    {
        std::vector<cplx> buf(static_cast<std::size_t>(n));
#pragma omp for schedule(static)
        for (std::ptrdiff_t li = 0; li < static_cast<std::ptrdiff_t>(lines); ++li) {
            const std::size_t l = static_cast<std::size_t>(li);
            const std::size_t base = (l / stride) * block + (l % stride);
            for (int k = 0; k < n; ++k) buf[static_cast<std::size_t>(k)] = a[base + k * stride];
            fft_line(buf.data(), n, tw.data());
            for (int k = 0; k < n; ++k) a[base + k * stride] = buf[static_cast<std::size_t>(k)];
        }
    }
}

}  // namespace lph::detail
