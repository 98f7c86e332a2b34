#include "lph/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "lph/tl_norms.hpp"

namespace lph {

namespace {

// Applies op to every axis-aligned line of a real field.
template <class Op>
void for_each_line(std::vector<double>& a, const GridSpec& spec, int axis, Op&& op) {
    const int n = spec.n;
    std::size_t stride = 1;
    for (int ax = spec.dim - 1; ax > axis; --ax) stride *= static_cast<std::size_t>(n);
    const std::size_t block = stride * static_cast<std::size_t>(n);
    const std::size_t lines = a.size() / static_cast<std::size_t>(n);

#pragma omp parallel
    {
        std::vector<double> buf(static_cast<std::size_t>(n));
#pragma omp for schedule(static)
        for (std::ptrdiff_t li = 0; li < static_cast<std::ptrdiff_t>(lines); ++li) {
            const std::size_t l = static_cast<std::size_t>(li);
            const std::size_t base = (l / stride) * block + (l % stride);
            for (int k = 0; k < n; ++k) buf[static_cast<std::size_t>(k)] = a[base + k * stride];
            op(buf);
            for (int k = 0; k < n; ++k) a[base + k * stride] = buf[static_cast<std::size_t>(k)];
        }
    }
}

// out[c] = sum_{t=0..s-1} v[(c+t) mod n], via prefix sums.
void window_sum(std::vector<double>& v, int s) {
    const int n = static_cast<int>(v.size());
    std::vector<double> prefix(static_cast<std::size_t>(n) + 1, 0.0);
    for (int i = 0; i < n; ++i) prefix[static_cast<std::size_t>(i) + 1] = prefix[static_cast<std::size_t>(i)] + v[static_cast<std::size_t>(i)];
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
        if (c + s <= n)
            out[static_cast<std::size_t>(c)] = prefix[static_cast<std::size_t>(c + s)] - prefix[static_cast<std::size_t>(c)];
        else
            out[static_cast<std::size_t>(c)] =
                (prefix[static_cast<std::size_t>(n)] - prefix[static_cast<std::size_t>(c)]) +
                prefix[static_cast<std::size_t>(c + s - n)];
    }
    v = std::move(out);
}

// out[x] = max_{t=0..s-1} v[(x-t) mod n]: backward sliding-window maximum.
void window_max_backward(std::vector<double>& v, int s) {
    const int n = static_cast<int>(v.size());
    std::vector<double> out(static_cast<std::size_t>(n));
    std::deque<int> dq;  // indices into the doubled array, values decreasing
    auto val = [&](int i) { return v[static_cast<std::size_t>(i % n)]; };
    for (int i = 0; i < 2 * n; ++i) {
        while (!dq.empty() && val(dq.back()) <= val(i)) dq.pop_back();
        dq.push_back(i);
        while (dq.front() <= i - s) dq.pop_front();
        if (i >= n) out[static_cast<std::size_t>(i - n)] = val(dq.front());
    }
    v = std::move(out);
}

}  // namespace

GridFunction hl_maximal(const GridFunction& f) {
    const GridSpec& spec = f.spec;
    const std::size_t total = spec.size();

    std::vector<double> a(total), best(total);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(total); ++i) {
        a[static_cast<std::size_t>(i)] = std::abs(f[static_cast<std::size_t>(i)]);
        best[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)];
    }

    int levels = 0;
    for (int s = 1; s < spec.n; s <<= 1) ++levels;

    for (int k = 1; k <= levels; ++k) {
        const int side = 1 << k;
        std::vector<double> avg = a;
        for (int ax = 0; ax < spec.dim; ++ax)
            for_each_line(avg, spec, ax, [&](std::vector<double>& line) { window_sum(line, side); });
        double cells = 1.0;
        for (int ax = 0; ax < spec.dim; ++ax) cells *= side;
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(total); ++i)
            avg[static_cast<std::size_t>(i)] /= cells;
        for (int ax = 0; ax < spec.dim; ++ax)
            for_each_line(avg, spec, ax,
                          [&](std::vector<double>& line) { window_max_backward(line, side); });
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(total); ++i)
            best[static_cast<std::size_t>(i)] =
                std::max(best[static_cast<std::size_t>(i)], avg[static_cast<std::size_t>(i)]);
    }

    GridFunction out(spec);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(total); ++i)
        out[static_cast<std::size_t>(i)] = best[static_cast<std::size_t>(i)];
    return out;
}

double vector_maximal_ratio(const std::vector<GridFunction>& family, double p, double q) {
    const double denom = lp_lq_norm(family, p, q);
    if (denom == 0.0) return 0.0;
    std::vector<GridFunction> maxed;
    maxed.reserve(family.size());
    for (const GridFunction& g : family) maxed.push_back(hl_maximal(g));
    return lp_lq_norm(maxed, p, q) / denom;
}

}  // namespace lph
