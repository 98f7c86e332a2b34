#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace lph {

// Neumaier-compensated accumulator. Used where terms span many orders of
// magnitude (fractional-power lattice sums).
struct compensated_sum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

namespace detail {

template <class Term>
double pairwise_sum_rec(std::size_t lo, std::size_t hi, Term&& term) {
    const std::size_t len = hi - lo;
    if (len <= 16) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += term(i);
        return s;
    }
    const std::size_t mid = lo + len / 2;
    return pairwise_sum_rec(lo, mid, term) + pairwise_sum_rec(mid, hi, term);
}

}  // namespace detail

// Deterministic reduction: a binary tree whose shape depends only on n, so the
// result is bit-identical no matter how many threads execute the leaves.
template <class Term>
double pairwise_sum(std::size_t n, Term&& term) {
    if (n == 0) return 0.0;
    constexpr std::size_t kChunks = 64;
    if (n < 4096) return detail::pairwise_sum_rec(0, n, term);

    double partial[kChunks];
#pragma omp parallel for schedule(static)
    for (int c = 0; c < static_cast<int>(kChunks); ++c) {
        const std::size_t lo = n * static_cast<std::size_t>(c) / kChunks;
        const std::size_t hi = n * (static_cast<std::size_t>(c) + 1) / kChunks;
        partial[c] = detail::pairwise_sum_rec(lo, hi, term);
    }
    // fixed-order pairwise combine of the 64 partials
    for (std::size_t width = 1; width < kChunks; width *= 2)
        for (std::size_t i = 0; i + width < kChunks; i += 2 * width)
            partial[i] += partial[i + width];
    return partial[0];
}

template <class Term>
double max_over(std::size_t n, Term&& term) {
    double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        const double v = term(static_cast<std::size_t>(i));
        if (v > m) m = v;
    }
    return m;
}

}  // namespace lph
