#pragma once

#include "lph/grid.hpp"

namespace lph::ref {

// Serial reference implementations. Same contracts as the parallel kernels,
// written as plain quadratic/naive loops: these are the independent oracles
// the test suites check against, and the baseline the benchmark compares to.

// Direct O(n^2)-per-axis discrete Fourier transform.
SpectralField forward_transform(const GridFunction& f);
GridFunction inverse_transform(const SpectralField& F);

// Direct O(n^(2d)) periodic convolution h^d * sum_y kernel(y) f(x-y).
GridFunction circular_convolve(const GridFunction& f, const GridFunction& kernel);

// Plain left-to-right long double summation.
double lp_norm(const GridFunction& f, double p);

// Exhaustive maximum over every grid-aligned periodic cube with side h*2^k,
// k = 0..log2(n), of the average of |f| over the cube.
GridFunction hl_maximal(const GridFunction& f);

}  // namespace lph::ref
