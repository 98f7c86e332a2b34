#pragma once

#include <vector>

#include "lph/grid.hpp"

namespace lph {

// Dyadic-cube Hardy-Littlewood maximal function: at each x, the maximum over
// every grid-aligned periodic cube containing x with side h*2^k,
// k = 0..log2(n), of the average of |f| over the cube. Dominates |f|
// pointwise (the k=0 cube is the cell itself). O(d n^d log n) via per-axis
// running window sums and sliding-window maxima.
GridFunction hl_maximal(const GridFunction& f);

// Measured constant of the vector-valued maximal inequality:
// ||(sum_j (M f_j)^q)^(1/q)||_p / ||(sum_j |f_j|^q)^(1/q)||_p.
double vector_maximal_ratio(const std::vector<GridFunction>& family, double p, double q);

}  // namespace lph
