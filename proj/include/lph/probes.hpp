#pragma once

#include <vector>

#include "lph/filter_bank.hpp"
#include "lph/kernels.hpp"

namespace lph {

// sup over bands of |f_j| convolved with the per-band shifted kernel.
struct ShiftedMaximal {
    GridFunction sup;
    std::vector<GridFunction> per_band;  // T_j|f_j|( . + 2^-j r ), per band
};
ShiftedMaximal shifted_maximal(const std::vector<GridFunction>& fields,
                               const ShiftedKernels& kernels);

// Numerical integrals of the three kernel-regularity conditions for T plus
// the Hormander-type shifted-difference integral A(r).
struct ZoReport {
    double c1_discrete = 0.0;  // h^d sum of periodized T
    double c1_analytic = 0.0;  // integral of T over R^d
    double c2_worst = 0.0;     // max over probe radii R of R * mass(|y| >= R)
    double c3_slope = 0.0;     // max over small x of |T(.-x)-T|_L1 / |x|
    std::vector<double> shift_norms;
    std::vector<double> hormander;  // A(r) per shift
    std::vector<double> log_ratio;  // A(r) / ln(2+|r|)
};
ZoReport zo_kernel_check(const GridSpec& spec, int j_min, int j_max,
                         const std::vector<std::vector<double>>& shifts);

// Operator-norm growth of the shifted convolution family in |r|:
// measured(r) = ||(T_j|D_j f|(.+2^-j r))_j||_{Lp(lq)} / ||(D_j f)_j||_{Lp(lq)},
// asserted against K ln(2+|r|) with K calibrated at the smallest shift and
// factor-2 slack.
struct LogBoundRow {
    double r_norm = 0.0;
    double measured = 0.0;
    double bound = 0.0;  // 2 K ln(2+|r|)
    bool pass = false;
    bool degenerate = false;  // zero input, 0/0
};
struct LogBoundReport {
    double calibration_k = 0.0;
    std::vector<LogBoundRow> rows;
};
LogBoundReport log_bound_probe(const BandDecomposition& decomp, double p, double q,
                               const std::vector<std::vector<double>>& shifts);

}  // namespace lph
