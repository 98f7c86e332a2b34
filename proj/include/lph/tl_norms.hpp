#pragma once

#include <vector>

#include "lph/filter_bank.hpp"
#include "lph/grid.hpp"

namespace lph {

struct TlParams {
    double alpha = 1.0;
    double p = 2.0;
    double q = 2.0;

    void validate() const {
        if (!(p > 1.0) || !std::isfinite(p)) throw param_error("TlParams: p must be in (1,inf)");
        if (!(q > 1.0) || !std::isfinite(q)) throw param_error("TlParams: q must be in (1,inf)");
    }
    bool critical(int d) const { return std::abs(alpha * p - d) <= 1e-9; }
};

// ( h^d sum_x ( sum_k (w_k |fam_k(x)|)^q )^(p/q) )^(1/p).
// Empty weight vector means all ones.
double lp_lq_norm(const std::vector<GridFunction>& family, double p, double q,
                  const std::vector<double>& weights = {});

// Triebel-Lizorkin norm of a decomposition: lp_lq_norm of the bands with
// weights 2^(alpha j).
double tl_norm(const BandDecomposition& decomp, const TlParams& params);
double tl_norm(const GridFunction& f, const FilterBank& bank, const TlParams& params);

struct SeminormEquivalence {
    bool zero_input = false;
    double f_norm = 0.0;                  // |f| at (alpha,p,q)
    std::vector<double> derivative_norms; // |d_i f| at (alpha-1,p,q)
    double ratio = 0.0;                   // f_norm / sum_i derivative_norms
};

// Compares |f|_{alpha,p,q} with sum_i |d_i f|_{alpha-1,p,q}; f must be
// mean-zero (the stripped mean is ignored with a tolerance guard).
SeminormEquivalence seminorm_equivalence(const GridFunction& f, const FilterBank& bank,
                                         const TlParams& params);

}  // namespace lph
