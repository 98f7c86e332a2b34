#include "lph/tl_norms.hpp"

#include <cmath>

#include "lph/reduce.hpp"

namespace lph {

double lp_lq_norm(const std::vector<GridFunction>& family, double p, double q,
                  const std::vector<double>& weights) {
    if (family.empty()) return 0.0;
    if (!weights.empty() && weights.size() != family.size())
        throw param_error("lp_lq_norm: weight/family size mismatch");
    const GridSpec& spec = family.front().spec;
    for (const GridFunction& g : family)
        if (!(g.spec == spec)) throw param_error("lp_lq_norm: spec mismatch");

    // q = 2 and p = q avoid pow so that dyadic rescaling of the input scales
    // the result exactly (the solver's bit-level homogeneity relies on it)
    const bool q2 = (q == 2.0);
    const bool pq = (p == q);
    const std::size_t total = spec.size();
    const double s = pairwise_sum(total, [&](std::size_t i) {
        double inner = 0.0;
        for (std::size_t k = 0; k < family.size(); ++k) {
            const double w = weights.empty() ? 1.0 : weights[k];
            const double v = w * std::abs(family[k][i]);
            if (v > 0.0) inner += q2 ? v * v : std::pow(v, q);
        }
        return pq ? inner : std::pow(inner, p / q);
    });
    const double total_p = spec.cell_volume() * s;
    const double out = (p == 2.0) ? std::sqrt(total_p) : std::pow(total_p, 1.0 / p);
    if (!std::isfinite(out)) throw data_error("lp_lq_norm: non-finite result");
    return out;
}

double tl_norm(const BandDecomposition& decomp, const TlParams& params) {
    params.validate();
    std::vector<double> w(static_cast<std::size_t>(decomp.count()));
    for (int j = decomp.j_min; j <= decomp.j_max; ++j)
        w[static_cast<std::size_t>(j - decomp.j_min)] = std::pow(2.0, params.alpha * j);
    return lp_lq_norm(decomp.bands, params.p, params.q, w);
}

double tl_norm(const GridFunction& f, const FilterBank& bank, const TlParams& params) {
    return tl_norm(decompose(bank, f), params);
}

SeminormEquivalence seminorm_equivalence(const GridFunction& f, const FilterBank& bank,
                                         const TlParams& params) {
    params.validate();
    SeminormEquivalence rep;
    rep.f_norm = tl_norm(f, bank, params);
    if (rep.f_norm == 0.0) {
        rep.zero_input = true;
        return rep;
    }
    TlParams lower = params;
    lower.alpha = params.alpha - 1.0;
    double denom = 0.0;
    for (int axis = 0; axis < f.spec.dim; ++axis) {
        const double nrm = tl_norm(spectral_derivative(f, axis, 1), bank, lower);
        rep.derivative_norms.push_back(nrm);
        denom += nrm;
    }
    rep.ratio = rep.f_norm / denom;
    return rep;
}

}  // namespace lph
