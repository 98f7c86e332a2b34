#include "lph/approx.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lph {

ApproxParams select_parameters(double alpha, double p, double q, int dim, double delta,
                               std::optional<int> sigma_override,
                               std::optional<int> sigma_cap) {
    if (dim < 1) throw param_error("select_parameters: dim must be >= 1");
    if (!(p > 1.0) || !std::isfinite(p) || !(q > 1.0) || !std::isfinite(q))
        throw param_error("select_parameters: p, q must be in (1,inf)");
    if (!(alpha > 0.0)) throw param_error("select_parameters: alpha must be positive");
    if (std::abs(alpha * p - dim) > 1e-9)
        throw param_error("select_parameters: criticality alpha*p = d violated");
    if (!(delta > 0.0)) throw param_error("select_parameters: delta must be positive");

    ApproxParams out;
    out.alpha = alpha;
    out.p = p;
    out.q = q;
    out.dim = dim;
    out.delta = delta;

    const double minpd = std::min(p, static_cast<double>(dim));
    out.kappa = static_cast<int>(std::ceil(minpd)) - 1;
    if (out.kappa < 1)
        throw param_error("select_parameters: no good direction exists (min(p,d) <= 1)");

    out.a_alpha = (alpha >= 1.0) ? 1.0 : std::min(alpha, alpha / (2.0 * (1.0 - alpha)));

    const double decay = -std::min(1.0, alpha) + out.kappa / p;  // < 0 since kappa < p
    int sigma = 1;
    while (sigma < 4000) {
        const double first = sigma * sigma * sigma * std::pow(2.0, decay * sigma);
        const double second = sigma * std::pow(2.0, -static_cast<double>(sigma));
        if (first <= delta / 2.0 && second <= delta / 2.0) break;
        ++sigma;
    }
    if (sigma_override) {
        out.sigma = *sigma_override;
        out.sigma_overridden = true;
        if (out.sigma < 1) throw param_error("select_parameters: sigma must be >= 1");
        if (sigma_cap && out.sigma > *sigma_cap) out.sigma_capped = true;
    } else {
        out.sigma = sigma;
        if (sigma_cap && out.sigma > *sigma_cap) {
            out.sigma = std::max(1, *sigma_cap);
            out.sigma_capped = true;
        }
    }

    out.stride = static_cast<int>(
        std::ceil((out.kappa + 1) / std::min(1.0, alpha * out.a_alpha) * out.sigma));
    if (!(alpha * out.stride > 1.0))
        throw param_error("select_parameters: alpha*R > 1 violated");

    out.good_dirs.resize(static_cast<std::size_t>(out.kappa));
    std::iota(out.good_dirs.begin(), out.good_dirs.end(), 0);
    return out;
}

TelescopeParts telescope_eval(const std::vector<double>& entries) {
    TelescopeParts out;
    // suffix sweep: after processing entry k, prod_part = prod_{l>=k}(1-a_l)
    // and sum_part = sum_{l>=k} a_l prod_{m>l}(1-a_m)
    for (std::size_t i = entries.size(); i-- > 0;) {
        out.sum_part = entries[i] * out.prod_part + out.sum_part * (1.0 - entries[i]);
        out.prod_part *= 1.0 - entries[i];
    }
    return out;
}

BandSplit split_bands(const BandDecomposition& decomp, const ControlFamily& control) {
    if (decomp.j_min != control.j_min || decomp.j_max != control.j_max)
        throw param_error("split_bands: band range mismatch");
    BandSplit out;
    out.j_min = decomp.j_min;
    out.j_max = decomp.j_max;
    const std::size_t total = decomp.spec.size();
    for (int j = decomp.j_min; j <= decomp.j_max; ++j) {
        GridFunction h(decomp.spec), g(decomp.spec);
        const GridFunction& band = decomp.band(j);
        const GridFunction& gate = control.zeta(j);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(total); ++ii) {
            const std::size_t i = static_cast<std::size_t>(ii);
            const double z = gate[i].real();
            g[i] = z * band[i];
            h[i] = band[i] - g[i];  // (1-z) band, exactly complementary
        }
        out.dominant.push_back(std::move(h));
        out.gated.push_back(std::move(g));
    }
    return out;
}

GridFunction damped_sum(const std::vector<GridFunction>& parts,
                        const std::vector<GridFunction>& dampers, int stride) {
    if (parts.empty()) throw param_error("damped_sum: no bands");
    if (parts.size() != dampers.size()) throw param_error("damped_sum: size mismatch");
    if (stride < 1) throw param_error("damped_sum: stride must be >= 1");
    const GridSpec& spec = parts.front().spec;
    const std::size_t total = spec.size();
    const int bands = static_cast<int>(parts.size());

    GridFunction out(spec);
    for (int c = 0; c < stride; ++c) {
        // members of this residue class, descending band order
        std::vector<int> members;
        for (int b = bands - 1; b >= 0; --b)
            if (((b - c) % stride + stride) % stride == 0) members.push_back(b);
        if (members.empty()) continue;
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(total); ++ii) {
            const std::size_t i = static_cast<std::size_t>(ii);
            double prod = 1.0;
            cplx acc(0.0, 0.0);
            for (int b : members) {
                acc += parts[static_cast<std::size_t>(b)][i] * prod;
                prod *= 1.0 - dampers[static_cast<std::size_t>(b)][i].real();
            }
            out[i] += acc;
        }
    }
    return out;
}

ApproxEngine::ApproxEngine(const GridSpec& spec, const ApproxParams& params)
    : spec_(spec),
      params_(params),
      bank_(build_filter_bank(spec, 0, default_j_max(spec))),
      ws_(spec, 0, default_j_max(spec), [&] {
          ControlParams cp;
          cp.sigma = params.sigma;
          cp.kappa = params.kappa;
          cp.stride = params.stride;
          cp.alpha = params.alpha;
          cp.p = params.p;
          cp.good_dirs = params.good_dirs;
          return cp;
      }()) {
    if (params.dim != spec.dim) throw param_error("ApproxEngine: dim mismatch");
    if (!(params.eta_margin > 0.0 && params.eta_margin < 1.0))
        throw param_error("ApproxEngine: eta_margin must lie in (0,1)");
}

ApproxResult ApproxEngine::approximate(const GridFunction& f, ApproxTrace* trace) const {
    return approximate(f, params_.good_dirs, trace);
}

ApproxResult ApproxEngine::approximate(const GridFunction& f, const std::vector<int>& good_dirs,
                                       ApproxTrace* trace) const {
    if (!(f.spec == spec_)) throw param_error("approximate: spec mismatch");
    if (static_cast<int>(good_dirs.size()) != params_.kappa)
        throw param_error("approximate: need exactly kappa good directions");
    std::vector<int> seen(static_cast<std::size_t>(spec_.dim), 0);
    for (int a : good_dirs) {
        if (a < 0 || a >= spec_.dim || seen[static_cast<std::size_t>(a)])
            throw param_error("approximate: invalid good direction set");
        seen[static_cast<std::size_t>(a)] = 1;
    }

    // working axis order: good directions first, the rest ascending
    std::vector<int> perm = good_dirs;
    for (int a = 0; a < spec_.dim; ++a)
        if (!seen[static_cast<std::size_t>(a)]) perm.push_back(a);
    bool identity = true;
    for (int a = 0; a < spec_.dim; ++a)
        if (perm[static_cast<std::size_t>(a)] != a) identity = false;
    std::vector<int> inv(perm.size());
    for (int a = 0; a < spec_.dim; ++a)
        inv[static_cast<std::size_t>(perm[static_cast<std::size_t>(a)])] = a;

    ApproxResult res;
    res.report.sigma_capped = ws_.sigma_capped() || params_.sigma_capped;
    res.report.c_low = ws_.domination_constant();
    res.report.budget_dominant = res.report.c_low;
    res.report.budget_gated = res.report.c_low * params_.stride;

    const GridFunction fw = identity ? f : permute_axes(f, perm);
    const TlParams tl{params_.alpha, params_.p, params_.q};
    const TlParams tl_lower{params_.alpha - 1.0, params_.p, params_.q};

    BandDecomposition dec_unit = decompose(bank_, fw);
    const double fnorm = tl_norm(dec_unit, tl);
    res.report.input_tl_norm = fnorm;
    if (fnorm == 0.0) {
        res.report.zero_input = true;
        res.approximant = GridFunction(spec_);
        res.dominant_bounded = GridFunction(spec_);
        res.gated_bounded = GridFunction(spec_);
        res.report.direction_errors.assign(static_cast<std::size_t>(spec_.dim), 0.0);
        return res;
    }

    // unit-normalize, measure smallness, rescale into the bounded regime
    const double inv_norm = 1.0 / fnorm;
    for (GridFunction& b : dec_unit.bands)
        for (cplx& z : b.samples) z *= inv_norm;
    ControlFamily control = build_control(dec_unit, ws_);
    const double s = smallness_measure(control, dec_unit);
    const double theta = params_.eta_margin / std::max(1.0, s);
    res.report.smallness = s;
    res.report.theta = theta;

    for (GridFunction& b : dec_unit.bands)
        for (cplx& z : b.samples) z *= theta;
    for (int j = control.j_min; j <= control.j_max; ++j) {
        const std::size_t b = static_cast<std::size_t>(j - control.j_min);
        for (cplx& z : control.majorant[b].samples) z *= theta;
        for (cplx& z : control.peak_damp[b].samples) z *= theta;
        for (cplx& z : control.tail_damp[b].samples) z *= theta;
    }

    BandSplit split = split_bands(dec_unit, control);
    GridFunction hb = damped_sum(split.dominant, control.peak_damp, 1);
    GridFunction gb = damped_sum(split.gated, control.tail_damp, params_.stride);

    res.report.dominant_bounded_inf = sup_norm(hb);
    res.report.gated_bounded_inf = sup_norm(gb);
    res.report.budgets_ok =
        res.report.dominant_bounded_inf <= res.report.budget_dominant * (1.0 + 1e-12) &&
        res.report.gated_bounded_inf <= res.report.budget_gated * (1.0 + 1e-12);

    GridFunction Fw = hb;
    add_scaled(Fw, gb, cplx(1.0));

    // error functional: work at working scale, then rescale to original
    const double back = fnorm / theta;
    GridFunction diff(spec_);  // theta * fw/|f| - Fw
    {
        GridFunction fw_scaled = scaled(fw, theta * inv_norm);
        diff = fw_scaled;
        add_scaled(diff, Fw, cplx(-1.0));
    }
    res.report.direction_errors.assign(static_cast<std::size_t>(spec_.dim), 0.0);
    for (int ax = 0; ax < spec_.dim; ++ax) {
        const double err = tl_norm(spectral_derivative(diff, ax, 1), bank_, tl_lower) * back;
        // report in original axis order
        res.report.direction_errors[static_cast<std::size_t>(perm[static_cast<std::size_t>(ax)])] = err;
        res.report.all_error += err / fnorm;
        if (ax < params_.kappa) res.report.good_error += err / fnorm;
    }

    res.scale_used = back;
    res.report.approximant_inf = sup_norm(Fw) * back;
    res.report.approximant_tl = tl_norm(Fw, bank_, tl) * back;

    GridFunction F = scaled(Fw, back);
    res.approximant = identity ? F : permute_axes(F, inv);
    GridFunction hb_full = scaled(hb, back);
    GridFunction gb_full = scaled(gb, back);
    res.dominant_bounded = identity ? hb_full : permute_axes(hb_full, inv);
    res.gated_bounded = identity ? gb_full : permute_axes(gb_full, inv);

    if (trace) {
        trace->decomp = std::move(dec_unit);
        trace->control = std::move(control);
        trace->split = std::move(split);
        trace->dominant_bounded = std::move(hb);
        trace->gated_bounded = std::move(gb);
        trace->theta = theta;
        trace->f_norm = fnorm;
    }
    return res;
}

ApproxDiagnostics approx_diagnostics(const ApproxTrace& trace, const ApproxParams& params,
                                     const FilterBank& bank) {
    ApproxDiagnostics rep;
    rep.c_low = trace.control.domination;
    const GridSpec& spec = trace.decomp.spec;
    const std::size_t total = spec.size();
    const int j_min = trace.decomp.j_min;
    const int j_max = trace.decomp.j_max;
    const int bands = j_max - j_min + 1;

    // ascending prefix recursions:
    //   V_{j+1} = h_j + (1 - U_j) V_j          (all bands)
    //   H_{j+R} = g_j + (1 - G_j) H_j          (per residue class)
    std::vector<GridFunction> V(static_cast<std::size_t>(bands), GridFunction(spec));
    std::vector<GridFunction> H(static_cast<std::size_t>(bands), GridFunction(spec));
    for (int b = 1; b < bands; ++b) {
        const std::size_t cur = static_cast<std::size_t>(b);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(total); ++ii) {
            const std::size_t i = static_cast<std::size_t>(ii);
            V[cur][i] = trace.split.dominant[cur - 1][i] +
                        (1.0 - trace.control.peak_damp[cur - 1][i].real()) * V[cur - 1][i];
        }
    }
    for (int b = params.stride; b < bands; ++b) {
        const std::size_t cur = static_cast<std::size_t>(b);
        const std::size_t prev = static_cast<std::size_t>(b - params.stride);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(total); ++ii) {
            const std::size_t i = static_cast<std::size_t>(ii);
            H[cur][i] = trace.split.gated[prev][i] +
                        (1.0 - trace.control.tail_damp[prev][i].real()) * H[prev][i];
        }
    }

    // exact identities h - h~ = sum_j U_j V_j and g - g~ = sum_j G_j H_j
    GridFunction h_lhs(spec), g_lhs(spec), h_rhs(spec), g_rhs(spec);
    for (int b = 0; b < bands; ++b) {
        const std::size_t k = static_cast<std::size_t>(b);
        add_scaled(h_lhs, trace.split.dominant[k], cplx(1.0));
        add_scaled(g_lhs, trace.split.gated[k], cplx(1.0));
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(total); ++ii) {
            const std::size_t i = static_cast<std::size_t>(ii);
            h_rhs[i] += trace.control.peak_damp[k][i].real() * V[k][i];
            g_rhs[i] += trace.control.tail_damp[k][i].real() * H[k][i];
        }
        rep.v_max = std::max(rep.v_max, sup_norm(V[k]));
        rep.hist_max = std::max(rep.hist_max, sup_norm(H[k]));
    }
    add_scaled(h_lhs, trace.dominant_bounded, cplx(-1.0));
    add_scaled(g_lhs, trace.gated_bounded, cplx(-1.0));

    const double h_scale = std::max(sup_norm(h_lhs), 1e-30);
    const double g_scale = std::max(sup_norm(g_lhs), 1e-30);
    GridFunction h_diff = h_lhs, g_diff = g_lhs;
    add_scaled(h_diff, h_rhs, cplx(-1.0));
    add_scaled(g_diff, g_rhs, cplx(-1.0));
    rep.h_identity_residual = sup_norm(h_diff) / h_scale;
    rep.g_identity_residual = sup_norm(g_diff) / g_scale;

    rep.v_within_one = rep.v_max <= 1.0 + 1e-12;
    rep.bounds_ok = rep.v_max <= rep.c_low * (1.0 + 1e-12) &&
                    rep.hist_max <= rep.c_low * (1.0 + 1e-12);

    // measured norms against the symbolic first-order shapes
    const TlParams tl_lower{params.alpha - 1.0, params.p, params.q};
    const double fnorm_work = trace.theta;  // |f_work| = theta by construction
    const double sig = params.sigma;
    const double h_shape = params.stride * sig * sig *
                           std::pow(2.0, (-std::min(1.0, params.alpha) + params.kappa / params.p) * sig);
    const double g_shape = std::pow(2.0, params.kappa * sig) * params.stride *
                           std::pow(2.0, -std::min(1.0, params.alpha * params.a_alpha) * params.stride);
    double h_err = 0.0;
    for (int ax = 0; ax < params.kappa; ++ax)
        h_err = std::max(h_err, tl_norm(spectral_derivative(h_lhs, ax, 1), bank, tl_lower));
    double g_err = 0.0;
    for (int ax = 0; ax < spec.dim; ++ax)
        g_err = std::max(g_err, tl_norm(spectral_derivative(g_lhs, ax, 1), bank, tl_lower));
    if (h_shape * fnorm_work > 0.0) rep.h_shape_ratio = h_err / (h_shape * fnorm_work);
    if (g_shape * fnorm_work > 0.0) rep.g_shape_ratio = g_err / (g_shape * fnorm_work);
    return rep;
}

}  // namespace lph
