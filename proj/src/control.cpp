#include "lph/control.hpp"

#include <algorithm>
#include <cmath>

#include "lph/maximal.hpp"
#include "lph/profile.hpp"
#include "lph/reduce.hpp"
#include "lph/tl_norms.hpp"

namespace lph {

void ControlParams::validate(int dim) const {
    if (sigma < 1) throw param_error("ControlParams: sigma must be >= 1");
    // kappa = 0 (no good direction) is allowed here so the machinery can run
    // isotropically in d = 1 diagnostics; the approximation stage requires >= 1
    if (kappa < 0 || kappa > dim - 1) throw param_error("ControlParams: need 0 <= kappa <= d-1");
    if (stride < 1) throw param_error("ControlParams: stride must be >= 1");
    if (!(alpha > 0.0)) throw param_error("ControlParams: alpha must be positive");
    if (!(p > 1.0) || !std::isfinite(p)) throw param_error("ControlParams: p must be in (1,inf)");
}

namespace {

int band_lattice_stride(const GridSpec& spec, int j) {
    const double target = std::ldexp(1.0, -j) / spec.spacing();
    int m = static_cast<int>(std::lround(target));
    m = std::max(1, std::min(m, spec.n));
    return m;
}

// smooth gate: 1 on [0,1/2], 0 on [1,inf)
double gate_step(double t) {
    if (t <= 0.5) return 1.0;
    if (t >= 1.0) return 0.0;
    return 1.0 - smooth_step(2.0 * t - 1.0);
}

}  // namespace

ControlWorkspace::ControlWorkspace(const GridSpec& spec, int j_min, int j_max,
                                   const ControlParams& params)
    : spec_(spec), params_(params), j_min_(j_min), j_max_(j_max) {
    params.validate(spec.dim);
    if (j_min > j_max) throw param_error("ControlWorkspace: j_min > j_max");

    // lattice truncation makes the cost grow like 2^sigma along good axes;
    // report when sigma exceeds the documented per-run cap log2(n/8)
    sigma_cap_ = static_cast<int>(std::floor(std::log2(spec.n / 8.0)));
    sigma_capped_ = params.sigma > sigma_cap_;

    const int bands = j_max - j_min + 1;
    tails_.reserve(static_cast<std::size_t>(bands));
    weights_.reserve(static_cast<std::size_t>(bands));
    for (int j = j_min; j <= j_max; ++j) {
        tails_.push_back(tail_kernel(spec, j));
        GridFunction w = aniso_exp_kernel(spec, params.sigma, params.kappa, j, params.p);
        std::vector<double> wr(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) wr[i] = w[i].real();
        weights_.push_back(std::move(wr));
        strides_.push_back(band_lattice_stride(spec, j));
    }

    // C_low from the discrete kernels: |band_j| = |band_j (*) K_j| <= C_K (T_j (*) |band_j|),
    // the nearest band-lattice point is within rho_j/2 per scaled axis so the
    // majorant keeps at least a fixed fraction of T_j (*) |band_j| there.
    const int d = spec.dim;
    const double inv_doubling = std::pow(2.0 * std::sqrt(static_cast<double>(d)),
                                         static_cast<double>(d + 1));
    double worst = 0.0;
    for (int j = j_min; j <= j_max; ++j) {
        SpectralField K(spec);
        double vol = 1.0;
        for (int ax = 0; ax < d; ++ax) vol *= spec.period;
        for (std::size_t i = 0; i < K.coeff.size(); ++i) {
            const double t = std::ldexp(freq_norm(spec, i), -j);
            const double mask = (t <= 2.0) ? 1.0 : smooth_step(3.0 - t);
            K.coeff[i] = mask / vol;
        }
        GridFunction kj = inverse_transform(K);
        const GridFunction& tj = tail_grid(j);
        double ck = 0.0;
        for (std::size_t i = 0; i < kj.size(); ++i)
            ck = std::max(ck, std::abs(kj[i]) / tj[i].real());

        const double rho = lattice_stride(j) * spec.spacing() * std::ldexp(1.0, j);
        if (rho > 2.0) throw data_error("ControlWorkspace: band lattice too coarse");
        const double e_near = std::exp(-std::sqrt(1.0 + 0.25 * d * rho * rho));
        worst = std::max(worst, ck * inv_doubling / e_near);
    }
    domination_ = worst;
}

const GridFunction& ControlWorkspace::tail_grid(int j) const {
    return tails_[static_cast<std::size_t>(j - j_min_)];
}
const std::vector<double>& ControlWorkspace::weight_grid(int j) const {
    return weights_[static_cast<std::size_t>(j - j_min_)];
}
int ControlWorkspace::lattice_stride(int j) const {
    return strides_[static_cast<std::size_t>(j - j_min_)];
}

GridFunction build_majorant(const BandDecomposition& decomp, const ControlWorkspace& ws, int j) {
    const GridSpec& spec = ws.spec();
    if (!(decomp.spec == spec)) throw param_error("build_majorant: spec mismatch");
    const double p = ws.params().p;

    // T_j * |band_j| on the full grid, then sampled on the band lattice
    GridFunction conv = circular_convolve(abs_field(decomp.band(j)), ws.tail_grid(j));

    const int d = spec.dim;
    const int n = spec.n;
    const int m = ws.lattice_stride(j);
    const int per_axis = (n + m - 1) / m;

    // lattice points and their |conv|^p values
    std::size_t lat_count = 1;
    for (int ax = 0; ax < d; ++ax) lat_count *= static_cast<std::size_t>(per_axis);
    std::vector<int> lat_idx(lat_count * static_cast<std::size_t>(d));
    std::vector<double> lat_val(lat_count);
    {
        std::vector<int> idx(static_cast<std::size_t>(d), 0);
        for (std::size_t l = 0; l < lat_count; ++l) {
            std::size_t t = l;
            std::size_t flat = 0;
            for (int ax = d - 1; ax >= 0; --ax) {
                idx[static_cast<std::size_t>(ax)] = static_cast<int>(t % per_axis) * m;
                t /= static_cast<std::size_t>(per_axis);
            }
            for (int ax = 0; ax < d; ++ax) {
                lat_idx[l * d + static_cast<std::size_t>(ax)] = idx[static_cast<std::size_t>(ax)];
                flat = flat * static_cast<std::size_t>(n) + static_cast<std::size_t>(idx[static_cast<std::size_t>(ax)]);
            }
            const double c = std::max(conv[flat].real(), 0.0);
            lat_val[l] = (p == 2.0) ? c * c : ((c > 0.0) ? std::pow(c, p) : 0.0);
        }
    }

    const std::vector<double>& w = ws.weight_grid(j);
    const double w_floor = std::exp(-36.0 * p);  // dropped-term rule at envelope level e^-36

    GridFunction out(spec);
    const std::size_t total = spec.size();
#pragma omp parallel
    {
        std::vector<int> xi(static_cast<std::size_t>(d));
#pragma omp for schedule(static)
        for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(total); ++ii) {
            const std::size_t i = static_cast<std::size_t>(ii);
            decode_index(spec, i, xi.data());
            compensated_sum acc;
            for (std::size_t l = 0; l < lat_count; ++l) {
                if (lat_val[l] == 0.0) continue;
                std::size_t off = 0;
                for (int ax = 0; ax < d; ++ax) {
                    int o = xi[static_cast<std::size_t>(ax)] - lat_idx[l * d + static_cast<std::size_t>(ax)];
                    if (o < 0) o += n;
                    off = off * static_cast<std::size_t>(n) + static_cast<std::size_t>(o);
                }
                const double weight = w[off];
                if (weight < w_floor) continue;
                acc.add(lat_val[l] * weight);
            }
            const double s = acc.value();
            out[i] = (s > 0.0) ? std::pow(s, 1.0 / p) : 0.0;
        }
    }
    return out;
}

GridFunction build_gate(const std::vector<GridFunction>& majorants, const ControlParams& params,
                        int j_min, int j) {
    const std::size_t bj = static_cast<std::size_t>(j - j_min);
    const GridSpec& spec = majorants.at(bj).spec;
    GridFunction out(spec);

    std::vector<std::pair<double, const GridFunction*>> history;  // (2^(alpha k), majorant_k)
    bool any = false;
    for (int k = j - params.stride; k >= j_min; k -= params.stride) {
        const GridFunction& om = majorants[static_cast<std::size_t>(k - j_min)];
        history.emplace_back(std::pow(2.0, params.alpha * k), &om);
        if (sup_norm(om) > 0.0) any = true;
    }
    if (!any) return out;  // empty class history: gate identically 0

    const double wj = std::pow(2.0, params.alpha * j);
    const std::size_t total = spec.size();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(total); ++ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        double denom = 0.0;
        for (const auto& [wk, om] : history) denom += wk * (*om)[i].real();
        const double num = wj * majorants[bj][i].real();
        out[i] = (denom > 0.0) ? gate_step(num / denom) : 0.0;
    }
    return out;
}

ControlFamily build_control(const BandDecomposition& decomp, const ControlWorkspace& ws) {
    ControlFamily fam;
    fam.params = ws.params();
    fam.j_min = ws.j_min();
    fam.j_max = ws.j_max();
    fam.domination = ws.domination_constant();
    if (decomp.j_min != ws.j_min() || decomp.j_max != ws.j_max())
        throw param_error("build_control: band range mismatch");

    for (int j = fam.j_min; j <= fam.j_max; ++j)
        fam.majorant.push_back(build_majorant(decomp, ws, j));
    for (int j = fam.j_min; j <= fam.j_max; ++j)
        fam.gate.push_back(build_gate(fam.majorant, fam.params, fam.j_min, j));

    const GridSpec& spec = ws.spec();
    const std::size_t total = spec.size();
    for (int j = fam.j_min; j <= fam.j_max; ++j) {
        const std::size_t bj = static_cast<std::size_t>(j - fam.j_min);
        GridFunction u(spec);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(total); ++ii) {
            const std::size_t i = static_cast<std::size_t>(ii);
            u[i] = (1.0 - fam.gate[bj][i].real()) * fam.majorant[bj][i].real();
        }
        fam.peak_damp.push_back(std::move(u));

        GridFunction g(spec);
        for (int t = fam.params.stride; j - t >= fam.j_min; t += fam.params.stride)
            add_scaled(g, fam.majorant[static_cast<std::size_t>(j - t - fam.j_min)],
                       std::pow(2.0, -fam.params.alpha * t));
        fam.tail_damp.push_back(std::move(g));
    }
    return fam;
}

double smallness_measure(const ControlFamily& family, const BandDecomposition& decomp) {
    double s = 0.0;
    for (int j = family.j_min; j <= family.j_max; ++j) {
        s = std::max(s, sup_norm(family.omega(j)));
        s = std::max(s, sup_norm(decomp.band(j)));
    }
    return s;
}

namespace {

// 4th-order centered difference of a real field along an axis; the majorants
// are not band-limited, so spectral differentiation would alias.
std::vector<double> fd4_axis(const GridFunction& f, int axis) {
    const GridSpec& spec = f.spec;
    const int n = spec.n;
    std::size_t stride = 1;
    for (int ax = spec.dim - 1; ax > axis; --ax) stride *= static_cast<std::size_t>(n);
    const std::size_t total = spec.size();
    std::vector<double> out(total);
    const double inv = 1.0 / (12.0 * spec.spacing());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(total); ++ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        const int k = static_cast<int>((i / stride) % static_cast<std::size_t>(n));
        auto shift = [&](int off) {
            const int k2 = ((k + off) % n + n) % n;
            return f[i + (static_cast<std::size_t>(k2) - static_cast<std::size_t>(k)) * stride].real();
        };
        out[i] = (-shift(2) + 8.0 * shift(1) - 8.0 * shift(-1) + shift(-2)) * inv;
    }
    return out;
}

}  // namespace

ControlReport control_diagnostics(const ControlFamily& family, const BandDecomposition& decomp,
                                  double q) {
    ControlReport rep;
    const GridSpec& spec = decomp.spec;
    const std::size_t total = spec.size();
    const ControlParams& cp = family.params;
    const double dir_gain = std::pow(2.0, cp.kappa * cp.sigma);

    rep.min_majorant_over_band = std::numeric_limits<double>::infinity();

    for (int j = family.j_min; j <= family.j_max; ++j) {
        ControlBandRow row;
        row.j = j;
        const GridFunction& om = family.omega(j);
        const GridFunction& band = decomp.band(j);
        if (sup_norm(om) == 0.0) {
            row.empty = true;
            rep.rows.push_back(row);
            continue;
        }

        GridFunction mm = hl_maximal(hl_maximal(band));
        row.mm_ratio = max_over(total, [&](std::size_t i) {
            return om[i].real() / (dir_gain * mm[i].real());
        });

        const double wj = std::ldexp(1.0, j);
        for (int ax = 0; ax < spec.dim; ++ax) {
            const std::vector<double> der = fd4_axis(om, ax);
            const double r = max_over(total, [&](std::size_t i) {
                return std::abs(der[i]) / (wj * om[i].real());
            });
            if (ax < cp.kappa)
                row.good_ratio_raw = std::max(row.good_ratio_raw, r);
            else
                row.bad_ratio = std::max(row.bad_ratio, r);
        }
        row.good_ratio_norm = row.good_ratio_raw * std::ldexp(1.0, cp.sigma);

        const double dom = max_over(total, [&](std::size_t i) {
            const double b = std::abs(band[i]);
            return (b > 0.0) ? b / om[i].real() : 0.0;
        });
        if (dom > 0.0)
            rep.min_majorant_over_band = std::min(rep.min_majorant_over_band, 1.0 / dom);

        rep.rows.push_back(row);
        rep.mm_ratio_max = std::max(rep.mm_ratio_max, row.mm_ratio);
        rep.good_ratio_raw_max = std::max(rep.good_ratio_raw_max, row.good_ratio_raw);
        rep.good_ratio_norm_max = std::max(rep.good_ratio_norm_max, row.good_ratio_norm);
        rep.bad_ratio_max = std::max(rep.bad_ratio_max, row.bad_ratio);
    }

    // |sup_j 2^(alpha j) majorant_j|_Lp vs sigma 2^(kappa sigma / p) |f|
    {
        GridFunction sup(spec);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(total); ++ii) {
            const std::size_t i = static_cast<std::size_t>(ii);
            double best = 0.0;
            for (int j = family.j_min; j <= family.j_max; ++j)
                best = std::max(best, std::pow(2.0, cp.alpha * j) * family.omega(j)[i].real());
            sup[i] = best;
        }
        TlParams tl{cp.alpha, cp.p, q};
        const double fnorm = tl_norm(decomp, tl);
        if (fnorm > 0.0)
            rep.sup_norm_ratio = lp_norm(sup, cp.p) /
                                 (cp.sigma * std::pow(2.0, cp.kappa * cp.sigma / cp.p) * fnorm);
    }

    // exact algebra: sum of history-dominant terms <= 3R sup_m 2^(alpha m) majorant_m
    {
        const int R = cp.stride;
        double excess = -std::numeric_limits<double>::infinity();
        double scale = 0.0;
        std::vector<double> w(static_cast<std::size_t>(family.j_max - family.j_min + 1));
        for (int j = family.j_min; j <= family.j_max; ++j)
            w[static_cast<std::size_t>(j - family.j_min)] = std::pow(2.0, cp.alpha * j);
        for (std::size_t i = 0; i < total; ++i) {
            double sum = 0.0, sup = 0.0;
            for (int m = family.j_min; m <= family.j_max; ++m) {
                const double vm = w[static_cast<std::size_t>(m - family.j_min)] *
                                  family.omega(m)[i].real();
                sup = std::max(sup, vm);
                double hist = 0.0;
                for (int k = m - R; k >= family.j_min; k -= R)
                    hist += w[static_cast<std::size_t>(k - family.j_min)] *
                            family.omega(k)[i].real();
                if (vm > 0.5 * hist) sum += vm;
            }
            excess = std::max(excess, sum - 3.0 * R * sup);
            scale = std::max(scale, 3.0 * R * sup);
        }
        rep.dominant_sum_excess = (scale > 0.0) ? excess : 0.0;
        rep.dominant_sum_scale = scale;
    }
    if (std::isinf(rep.min_majorant_over_band)) rep.min_majorant_over_band = 0.0;
    return rep;
}

}  // namespace lph
