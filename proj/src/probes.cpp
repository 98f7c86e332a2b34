#include "lph/probes.hpp"

#include <algorithm>
#include <cmath>

#include "lph/reduce.hpp"
#include "lph/tl_norms.hpp"

namespace lph {

ShiftedMaximal shifted_maximal(const std::vector<GridFunction>& fields,
                               const ShiftedKernels& kernels) {
    if (fields.size() != kernels.kernels.size())
        throw param_error("shifted_maximal: band count mismatch");
    ShiftedMaximal out;
    for (std::size_t b = 0; b < fields.size(); ++b) {
        if (!(fields[b].spec == kernels.spec))
            throw param_error("shifted_maximal: spec mismatch");
        out.per_band.push_back(circular_convolve(abs_field(fields[b]), kernels.kernels[b]));
    }
    out.sup = GridFunction(kernels.spec);
    const std::size_t total = kernels.spec.size();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(total); ++ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        double best = 0.0;
        for (const GridFunction& g : out.per_band) best = std::max(best, std::abs(g[i]));
        out.sup[i] = best;
    }
    return out;
}

namespace {

double min_image_norm(const GridSpec& spec, const int* idx) {
    double r2 = 0.0;
    for (int ax = 0; ax < spec.dim; ++ax) {
        double x = spec.spacing() * idx[ax];
        x = std::remainder(x, spec.period);
        r2 += x * x;
    }
    return std::sqrt(r2);
}

std::size_t shifted_flat(const GridSpec& spec, const int* idx, const int* shift) {
    std::size_t flat = 0;
    for (int ax = 0; ax < spec.dim; ++ax) {
        const int v = ((idx[ax] - shift[ax]) % spec.n + spec.n) % spec.n;
        flat = flat * static_cast<std::size_t>(spec.n) + static_cast<std::size_t>(v);
    }
    return flat;
}

}  // namespace

ZoReport zo_kernel_check(const GridSpec& spec, int j_min, int j_max,
                         const std::vector<std::vector<double>>& shifts) {
    ZoReport rep;
    const GridFunction base = tail_kernel(spec, 0);
    const double hvol = spec.cell_volume();
    const std::size_t total = spec.size();
    std::vector<int> idx(static_cast<std::size_t>(spec.dim));

    rep.c1_analytic = tail_kernel_mass(spec.dim);
    rep.c1_discrete =
        hvol * pairwise_sum(total, [&](std::size_t i) { return base[i].real(); });

    // condition 2: R * integral over |y| >= R, probed at dyadic radii
    for (double R = 1.0; R < spec.period / 2; R *= 2.0) {
        double outer = 0.0;
        for (std::size_t i = 0; i < total; ++i) {
            decode_index(spec, i, idx.data());
            if (min_image_norm(spec, idx.data()) >= R) outer += base[i].real();
        }
        rep.c2_worst = std::max(rep.c2_worst, R * hvol * outer);
    }

    // condition 3: |T(.-x) - T|_L1 <= C |x| for small x, probed on grid shifts
    const std::vector<std::vector<int>> probes = [&] {
        std::vector<std::vector<int>> p;
        std::vector<int> e(static_cast<std::size_t>(spec.dim), 0);
        for (int k : {1, 2, 4}) {
            e[0] = k;
            if (k * spec.spacing() <= 1.0) p.push_back(e);
        }
        e[0] = 1;
        if (spec.dim > 1) {
            e[1] = 1;
            if (std::sqrt(2.0) * spec.spacing() <= 1.0) p.push_back(e);
        }
        return p;
    }();
    for (const std::vector<int>& x : probes) {
        double l1 = 0.0;
        for (std::size_t i = 0; i < total; ++i) {
            decode_index(spec, i, idx.data());
            l1 += std::abs(base[shifted_flat(spec, idx.data(), x.data())].real() - base[i].real());
        }
        double xn = 0.0;
        for (int ax = 0; ax < spec.dim; ++ax) xn += static_cast<double>(x[static_cast<std::size_t>(ax)]) * x[static_cast<std::size_t>(ax)];
        xn = spec.spacing() * std::sqrt(xn);
        rep.c3_slope = std::max(rep.c3_slope, hvol * l1 / xn);
    }

    // Hormander integral for the shifted family, sup over bands
    for (const std::vector<double>& r : shifts) {
        const ShiftedKernels fam = build_shifted_kernels(spec, j_min, j_max, r);
        double rn = 0.0;
        for (double c : r) rn += c * c;
        rn = std::sqrt(rn);
        double worst = 0.0;
        for (const std::vector<int>& x : probes) {
            const double xn = [&] {
                double s = 0.0;
                for (int ax = 0; ax < spec.dim; ++ax) s += static_cast<double>(x[static_cast<std::size_t>(ax)]) * x[static_cast<std::size_t>(ax)];
                return spec.spacing() * std::sqrt(s);
            }();
            double integral = 0.0;
            for (std::size_t i = 0; i < total; ++i) {
                decode_index(spec, i, idx.data());
                if (min_image_norm(spec, idx.data()) < 4.0 * xn) continue;
                double sup = 0.0;
                const std::size_t ishift = shifted_flat(spec, idx.data(), x.data());
                for (const GridFunction& k : fam.kernels)
                    sup = std::max(sup, std::abs(k[ishift].real() - k[i].real()));
                integral += sup;
            }
            worst = std::max(worst, hvol * integral);
        }
        rep.shift_norms.push_back(rn);
        rep.hormander.push_back(worst);
        rep.log_ratio.push_back(worst / std::log(2.0 + rn));
    }
    return rep;
}

LogBoundReport log_bound_probe(const BandDecomposition& decomp, double p, double q,
                               const std::vector<std::vector<double>>& shifts) {
    LogBoundReport rep;
    const double input_norm = lp_lq_norm(decomp.bands, p, q);

    std::vector<std::pair<double, double>> measured;  // (|r|, ratio)
    for (const std::vector<double>& r : shifts) {
        const ShiftedKernels fam =
            build_shifted_kernels(decomp.spec, decomp.j_min, decomp.j_max, r);
        double rn = 0.0;
        for (double c : r) rn += c * c;
        rn = std::sqrt(rn);
        if (input_norm == 0.0) {
            measured.emplace_back(rn, 0.0);
            continue;
        }
        const ShiftedMaximal sm = shifted_maximal(decomp.bands, fam);
        measured.emplace_back(rn, lp_lq_norm(sm.per_band, p, q) / input_norm);
    }

    if (input_norm == 0.0) {
        for (const auto& [rn, m] : measured)
            rep.rows.push_back({rn, m, 0.0, true, true});
        return rep;
    }

    std::size_t smallest = 0;
    for (std::size_t i = 1; i < measured.size(); ++i)
        if (measured[i].first < measured[smallest].first) smallest = i;
    rep.calibration_k = measured[smallest].second / std::log(2.0 + measured[smallest].first);

    for (const auto& [rn, m] : measured) {
        LogBoundRow row;
        row.r_norm = rn;
        row.measured = m;
        row.bound = 2.0 * rep.calibration_k * std::log(2.0 + rn);
        row.pass = m <= row.bound + 1e-12;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace lph
