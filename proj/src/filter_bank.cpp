#include "lph/filter_bank.hpp"

#include <algorithm>
#include <cmath>

#include "lph/reduce.hpp"

namespace lph {

int default_j_max(const GridSpec& spec) {
    int j = 0;
    while ((2 << (j + 1)) <= spec.n / 2) ++j;  // 2^(j+2) <= n/2 fails first
    return j;
}

FilterBank build_filter_bank(const GridSpec& spec, int j_min, int j_max) {
    if (j_min > j_max) throw param_error("build_filter_bank: j_min > j_max");
    if (std::ldexp(1.0, j_max + 1) > spec.n / 2.0)
        throw param_error("build_filter_bank: band range exceeds Nyquist");

    FilterBank bank;
    bank.spec = spec;
    bank.j_min = j_min;
    bank.j_max = j_max;
    bank.multiplier.assign(static_cast<std::size_t>(bank.bands()),
                           std::vector<double>(spec.size(), 0.0));

    const std::size_t total = spec.size();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(total); ++ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        const double t = freq_norm(spec, i);
        if (t == 0.0) continue;
        const double denom = bank.profile.dyadic_sum(t);
        for (int j = j_min; j <= j_max; ++j) {
            const double num = bank.profile(std::ldexp(t, -j));
            if (num != 0.0)
                bank.multiplier[static_cast<std::size_t>(j - j_min)][i] = num / denom;
        }
    }
    return bank;
}

GridFunction project(const FilterBank& bank, const GridFunction& f, int j) {
    if (!bank.in_range(j)) throw param_error("project: band out of range");
    if (!(f.spec == bank.spec)) throw param_error("project: spec mismatch");
    SpectralField F = forward_transform(f);
    const std::vector<double>& m = bank.band(j);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(F.coeff.size()); ++i)
        F.coeff[static_cast<std::size_t>(i)] *= m[static_cast<std::size_t>(i)];
    return inverse_transform(F);
}

BandDecomposition decompose(const FilterBank& bank, const GridFunction& f) {
    if (!(f.spec == bank.spec)) throw param_error("decompose: spec mismatch");
    BandDecomposition out;
    out.spec = bank.spec;
    out.j_min = bank.j_min;
    out.j_max = bank.j_max;

    const SpectralField F = forward_transform(f);
    out.stripped_mean = F.coeff[0];
    out.bands.reserve(static_cast<std::size_t>(bank.bands()));
    for (int j = bank.j_min; j <= bank.j_max; ++j) {
        SpectralField B(bank.spec);
        const std::vector<double>& m = bank.band(j);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(F.coeff.size()); ++i)
            B.coeff[static_cast<std::size_t>(i)] =
                F.coeff[static_cast<std::size_t>(i)] * m[static_cast<std::size_t>(i)];
        out.bands.push_back(inverse_transform(B));
    }
    return out;
}

GridFunction reconstruct(const BandDecomposition& decomp) {
    GridFunction sum(decomp.spec);
    for (const GridFunction& b : decomp.bands) add_scaled(sum, b, cplx(1.0));
    return sum;
}

GridFunction band_kernel(const FilterBank& bank, int j) {
    if (!bank.in_range(j)) throw param_error("band_kernel: band out of range");
    SpectralField K(bank.spec);
    const std::vector<double>& m = bank.band(j);
    for (std::size_t i = 0; i < K.coeff.size(); ++i) K.coeff[i] = m[i];
    return inverse_transform(K);
}

namespace {

double partition_worst(const FilterBank& bank, double lo, double hi) {
    double worst = 0.0;
    for (std::size_t i = 0; i < bank.spec.size(); ++i) {
        const double t = freq_norm(bank.spec, i);
        if (!(t >= lo && t <= hi)) continue;
        double s = 0.0;
        for (int j = bank.j_min; j <= bank.j_max; ++j) s += bank.band(j)[i];
        worst = std::max(worst, std::abs(s - 1.0));
    }
    return worst;
}

}  // namespace

double partition_deficit(const FilterBank& bank) {
    return partition_worst(bank, std::ldexp(1.0, bank.j_min), std::ldexp(1.0, bank.j_max));
}

double boundary_deficit(const FilterBank& bank) {
    const double eps = 1e-9;
    return std::max(
        partition_worst(bank, std::ldexp(1.0, bank.j_min - 1) + eps,
                        std::ldexp(1.0, bank.j_min) - eps),
        partition_worst(bank, std::ldexp(1.0, bank.j_max) + eps,
                        std::ldexp(1.0, bank.j_max + 1) - eps));
}

double superposition_residual(const FilterBank& bank, const GridFunction& f, int k) {
    if (k - 1 < bank.j_min || k + 1 > bank.j_max)
        throw param_error("superposition_residual: k is not an interior band");
    const SpectralField F = forward_transform(f);
    SpectralField R(bank.spec);
    const std::vector<double>& mk = bank.band(k);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(R.coeff.size()); ++ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        double neighbor = 0.0;
        for (int j = k - 1; j <= k + 1; ++j) neighbor += bank.band(j)[i];
        R.coeff[i] = F.coeff[i] * mk[i] * (1.0 - neighbor);
    }
    return sup_norm(inverse_transform(R));
}

double band_leakage(const FilterBank& bank, const GridFunction& band_j, int j) {
    const SpectralField B = forward_transform(band_j);
    const double lo = std::ldexp(1.0, j - 1);
    const double hi = std::ldexp(1.0, j + 1);
    double inside = 0.0, outside = 0.0;
    for (std::size_t i = 0; i < B.coeff.size(); ++i) {
        const double t = freq_norm(bank.spec, i);
        const double e = std::norm(B.coeff[i]);
        if (t > lo && t < hi)
            inside += e;
        else
            outside += e;
    }
    if (inside + outside == 0.0) return 0.0;
    return std::sqrt(outside / (inside + outside));
}

namespace {

void enumerate_gammas(int d, int total, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == d - 1) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int g = total; g >= 0; --g) {
        cur.push_back(g);
        enumerate_gammas(d, total - g, cur, out);
        cur.pop_back();
    }
}

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

}  // namespace

MomentFactorization moment_factorize(const FilterBank& bank, int a, int j) {
    if (a < 1) throw param_error("moment_factorize: order must be >= 1");
    if (!bank.in_range(j)) throw param_error("moment_factorize: band out of range");
    const GridSpec& spec = bank.spec;

    MomentFactorization out;
    out.order = a;
    std::vector<int> cur;
    enumerate_gammas(spec.dim, a, cur, out.gammas);

    // (-i)^a; conj of i^a
    cplx phase(1.0, 0.0);
    for (int k = 0; k < a; ++k) phase *= cplx(0.0, -1.0);

    const double unit = two_pi / spec.period;
    const std::vector<double>& m = bank.band(j);
    std::vector<int> idx(static_cast<std::size_t>(spec.dim));

    for (const std::vector<int>& gamma : out.gammas) {
        double cg = factorial(a);
        for (int g : gamma) cg /= factorial(g);

        SpectralField P(spec);
        for (std::size_t i = 0; i < P.coeff.size(); ++i) {
            if (m[i] == 0.0) continue;
            decode_index(spec, i, idx.data());
            double xi_pow = 1.0;
            double norm2 = 0.0;
            for (int ax = 0; ax < spec.dim; ++ax) {
                const double xi = freq_of_index(idx[static_cast<std::size_t>(ax)], spec.n) * unit;
                norm2 += xi * xi;
                for (int g = 0; g < gamma[static_cast<std::size_t>(ax)]; ++g) xi_pow *= xi;
            }
            P.coeff[i] = phase * cg * xi_pow / std::pow(norm2, a) * m[i];
        }
        out.parts.push_back(inverse_transform(P));
    }
    return out;
}

BernsteinReport bernstein_ratios(const BandDecomposition& decomp, double alpha, double p) {
    BernsteinReport rep;
    rep.critical_mismatch = std::abs(alpha * p - decomp.spec.dim) > 1e-9;
    double scale = 0.0;
    for (const GridFunction& b : decomp.bands) scale = std::max(scale, sup_norm(b));
    for (int j = decomp.j_min; j <= decomp.j_max; ++j) {
        BernsteinRow row;
        row.j = j;
        const double sup = sup_norm(decomp.band(j));
        if (sup <= 1e-13 * scale) {  // below transform noise floor: empty band
            row.empty_band = true;
        } else {
            row.ratio = sup / (std::pow(2.0, alpha * j) * lp_norm(decomp.band(j), p));
        }
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace lph
