#include <doctest.h>

#include <cmath>

#include "lph/filter_bank.hpp"
#include "test_support.hpp"

using namespace lph;
using namespace lph::testing;

namespace {

GridFunction unit_mode(const GridSpec& spec, int xi1) {
    SpectralField F(spec);
    std::vector<int> idx(static_cast<std::size_t>(spec.dim), 0);
    idx[0] = index_of_freq(xi1, spec.n);
    F.coeff[encode_index(spec, idx.data())] = 1.0;
    return inverse_transform(F);
}

}  // namespace

TEST_CASE("annular profile values and partition window") {
    AnnularProfile rho = build_profile();
    CHECK(rho(1.0) == 1.0);
    CHECK(rho(0.75) == 1.0);
    CHECK(rho(1.5) == 1.0);
    CHECK(rho(0.5) == 0.0);
    CHECK(rho(2.0) == 0.0);
    CHECK(rho(0.1) == 0.0);
    CHECK(rho(7.0) == 0.0);

    // 1 <= sum_j rho(2^j t) <= 2 sampled over [1e-3, 1e3]
    for (int k = 0; k < 10000; ++k) {
        const double t = 1e-3 * std::pow(1e6, k / 9999.0);
        const double s = rho.dyadic_sum(t);
        CHECK(s >= 1.0 - 1e-12);
        CHECK(s <= 2.0 + 1e-12);
        CHECK(rho(t) >= 0.0);
        CHECK(rho(t) <= 1.0);
    }
}

TEST_CASE("filter bank multiplier values") {
    GridSpec spec(2, 64);
    FilterBank bank = build_filter_bank(spec, 0, 4);

    // |xi| = 1: band 0 multiplier is exactly 1, all others 0
    std::vector<int> idx = {0, 1};
    const std::size_t i1 = encode_index(spec, idx.data());
    CHECK(bank.band(0)[i1] == doctest::Approx(1.0).epsilon(1e-14));
    for (int j = 1; j <= 4; ++j) CHECK(bank.band(j)[i1] == 0.0);

    // xi = 0: all multipliers zero
    for (int j = 0; j <= 4; ++j) CHECK(bank.band(j)[0] == 0.0);

    // partition of unity over the fully covered range; boundary octaves leak
    CHECK(partition_deficit(bank) <= 1e-12);
    CHECK(boundary_deficit(bank) <= 1.0);

    // support: band j vanishes outside its annulus
    for (int j = 0; j <= 4; ++j)
        for (std::size_t i = 0; i < spec.size(); ++i) {
            const double t = freq_norm(spec, i);
            if (!(t > std::ldexp(1.0, j - 1) && t < std::ldexp(1.0, j + 1)))
                CHECK(bank.band(j)[i] == 0.0);
        }

    CHECK_THROWS_AS(build_filter_bank(spec, 0, 5), param_error);
    CHECK_THROWS_AS(build_filter_bank(spec, 3, 1), param_error);
    CHECK(default_j_max(spec) == 4);
}

TEST_CASE("project basics") {
    GridSpec spec(2, 32);
    FilterBank bank = build_filter_bank(spec, 0, 3);

    GridFunction m = unit_mode(spec, 1);
    CHECK(max_abs_diff(project(bank, m, 0), m) < 1e-12);
    CHECK(sup_norm(project(bank, m, 1)) < 1e-13);

    GridFunction c(spec);
    for (cplx& z : c.samples) z = 4.0;
    for (int j = 0; j <= 3; ++j) CHECK(sup_norm(project(bank, c, j)) < 1e-13);

    // direct frequency-masking oracle for band 0
    GridFunction f = random_field(spec, 2);
    SpectralField F = forward_transform(f);
    for (std::size_t i = 0; i < F.coeff.size(); ++i) F.coeff[i] *= bank.band(0)[i];
    CHECK(max_abs_diff(project(bank, f, 0), inverse_transform(F)) < 1e-12 * sup_norm(f));

    CHECK_THROWS_AS(project(bank, f, 9), param_error);
}

TEST_CASE("decompose and reconstruct") {
    GridSpec spec(2, 64);
    FilterBank bank = build_filter_bank(spec, 0, 4);

    GridFunction z(spec);
    BandDecomposition dz = decompose(bank, z);
    for (const auto& b : dz.bands) CHECK(sup_norm(b) == 0.0);

    GridFunction m = unit_mode(spec, 1);
    BandDecomposition dm = decompose(bank, m);
    CHECK(sup_norm(dm.band(0)) > 0.5);
    for (int j = 1; j <= 4; ++j) CHECK(sup_norm(dm.band(j)) < 1e-13);

    // f with spectrum in the fully covered range reconstructs to f - mean
    GridFunction f = random_band_field(spec, {0, 1, 2, 3}, 12);
    for (cplx& v : f.samples) v += cplx(0.7, 0.1);  // nonzero mean, stripped at decompose
    BandDecomposition df = decompose(bank, f);
    CHECK(std::abs(df.stripped_mean - cplx(0.7, 0.1)) < 1e-12);
    GridFunction rec = reconstruct(df);
    GridFunction demeaned = f;
    for (cplx& v : demeaned.samples) v -= df.stripped_mean;
    CHECK(max_abs_diff(rec, demeaned) < 1e-10 * sup_norm(f));

    // each band is annulus-limited
    for (int j = 0; j <= 4; ++j) CHECK(band_leakage(bank, df.band(j), j) < 1e-12);
}

TEST_CASE("superposition identity per interior band") {
    GridSpec spec(2, 64);
    FilterBank bank = build_filter_bank(spec, 0, 4);
    GridFunction f = random_field(spec, 8);
    for (int k = 1; k <= 3; ++k)
        CHECK(superposition_residual(bank, f, k) <= 1e-12 * sup_norm(f));
    CHECK_THROWS_AS(superposition_residual(bank, f, 0), param_error);
}

TEST_CASE("moment factorization reassembles the band kernel") {
    GridSpec spec(2, 32);
    FilterBank bank = build_filter_bank(spec, 0, 3);

    for (int a : {1, 2, 3}) {
        MomentFactorization mf = moment_factorize(bank, a, 2);
        GridFunction sum(spec);
        for (std::size_t g = 0; g < mf.gammas.size(); ++g) {
            GridFunction part = mf.parts[g];
            for (int ax = 0; ax < spec.dim; ++ax) {
                const int ord = mf.gammas[g][static_cast<std::size_t>(ax)];
                if (ord > 0) part = spectral_derivative(part, ax, ord);
            }
            add_scaled(sum, part, cplx(1.0));
        }
        GridFunction kernel = band_kernel(bank, 2);
        CHECK(max_abs_diff(sum, kernel) <= 1e-12 * sup_norm(kernel));
        // xi = 0 coefficient of every part vanishes
        for (const GridFunction& part : mf.parts)
            CHECK(std::abs(forward_transform(part).coeff[0]) < 1e-13);
    }

    // a=1, d=1: single part, derivative recovers the band kernel
    GridSpec line(1, 32);
    FilterBank lbank = build_filter_bank(line, 0, 2);
    MomentFactorization mf1 = moment_factorize(lbank, 1, 1);
    REQUIRE(mf1.parts.size() == 1);
    CHECK(max_abs_diff(spectral_derivative(mf1.parts[0], 0, 1), band_kernel(lbank, 1)) <
          1e-12 * sup_norm(band_kernel(lbank, 1)));

    CHECK_THROWS_AS(moment_factorize(bank, 0, 1), param_error);
}

TEST_CASE("bernstein ratios") {
    GridSpec spec(2, 64);
    FilterBank bank = build_filter_bank(spec, 0, 4);

    // single mode at |xi|=1, d=2, p=2, alpha=1: ratio = 1/(2 pi)
    GridFunction m = unit_mode(spec, 1);
    BandDecomposition dm = decompose(bank, m);
    BernsteinReport rep = bernstein_ratios(dm, 1.0, 2.0);
    CHECK(!rep.critical_mismatch);
    CHECK(rep.rows[0].ratio == doctest::Approx(1.0 / two_pi).epsilon(1e-10));
    CHECK(rep.rows[1].empty_band);
    CHECK(rep.rows[1].ratio == 0.0);

    // dilation invariance: a localized wave packet at scale 2^-j and its
    // physical-space dilate at scale 2^-(j+1) give matching ratios
    auto packet_at = [&](int j) {
        GridFunction packet(spec);
        std::vector<int> idx(2);
        const double s = 3.0 * std::ldexp(1.0, -j);
        const double carrier = std::ldexp(1.0, j);
        for (std::size_t i = 0; i < packet.size(); ++i) {
            decode_index(spec, i, idx.data());
            double r2 = 0.0;
            for (int ax = 0; ax < 2; ++ax) {
                double x = spec.spacing() * idx[static_cast<std::size_t>(ax)];
                if (x > spec.period / 2) x -= spec.period;
                r2 += x * x;
            }
            packet[i] = std::exp(-r2 / (2.0 * s * s)) *
                        std::exp(cplx(0.0, carrier * spec.spacing() * idx[0]));
        }
        return project(bank, packet, j);
    };

    BandDecomposition d2 = decompose(bank, packet_at(2));
    BandDecomposition d3 = decompose(bank, packet_at(3));
    const double ratio2 = bernstein_ratios(d2, 1.0, 2.0).rows[2].ratio;
    const double ratio3 = bernstein_ratios(d3, 1.0, 2.0).rows[3].ratio;
    CHECK(ratio2 > 0.0);
    CHECK(std::abs(ratio3 - ratio2) < 0.05 * ratio2);
}
