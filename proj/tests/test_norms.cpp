#include <doctest.h>

#include <cmath>

#include "lph/maximal.hpp"
#include "lph/ref.hpp"
#include "lph/tl_norms.hpp"
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

double tl_norm_direct(const BandDecomposition& d, double alpha, double p, double q) {
    long double outer = 0.0L;
    for (std::size_t i = 0; i < d.spec.size(); ++i) {
        long double inner = 0.0L;
        for (int j = d.j_min; j <= d.j_max; ++j) {
            const long double v = std::pow(2.0, alpha * j) * std::abs(d.band(j)[i]);
            if (v > 0) inner += powl(v, q);
        }
        outer += powl(inner, static_cast<long double>(p) / q);
    }
    return static_cast<double>(powl(static_cast<long double>(d.spec.cell_volume()) * outer, 1.0L / p));
}

}  // namespace

TEST_CASE("tl norm basics and oracle") {
    GridSpec spec(2, 64);
    FilterBank bank = build_filter_bank(spec, 0, 4);
    TlParams params{1.0, 2.0, 2.0};

    CHECK(tl_norm(GridFunction(spec), bank, params) == 0.0);

    // single mode at |xi|=1: one active band, norm = L2 norm = 2 pi
    GridFunction m = unit_mode(spec, 1);
    for (double alpha : {0.5, 1.0, 2.0}) {
        TlParams pr{alpha, 2.0, 2.0};
        CHECK(tl_norm(m, bank, pr) == doctest::Approx(two_pi).epsilon(1e-12));
    }

    // two-band random input vs direct nested-loop oracle
    GridFunction f = random_band_field(spec, {1, 3}, 42);
    BandDecomposition d = decompose(bank, f);
    for (double p : {1.6, 2.0, 3.0})
        for (double q : {1.3, 2.0, 4.0}) {
            TlParams pr{1.0, p, q};
            const double got = tl_norm(d, pr);
            const double want = tl_norm_direct(d, 1.0, p, q);
            CHECK(std::abs(got - want) <= 1e-12 * want);
        }

    TlParams bad{1.0, 1.0, 2.0};
    CHECK_THROWS_AS(tl_norm(d, bad), param_error);
}

TEST_CASE("tl norm is a norm") {
    GridSpec spec(2, 32);
    FilterBank bank = build_filter_bank(spec, 0, 3);
    GridFunction f = random_band_field(spec, {0, 1, 2}, 1);
    GridFunction g = random_band_field(spec, {1, 2, 3}, 2);

    // exact homogeneity for dyadic scalars at p=q=2
    TlParams p22{1.0, 2.0, 2.0};
    CHECK(tl_norm(scaled(f, 2.0), bank, p22) == 2.0 * tl_norm(f, bank, p22));

    TlParams pr{1.0, 2.5, 1.8};
    const double c = 0.37;
    CHECK(tl_norm(scaled(f, c), bank, pr) ==
          doctest::Approx(c * tl_norm(f, bank, pr)).epsilon(1e-12));

    // triangle inequality
    GridFunction sum = f;
    add_scaled(sum, g, cplx(1.0));
    CHECK(tl_norm(sum, bank, pr) <= tl_norm(f, bank, pr) + tl_norm(g, bank, pr) + 1e-12);
}

TEST_CASE("seminorm equivalence") {
    GridSpec spec(2, 64);
    FilterBank bank = build_filter_bank(spec, 0, 4);
    TlParams params{1.0, 2.0, 2.0};

    // single mode e^{i x_1}: |f| = 2pi, d_1 f = i f at alpha-1, d_2 f = 0
    GridFunction m = unit_mode(spec, 1);
    SeminormEquivalence rep = seminorm_equivalence(m, bank, params);
    CHECK(!rep.zero_input);
    CHECK(rep.f_norm == doctest::Approx(two_pi).epsilon(1e-12));
    CHECK(rep.derivative_norms[0] == doctest::Approx(two_pi).epsilon(1e-12));
    CHECK(rep.derivative_norms[1] < 1e-10);
    CHECK(rep.ratio == doctest::Approx(1.0).epsilon(1e-9));

    SeminormEquivalence zero = seminorm_equivalence(GridFunction(spec), bank, params);
    CHECK(zero.zero_input);

    // localized packet vs its physical dilate: ratios within 10%
    auto packet_at = [&](int j) {
        GridFunction packet(spec);
        std::vector<int> idx(2);
        const double s = 3.0 * std::ldexp(1.0, -j);
        for (std::size_t i = 0; i < packet.size(); ++i) {
            decode_index(spec, i, idx.data());
            double r2 = 0.0;
            for (int ax = 0; ax < 2; ++ax) {
                double x = spec.spacing() * idx[static_cast<std::size_t>(ax)];
                if (x > spec.period / 2) x -= spec.period;
                r2 += x * x;
            }
            packet[i] = std::exp(-r2 / (2.0 * s * s)) *
                        std::exp(cplx(0.0, std::ldexp(1.0, j) * spec.spacing() * idx[0]));
        }
        return project(bank, packet, j);
    };
    const double r2 = seminorm_equivalence(packet_at(2), bank, params).ratio;
    const double r3 = seminorm_equivalence(packet_at(3), bank, params).ratio;
    CHECK(std::abs(r3 - r2) < 0.10 * r2);
}

TEST_CASE("maximal function against exhaustive oracle") {
    for (int d : {1, 2}) {
        GridSpec spec(d, 16);
        GridFunction f = random_field(spec, 77 + d);
        GridFunction fast = hl_maximal(f);
        GridFunction slow = ref::hl_maximal(f);
        CHECK(max_abs_diff(fast, slow) < 1e-13 * sup_norm(f));
    }

    // delta spike, d=1 n=8
    GridSpec spec(1, 8);
    GridFunction spike(spec);
    spike[3] = 1.0;
    CHECK(max_abs_diff(hl_maximal(spike), ref::hl_maximal(spike)) < 1e-15);
}

TEST_CASE("maximal function properties") {
    GridSpec spec(2, 32);

    GridFunction c(spec);
    for (cplx& z : c.samples) z = cplx(-0.3, 0.4);  // |c| = 0.5
    GridFunction mc = hl_maximal(c);
    for (std::size_t i = 0; i < mc.size(); ++i) CHECK(std::abs(mc[i].real() - 0.5) < 1e-14);

    GridFunction f = random_field(spec, 5);
    GridFunction mf = hl_maximal(f);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(mf[i].real() >= std::abs(f[i]) - 1e-15);

    // exact dyadic homogeneity
    GridFunction m2 = hl_maximal(scaled(f, 2.0));
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(m2[i] == 2.0 * mf[i]);
}

TEST_CASE("vector-valued maximal inequality, calibrated") {
    GridSpec spec(2, 32);
    FilterBank bank = build_filter_bank(spec, 0, 3);

    double calibrated = 0.0;
    for (std::uint64_t seed : {101, 102}) {
        BandDecomposition d = decompose(bank, random_band_field(spec, {0, 1, 2, 3}, seed));
        calibrated = std::max(calibrated, vector_maximal_ratio(d.bands, 2.0, 2.0));
    }
    CHECK(calibrated > 0.0);
    for (std::uint64_t seed : {201, 202, 203}) {
        BandDecomposition d = decompose(bank, random_band_field(spec, {0, 1, 2, 3}, seed));
        CHECK(vector_maximal_ratio(d.bands, 2.0, 2.0) <= 2.0 * calibrated);
    }
}

TEST_CASE("band derivative bound via maximal function, calibrated") {
    GridSpec spec(2, 32);
    FilterBank bank = build_filter_bank(spec, 0, 3);
    const std::vector<std::vector<int>> gammas = {{1, 0}, {0, 1}, {1, 1}, {2, 0}};

    auto measure = [&](std::uint64_t seed) {
        double worst = 0.0;
        BandDecomposition d = decompose(bank, random_band_field(spec, {0, 1, 2, 3}, seed));
        for (int j = d.j_min; j <= d.j_max; ++j) {
            const GridFunction& b = d.band(j);
            const double msup = sup_norm(hl_maximal(b));
            if (msup < 1e-13) continue;
            for (const std::vector<int>& g : gammas) {
                GridFunction der = b;
                int order = 0;
                for (int ax = 0; ax < 2; ++ax)
                    if (g[static_cast<std::size_t>(ax)] > 0) {
                        der = spectral_derivative(der, ax, g[static_cast<std::size_t>(ax)]);
                        order += g[static_cast<std::size_t>(ax)];
                    }
                worst = std::max(worst, sup_norm(der) / (std::ldexp(1.0, order * j) * msup));
            }
        }
        return worst;
    };

    const double calibrated = std::max(measure(301), measure(302));
    for (std::uint64_t seed : {401, 402, 403}) CHECK(measure(seed) <= 2.0 * calibrated);
}
