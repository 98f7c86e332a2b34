#include <doctest.h>

#include <cmath>

#include "lph/control.hpp"
#include "lph/profile.hpp"
#include "lph/ref.hpp"
#include "test_support.hpp"

using namespace lph;
using namespace lph::testing;

namespace {

// Independent triple-loop realization of the majorant definition: lattice
// sum over band-lattice points and torus images of [conv * envelope]^p.
GridFunction majorant_bruteforce(const BandDecomposition& decomp, const ControlWorkspace& ws,
                                 int j) {
    const GridSpec& spec = decomp.spec;
    const ControlParams& cp = ws.params();
    GridFunction conv = ref::circular_convolve(abs_field(decomp.band(j)), ws.tail_grid(j));
    const int m = ws.lattice_stride(j);
    const double scale = std::ldexp(1.0, j);

    GridFunction out(spec);
    for (int x = 0; x < spec.n; ++x) {
        long double acc = 0.0L;
        for (int y = 0; y < spec.n; y += m) {
            const double c = conv[static_cast<std::size_t>(y)].real();
            for (int img = -60; img <= 60; ++img) {
                double u = scale * (spec.spacing() * (x - y) + img * spec.period);
                const double e = aniso_exp(&u, 1, cp.sigma, cp.kappa);
                acc += powl(static_cast<long double>(c * e), cp.p);
            }
        }
        out[static_cast<std::size_t>(x)] = static_cast<double>(powl(acc, 1.0L / cp.p));
    }
    return out;
}

double gate_step_ref(double t) {  // 1 on [0,1/2], 0 on [1,inf)
    if (t <= 0.5) return 1.0;
    if (t >= 1.0) return 0.0;
    return 1.0 - smooth_step(2.0 * t - 1.0);
}

}  // namespace

TEST_CASE("majorant matches brute-force lattice oracle (d=1, n=8)") {
    GridSpec spec(1, 8);
    FilterBank bank = build_filter_bank(spec, 0, 1);
    ControlParams cp;
    cp.sigma = 2;
    cp.kappa = 0;  // d=1: no good directions
    cp.stride = 2;
    cp.alpha = 1.0;
    cp.p = 2.0;
    ControlWorkspace ws(spec, 0, 1, cp);

    // spike input and a random input
    GridFunction spike(spec);
    spike[3] = 1.0;
    for (const GridFunction& f : {spike, random_field(spec, 91)}) {
        BandDecomposition d = decompose(bank, f);
        for (int j = 0; j <= 1; ++j) {
            GridFunction fast = build_majorant(d, ws, j);
            GridFunction slow = majorant_bruteforce(d, ws, j);
            const double scale = sup_norm(slow);
            if (scale == 0.0)
                CHECK(sup_norm(fast) == 0.0);
            else
                CHECK(max_abs_diff(fast, slow) < 1e-10 * scale);
        }
    }
}

TEST_CASE("majorant positivity and domination") {
    GridSpec spec(2, 32);
    FilterBank bank = build_filter_bank(spec, 0, 3);
    ControlParams cp;
    cp.sigma = 2;
    cp.kappa = 1;
    cp.stride = 2;
    cp.alpha = 1.0;
    cp.p = 2.0;
    ControlWorkspace ws(spec, 0, 3, cp);
    CHECK(ws.domination_constant() > 1.0);

    BandDecomposition d = decompose(bank, random_band_field(spec, {0, 1, 2, 3}, 7));
    ControlFamily fam = build_control(d, ws);

    for (int j = 0; j <= 3; ++j) {
        const GridFunction& om = fam.omega(j);
        const GridFunction& band = d.band(j);
        bool empty = sup_norm(band) < 1e-14;
        for (std::size_t i = 0; i < om.size(); ++i) {
            if (empty)
                CHECK(om[i].real() == 0.0);
            else
                CHECK(om[i].real() > 0.0);  // vanishing at one point means vanishing identically
            CHECK(std::abs(band[i]) <= ws.domination_constant() * om[i].real() + 1e-15);
        }
    }

    // empty band gives identically zero majorant
    BandDecomposition dz = decompose(bank, GridFunction(spec));
    CHECK(sup_norm(build_majorant(dz, ws, 2)) == 0.0);
}

TEST_CASE("gate construction") {
    GridSpec spec(2, 16);
    ControlParams cp;
    cp.sigma = 1;
    cp.kappa = 1;
    cp.stride = 2;
    cp.alpha = 1.0;
    cp.p = 2.0;

    // synthetic majorants: four bands, class {0,2} and {1,3}
    std::vector<GridFunction> oms;
    for (int j = 0; j < 4; ++j) {
        GridFunction g(spec);
        for (std::size_t i = 0; i < g.size(); ++i)
            g[i] = 0.1 + 0.05 * j + 0.02 * std::sin(0.3 * static_cast<double>(i) + j);
        oms.push_back(g);
    }

    // lowest band of each residue class: empty history, gate identically 0
    CHECK(sup_norm(build_gate(oms, cp, 0, 0)) == 0.0);
    CHECK(sup_norm(build_gate(oms, cp, 0, 1)) == 0.0);

    // deep-history plateau: tiny band over huge history forces gate = 1
    std::vector<GridFunction> plateau = oms;
    for (std::size_t i = 0; i < plateau[2].size(); ++i) plateau[2][i] = 1e-6;
    GridFunction g2 = build_gate(plateau, cp, 0, 2);
    for (std::size_t i = 0; i < g2.size(); ++i) CHECK(g2[i].real() == 1.0);

    // mixed case matches the scalar oracle pointwise
    GridFunction g3 = build_gate(oms, cp, 0, 3);
    for (std::size_t i = 0; i < g3.size(); ++i) {
        const double ratio = 2.0 * 2.0 * 2.0 * oms[3][i].real() / (2.0 * oms[1][i].real());
        CHECK(g3[i].real() == doctest::Approx(gate_step_ref(ratio)).epsilon(1e-12));
        CHECK(g3[i].real() >= 0.0);
        CHECK(g3[i].real() <= 1.0);
    }
}

TEST_CASE("damping fields") {
    GridSpec spec(2, 32);
    FilterBank bank = build_filter_bank(spec, 0, 3);
    ControlParams cp;
    cp.sigma = 2;
    cp.kappa = 1;
    cp.stride = 2;
    cp.alpha = 1.5;
    cp.p = 2.0;
    ControlWorkspace ws(spec, 0, 3, cp);

    // all-zero input: U = G = 0
    ControlFamily z = build_control(decompose(bank, GridFunction(spec)), ws);
    for (int j = 0; j <= 3; ++j) {
        CHECK(sup_norm(z.damp_u(j)) == 0.0);
        CHECK(sup_norm(z.damp_g(j)) == 0.0);
    }

    // single nonzero band j0=1: spectrum exactly on |xi| = 2 (band 1 plateau,
    // where both neighbor annuli vanish); G_j = 2^(-alpha (j-j0)) omega_j0
    // iff j-j0 = 0 mod R
    GridFunction mono(spec);
    {
        SpectralField F(spec);
        std::vector<int> idx = {index_of_freq(2, spec.n), 0};
        F.coeff[encode_index(spec, idx.data())] = cplx(0.8, 0.2);
        idx = {0, index_of_freq(-2, spec.n)};
        F.coeff[encode_index(spec, idx.data())] = cplx(-0.3, 0.5);
        mono = inverse_transform(F);
    }
    BandDecomposition d1 = decompose(bank, mono);
    ControlFamily f1 = build_control(d1, ws);
    CHECK(sup_norm(f1.damp_g(0)) == 0.0);
    CHECK(sup_norm(f1.damp_g(1)) == 0.0);
    CHECK(sup_norm(f1.damp_g(2)) == 0.0);  // 2-1 = 1 not multiple of R=2
    GridFunction expect = scaled(f1.omega(1), std::pow(2.0, -cp.alpha * 2.0));
    CHECK(max_abs_diff(f1.damp_g(3), expect) < 1e-13);

    // random input: direct-sum oracle
    BandDecomposition d = decompose(bank, random_band_field(spec, {0, 1, 2, 3}, 6));
    ControlFamily fam = build_control(d, ws);
    for (int j = 0; j <= 3; ++j) {
        GridFunction direct(spec);
        for (int t = cp.stride; j - t >= 0; t += cp.stride)
            add_scaled(direct, fam.omega(j - t), std::pow(2.0, -cp.alpha * t));
        CHECK(max_abs_diff(fam.damp_g(j), direct) < 1e-13 * (1.0 + sup_norm(direct)));
        // U = (1-gate) * omega pointwise
        for (std::size_t i = 0; i < fam.damp_u(j).size(); i += 17)
            CHECK(fam.damp_u(j)[i].real() ==
                  doctest::Approx((1.0 - fam.zeta(j)[i].real()) * fam.omega(j)[i].real())
                      .epsilon(1e-14));
    }
}

TEST_CASE("control diagnostics: exact dominant-sum inequality and ratios") {
    GridSpec spec(2, 32);
    FilterBank bank = build_filter_bank(spec, 0, 3);
    ControlParams cp;
    cp.sigma = 2;
    cp.kappa = 1;
    cp.stride = 2;
    cp.alpha = 1.0;
    cp.p = 2.0;
    ControlWorkspace ws(spec, 0, 3, cp);

    BandDecomposition d = decompose(bank, random_band_field(spec, {0, 1, 2, 3}, 21));
    ControlFamily fam = build_control(d, ws);
    ControlReport rep = control_diagnostics(fam, d, 2.0);

    // the inequality is pure algebra: excess <= 0 up to roundoff
    CHECK(rep.dominant_sum_excess <= 1e-12 * rep.dominant_sum_scale);
    CHECK(rep.mm_ratio_max > 0.0);
    CHECK(std::isfinite(rep.mm_ratio_max));
    CHECK(rep.sup_norm_ratio > 0.0);
    CHECK(rep.good_ratio_raw_max > 0.0);
    CHECK(rep.bad_ratio_max > 0.0);
    CHECK(rep.min_majorant_over_band * ws.domination_constant() >= 1.0);

    // single-band input: inequality reduces to omega <= 3R omega
    BandDecomposition d1 = decompose(bank, random_band_field(spec, {2}, 22));
    ControlFamily f1 = build_control(d1, ws);
    ControlReport r1 = control_diagnostics(f1, d1, 2.0);
    CHECK(r1.dominant_sum_excess <= 1e-12 * r1.dominant_sum_scale);
}

TEST_CASE("anisotropy: sigma raises the majorant and flattens good derivatives") {
    GridSpec spec(2, 32);
    FilterBank bank = build_filter_bank(spec, 0, 3);
    BandDecomposition d = decompose(bank, random_band_field(spec, {0, 1, 2, 3}, 33));

    ControlParams cp;
    cp.kappa = 1;
    cp.stride = 2;
    cp.alpha = 1.0;
    cp.p = 2.0;

    cp.sigma = 1;
    ControlWorkspace ws1(spec, 0, 3, cp);
    ControlFamily f1 = build_control(d, ws1);
    cp.sigma = 2;
    ControlWorkspace ws2(spec, 0, 3, cp);
    ControlFamily f2 = build_control(d, ws2);

    // increasing sigma never decreases the majorant pointwise
    for (int j = 0; j <= 3; ++j)
        for (std::size_t i = 0; i < f1.omega(j).size(); ++i)
            CHECK(f2.omega(j)[i].real() >= f1.omega(j)[i].real() * (1.0 - 1e-12));

    // good-direction derivative ratio roughly halves per sigma increment
    ControlReport r1 = control_diagnostics(f1, d, 2.0);
    ControlReport r2 = control_diagnostics(f2, d, 2.0);
    const double drop = r2.good_ratio_raw_max / r1.good_ratio_raw_max;
    CHECK(drop > 0.3);
    CHECK(drop < 0.8);

    // sigma cap flag
    cp.sigma = 5;
    ControlWorkspace wsc(spec, 0, 3, cp);
    CHECK(wsc.sigma_capped());
    CHECK(wsc.sigma_cap() == 2);
}

TEST_CASE("control parameter validation") {
    ControlParams cp;
    cp.sigma = 0;
    CHECK_THROWS_AS(cp.validate(2), param_error);
    cp.sigma = 2;
    cp.kappa = 2;
    CHECK_THROWS_AS(cp.validate(2), param_error);
    cp.kappa = 1;
    cp.p = 1.0;
    CHECK_THROWS_AS(cp.validate(2), param_error);
}
