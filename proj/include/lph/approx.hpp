#pragma once

#include <optional>
#include <vector>

#include "lph/control.hpp"
#include "lph/tl_norms.hpp"

namespace lph {

struct ApproxParams {
    double alpha = 1.0;
    double p = 2.0;
    double q = 2.0;
    int dim = 2;
    double delta = 0.5;
    int kappa = 1;
    int sigma = 2;
    int stride = 4;        // residue-class stride R
    double a_alpha = 1.0;  // auxiliary exponent, 1 for alpha >= 1
    double eta_margin = 0.5;
    std::vector<int> good_dirs;  // 0-based axes, kappa of them
    bool sigma_capped = false;
    bool sigma_overridden = false;
};

// Derives kappa, a_alpha, sigma and R from (alpha, p, q, d, delta):
//   kappa   = largest integer < min(p, d)          (must be >= 1)
//   a_alpha = 1 if alpha >= 1, else min(alpha, alpha/(2(1-alpha)))
//   sigma   = smallest integer with sigma^3 2^((-min(1,alpha)+kappa/p) sigma) <= delta/2
//             and sigma 2^-sigma <= delta/2, clamped to sigma_cap when given
//   R       = ceil((kappa+1)/min(1, alpha a_alpha) * sigma)
// sigma_override bypasses the delta rule (flagged, not clamped).
ApproxParams select_parameters(double alpha, double p, double q, int dim, double delta,
                               std::optional<int> sigma_override = std::nullopt,
                               std::optional<int> sigma_cap = std::nullopt);

// Finite telescoping identity: for a_0..a_{N-1},
//   sum_k a_k prod_{l>k} (1-a_l) + prod_k (1-a_k) = 1,
// and the sum part has modulus <= 1 when all entries lie in [0,1].
struct TelescopeParts {
    double sum_part = 0.0;
    double prod_part = 1.0;
};
TelescopeParts telescope_eval(const std::vector<double>& entries);

struct BandSplit {
    int j_min = 0;
    int j_max = 0;
    std::vector<GridFunction> dominant;  // (1-gate_j) band_j
    std::vector<GridFunction> gated;     // gate_j band_j

    const GridFunction& h(int j) const { return dominant[static_cast<std::size_t>(j - j_min)]; }
    const GridFunction& g(int j) const { return gated[static_cast<std::size_t>(j - j_min)]; }
};
BandSplit split_bands(const BandDecomposition& decomp, const ControlFamily& control);

// sum_j part_j prod_{j'>j, j'=j mod stride} (1 - damp_j'), suffix products
// swept per residue class.
GridFunction damped_sum(const std::vector<GridFunction>& parts,
                        const std::vector<GridFunction>& dampers, int stride);

struct ApproxReport {
    double input_tl_norm = 0.0;
    double theta = 1.0;       // rescale applied to the unit-normalized input
    double smallness = 0.0;   // max_j max(|majorant|_inf, |band|_inf) on unit input
    double c_low = 0.0;
    double budget_dominant = 0.0;      // C_low
    double budget_gated = 0.0;         // C_low * R
    double dominant_bounded_inf = 0.0; // |h~|_inf at working scale
    double gated_bounded_inf = 0.0;    // |g~|_inf at working scale
    bool budgets_ok = true;
    double approximant_inf = 0.0;
    double approximant_tl = 0.0;
    std::vector<double> direction_errors;  // |d_i(f-F)|_(alpha-1,p,q), all axes (original order)
    double good_error = 0.0;               // sum over good axes, normalized by |f|
    double all_error = 0.0;                // sum over all axes, normalized by |f|
    bool sigma_capped = false;
    bool zero_input = false;
};

// Working-scale intermediates kept for the diagnostics pass.
struct ApproxTrace {
    BandDecomposition decomp;  // at working scale, in working axis order
    ControlFamily control;
    BandSplit split;
    GridFunction dominant_bounded;  // h~
    GridFunction gated_bounded;     // g~
    double theta = 1.0;
    double f_norm = 0.0;
};

struct ApproxResult {
    GridFunction approximant;       // F (original scale and axis order)
    GridFunction dominant_bounded;  // rescaled so approximant = dominant + gated pointwise
    GridFunction gated_bounded;
    double scale_used = 1.0;  // multiplier from working scale back to original
    ApproxReport report;
};

// Owns the filter bank and per-band kernel grids; approximate() may be called
// repeatedly (the Hodge iteration does) without rebuilding them.
class ApproxEngine {
public:
    ApproxEngine(const GridSpec& spec, const ApproxParams& params);

    const FilterBank& bank() const { return bank_; }
    const ApproxParams& params() const { return params_; }
    const ControlWorkspace& workspace() const { return ws_; }

    ApproxResult approximate(const GridFunction& f, const std::vector<int>& good_dirs,
                             ApproxTrace* trace = nullptr) const;
    ApproxResult approximate(const GridFunction& f, ApproxTrace* trace = nullptr) const;

private:
    GridSpec spec_;
    ApproxParams params_;
    FilterBank bank_;
    ControlWorkspace ws_;
};

struct ApproxDiagnostics {
    double h_identity_residual = 0.0;  // |(h - h~) - sum U_j V_j|_inf / scale
    double g_identity_residual = 0.0;  // |(g - g~) - sum G_j H_j|_inf / scale
    double v_max = 0.0;                // max_j |V_j|_inf
    double hist_max = 0.0;             // max_j |H_j|_inf
    bool v_within_one = false;
    bool bounds_ok = false;  // V,H <= C_low
    double c_low = 0.0;
    double h_shape_ratio = 0.0;  // good-dir |d(h-h~)| vs first-order symbolic shape
    double g_shape_ratio = 0.0;  // |d(g-g~)| vs its symbolic shape
};
ApproxDiagnostics approx_diagnostics(const ApproxTrace& trace, const ApproxParams& params,
                                     const FilterBank& bank);

}  // namespace lph
