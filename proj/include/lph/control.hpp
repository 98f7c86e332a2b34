#pragma once

#include <memory>
#include <vector>

#include "lph/filter_bank.hpp"
#include "lph/kernels.hpp"

namespace lph {

// Parameters of the anisotropic control machinery. Good directions occupy
// axes 0..kappa-1 (callers permute their data so this holds; good_dirs
// records the original axes for reports).
struct ControlParams {
    int sigma = 2;       // anisotropy exponent
    int kappa = 1;       // number of good directions
    int stride = 4;      // residue-class stride R
    double alpha = 1.0;
    double p = 2.0;
    std::vector<int> good_dirs;

    void validate(int dim) const;
};

// Per-band kernel grids reused across majorant builds: the periodized tail
// kernel T_j, the periodized p-th power of the anisotropic envelope at scale
// 2^j, and the band lattice stride. Also derives the domination constant
// C_low with |band_j| <= C_low * majorant_j from the discrete kernels alone.
class ControlWorkspace {
public:
    ControlWorkspace(const GridSpec& spec, int j_min, int j_max, const ControlParams& params);

    const GridSpec& spec() const { return spec_; }
    const ControlParams& params() const { return params_; }
    int j_min() const { return j_min_; }
    int j_max() const { return j_max_; }

    const GridFunction& tail_grid(int j) const;
    const std::vector<double>& weight_grid(int j) const;
    int lattice_stride(int j) const;
    double domination_constant() const { return domination_; }
    bool sigma_capped() const { return sigma_capped_; }
    int sigma_cap() const { return sigma_cap_; }

private:
    GridSpec spec_;
    ControlParams params_;
    int j_min_, j_max_;
    std::vector<GridFunction> tails_;
    std::vector<std::vector<double>> weights_;
    std::vector<int> strides_;
    double domination_ = 0.0;
    bool sigma_capped_ = false;
    int sigma_cap_ = 0;
};

struct ControlFamily {
    ControlParams params;
    int j_min = 0;
    int j_max = 0;
    double domination = 0.0;                // C_low
    std::vector<GridFunction> majorant;     // smooth anisotropic majorant of |band_j|
    std::vector<GridFunction> gate;         // smooth cutoff toward history-dominated regions
    std::vector<GridFunction> peak_damp;    // (1-gate) * majorant
    std::vector<GridFunction> tail_damp;    // sum_{t>0, t=0 mod R} 2^(-alpha t) majorant_{j-t}

    const GridFunction& omega(int j) const { return majorant[static_cast<std::size_t>(j - j_min)]; }
    const GridFunction& zeta(int j) const { return gate[static_cast<std::size_t>(j - j_min)]; }
    const GridFunction& damp_u(int j) const { return peak_damp[static_cast<std::size_t>(j - j_min)]; }
    const GridFunction& damp_g(int j) const { return tail_damp[static_cast<std::size_t>(j - j_min)]; }
};

// majorant_j(x) = ( sum_{lattice y} [ (T_j * |band_j|)(y) ]^p W_j(x-y) )^(1/p),
// the discrete ell^p envelope of the band through the anisotropic kernel.
GridFunction build_majorant(const BandDecomposition& decomp, const ControlWorkspace& ws, int j);

// gate_j = step( 2^(alpha j) majorant_j / sum_{k<j, k=j mod R} 2^(alpha k) majorant_k ),
// identically 0 when the class history below j is empty.
GridFunction build_gate(const std::vector<GridFunction>& majorants, const ControlParams& params,
                        int j_min, int j);

ControlFamily build_control(const BandDecomposition& decomp, const ControlWorkspace& ws);

// max_j max(|majorant_j|_inf, |band_j|_inf): the quantity the approximation
// stage rescales below 1.
double smallness_measure(const ControlFamily& family, const BandDecomposition& decomp);

struct ControlBandRow {
    int j = 0;
    bool empty = false;
    double mm_ratio = 0.0;         // max majorant / (2^(kappa sigma) M M band)
    double good_ratio_raw = 0.0;   // max |D_good majorant| / (2^j majorant)
    double good_ratio_norm = 0.0;  // max |D_good majorant| / (2^(j-sigma) majorant)
    double bad_ratio = 0.0;        // max |D_bad majorant| / (2^j majorant)
};

struct ControlReport {
    std::vector<ControlBandRow> rows;
    double mm_ratio_max = 0.0;
    double good_ratio_raw_max = 0.0;
    double good_ratio_norm_max = 0.0;
    double bad_ratio_max = 0.0;
    double sup_norm_ratio = 0.0;        // |sup_j 2^(alpha j) majorant_j|_p / (sigma 2^(kappa sigma/p) |f|)
    double dominant_sum_excess = 0.0;   // max_x (sum of history-dominant terms - 3R sup), <= 0 up to fp
    double dominant_sum_scale = 0.0;    // max_x 3R sup, for relative comparison
    double min_majorant_over_band = 0.0;  // min_x majorant/|band| over nonempty bands
};

ControlReport control_diagnostics(const ControlFamily& family, const BandDecomposition& decomp,
                                  double q);

}  // namespace lph
