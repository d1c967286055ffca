#pragma once

#include "admhd/filter_ops.hpp"
#include "admhd/spectral_field.hpp"
#include "admhd/transform.hpp"

#include <array>
#include <memory>
#include <vector>

namespace admhd {

/// Which variant of the deconvolution MHD system is evolved.
///   DoubleViscous    — nu > 0, mu > 0
///   InviscidMomentum — nu = 0, mu > 0
///   DeconvEuler      — nu = 0, B pinned to zero (mu unused)
///   LimitModel       — the N -> infinity system: the deconvolution operator
///                      is replaced by the full inverse filter A_theta
enum class ModelCase { DoubleViscous, InviscidMomentum, DeconvEuler, LimitModel };

const char* to_string(ModelCase c);

struct PhysicalParams {
    double nu = 0.0;
    double mu = 0.0;
    ModelCase model_case = ModelCase::DoubleViscous;

    /// Appends violated constraints to `violations` (empty result = valid).
    void collect_violations(std::vector<std::string>& violations) const;
    /// Throws config_error listing every violated constraint.
    void validate() const;

    bool operator==(const PhysicalParams&) const = default;
};

struct MhdState {
    SpectralVectorField w; // filtered velocity
    SpectralVectorField b; // magnetic field
    double t = 0.0;
};

/// Assembles the right-hand sides of the deconvolution MHD system. Quadratic
/// terms are evaluated in physical space on the padded grid and truncated to
/// the retained lattice, so they equal the exact Galerkin projection; the
/// filter and all other operators act as per-mode multipliers.
///
/// The evaluator owns its transform engine and scratch, so use one instance
/// per thread. RHS evaluation is a pure function of the state.
class MhdModel {
public:
    MhdModel(const GridSpec& grid, const FilterParams& fp, const DeconvParams& dp,
             const PhysicalParams& pp);

    const GridSpec& grid() const { return grid_; }
    const FilterParams& filter() const { return fp_; }
    const DeconvParams& deconv() const { return dp_; }
    const PhysicalParams& physics() const { return pp_; }
    TransformEngine& engine() { return *engine_; }

    /// Per-mode multiplier standing in for the deconvolution operator:
    /// D_hat for the finite-N cases, A_hat for LimitModel.
    const std::vector<double>& deconv_multiplier() const { return deconv_mult_; }

    /// Full momentum right-hand side: Leray projection of
    /// -div(bar(D w x D w)) + div(bar(B x B)) + nu Laplacian(w).
    SpectralVectorField momentum_rhs(const MhdState& s);

    /// Full induction right-hand side:
    /// -div(B x D w) + div(D w x B) + mu Laplacian(B).
    /// The advective pair carries no filter.
    SpectralVectorField induction_rhs(const MhdState& s);

    /// Projected nonlinear parts only (diffusion handled exactly by the
    /// integrating-factor stepper). One shared evaluation for both fields.
    void nonlinear_rhs(const MhdState& s, SpectralVectorField& rhs_w, SpectralVectorField& rhs_b);

    /// div(u x v) via padded physical-space product, spectral divergence and
    /// truncation; optionally post-multiplied by the filter A^{-1}.
    SpectralVectorField filtered_divergence_of_product(const SpectralVectorField& u,
                                                       const SpectralVectorField& v,
                                                       bool apply_bar);

    /// Pressure from the div-div equation: per mode
    /// q_hat = -(k . S_hat k)/|k|^2 with S the truncated filtered stress
    /// difference bar(D w x D w - B x B); mean-free.
    SpectralScalarField recover_pressure(const MhdState& s);

    /// |<nonlinear momentum rhs, A D w> + <nonlinear induction rhs, B>|
    /// normalized by the Cauchy-Schwarz scale of the two pairings. The
    /// nonlinear terms are energy-neutral, so this is rounding-level for any
    /// solenoidal state.
    double energy_cancellation_residual(const MhdState& s);

    /// (1/2)(||A^{1/2} D^{1/2} w||^2 + ||B||^2) with the case's multiplier.
    double model_energy(const MhdState& s) const;

    /// Instantaneous dissipation rates nu ||A^{1/2}D^{1/2}w||_{1,2}^2 and
    /// mu ||B||_{1,2}^2.
    double viscous_dissipation_rate(const MhdState& s) const;
    double magnetic_dissipation_rate(const MhdState& s) const;

private:
    void to_physical(const SpectralVectorField& f, std::array<std::vector<double>, 3>& lanes);
    // rhs_i(k) = sign * i k_j T_hat[sym(i,j)](k), optionally * A^{-1}
    void divergence_of_symmetric(const std::array<SpectralScalarField, 6>& t, double sign,
                                 bool apply_bar, SpectralVectorField& out) const;

    GridSpec grid_;
    FilterParams fp_;
    DeconvParams dp_;
    PhysicalParams pp_;
    std::unique_ptr<TransformEngine> engine_;

    std::vector<double> inv_helmholtz_; // A_hat^{-1}
    std::vector<double> deconv_mult_;   // D_hat or A_hat
    std::vector<double> energy_weight_; // A_hat * deconv multiplier

    // scratch (padded physical lanes and tensor coefficient slots)
    std::array<std::vector<double>, 3> u_phys_;
    std::array<std::vector<double>, 3> b_phys_;
    std::vector<double> prod_;
    std::array<SpectralScalarField, 6> sym_tensor_;  // 00,01,02,11,12,22
    std::array<SpectralScalarField, 9> full_tensor_; // row-major i*3+j
    SpectralVectorField u_spec_;
};

/// Free-function forms of the diagnostics-facing operations.
double model_energy(const MhdState& s, const FilterParams& fp, const DeconvParams& dp,
                    ModelCase model_case);

} // namespace admhd
