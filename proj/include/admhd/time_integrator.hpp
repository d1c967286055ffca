#pragma once

#include "admhd/mhd_model.hpp"

#include <functional>
#include <vector>

namespace admhd {

enum class Scheme { IFRK4 };

struct IntegratorConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    double cfl_safety = 0.5;
    Scheme scheme = Scheme::IFRK4;

    void collect_violations(std::vector<std::string>& violations) const;

    bool operator==(const IntegratorConfig&) const = default;
};

/// Classical RK4 composed with the exact diffusive integrating factor:
/// diffusion is advanced by exp(-nu |k|^2 dt) / exp(-mu |k|^2 dt) per mode,
/// the projected nonlinear terms explicitly. With the nonlinear terms absent
/// the step is exact for diffusion.
///
/// The stepper also accumulates the viscous and magnetic dissipation
/// integrals with the same RK4 quadrature as the stages, so energy-balance
/// residuals measure the scheme, not the quadrature.
class TimeIntegrator {
public:
    TimeIntegrator(MhdModel& model, const IntegratorConfig& cfg);

    /// Advances the state by one step of size dt (defaults to cfg.dt).
    /// Throws blowup_error on non-finite coefficients or when the model
    /// energy exceeds 10x its value at construction/reset.
    void step(MhdState& s, double dt);
    void step(MhdState& s) { step(s, cfg_.dt); }

    /// Cumulative dissipation integrals since construction (or reset).
    double viscous_dissipation_cum() const { return visc_cum_; }
    double magnetic_dissipation_cum() const { return mag_cum_; }

    /// Re-arms the blow-up reference energy and zeroes the accumulators.
    void reset(const MhdState& initial);

private:
    void apply_exp(SpectralVectorField& f, const std::vector<double>& factors) const;
    void set_exp_tables(double dt);

    MhdModel& model_;
    IntegratorConfig cfg_;
    double visc_cum_ = 0.0;
    double mag_cum_ = 0.0;
    double energy_ref_ = -1.0;

    double table_dt_ = -1.0;
    std::vector<double> exp_w_half_; // exp(-nu |k|^2 dt/2)
    std::vector<double> exp_b_half_; // exp(-mu |k|^2 dt/2)

    // stage scratch
    SpectralVectorField n1w_, n1b_, n2w_, n2b_, n3w_, n3b_, n4w_, n4b_;
    MhdState stage_;
};

/// Advisory time step: cfl_safety * dx / max_x |D_N w(x)|, capped at cfg.dt.
/// A zero (or tiny) state returns cfg.dt.
double suggest_dt(const MhdState& s, MhdModel& model, const IntegratorConfig& cfg);

/// Hooks consumed by run(); record_every / snapshot_every are in steps.
/// A record is always emitted at t = 0 and at the final step; snapshot_every
/// = 0 disables intermediate snapshots.
struct RunHooks {
    int record_every = 1;
    int snapshot_every = 0;
    std::function<void(const MhdState&, const TimeIntegrator&)> on_record;
    std::function<void(const MhdState&)> on_snapshot;
};

/// Steps the state to cfg.t_end with fixed dt (a final shorter step lands on
/// t_end exactly). Deterministic for identical inputs. On blow-up the partial
/// diagnostics have already been delivered to the hooks; the error is
/// rethrown for the caller.
MhdState run(MhdState initial, MhdModel& model, const IntegratorConfig& cfg,
             const RunHooks& hooks);

} // namespace admhd
