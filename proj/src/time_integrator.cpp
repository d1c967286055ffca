#include "admhd/time_integrator.hpp"

#include "admhd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace admhd {

void IntegratorConfig::collect_violations(std::vector<std::string>& v) const {
    if (!(dt > 0.0)) v.push_back("integrator.dt must be > 0");
    if (t_end < 0.0) v.push_back("integrator.t_end must be >= 0");
    if (t_end > 0.0 && dt > t_end) v.push_back("integrator.dt must be <= t_end");
    if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) v.push_back("integrator.cfl_safety must be in (0, 1]");
}

TimeIntegrator::TimeIntegrator(MhdModel& model, const IntegratorConfig& cfg)
    : model_(model), cfg_(cfg) {
    const GridSpec& g = model_.grid();
    n1w_ = SpectralVectorField(g);
    n1b_ = SpectralVectorField(g);
    n2w_ = SpectralVectorField(g);
    n2b_ = SpectralVectorField(g);
    n3w_ = SpectralVectorField(g);
    n3b_ = SpectralVectorField(g);
    n4w_ = SpectralVectorField(g);
    n4b_ = SpectralVectorField(g);
    stage_.w = SpectralVectorField(g);
    stage_.b = SpectralVectorField(g);
}

void TimeIntegrator::reset(const MhdState& initial) {
    visc_cum_ = 0.0;
    mag_cum_ = 0.0;
    energy_ref_ = model_.model_energy(initial);
}

void TimeIntegrator::set_exp_tables(double dt) {
    if (dt == table_dt_) return;
    const GridSpec& g = model_.grid();
    const double nu = model_.physics().nu;
    const double mu = model_.physics().mu;
    exp_w_half_.assign(g.mode_count(), 1.0);
    exp_b_half_.assign(g.mode_count(), 1.0);
    for_each_mode(g, [&](int kx, int ky, int kz, std::size_t m) {
        const double k_sq = double(kx) * kx + double(ky) * ky + double(kz) * kz;
        if (nu > 0.0) exp_w_half_[m] = std::exp(-nu * k_sq * 0.5 * dt);
        if (mu > 0.0) exp_b_half_[m] = std::exp(-mu * k_sq * 0.5 * dt);
    });
    table_dt_ = dt;
}

void TimeIntegrator::apply_exp(SpectralVectorField& f, const std::vector<double>& factors) const {
    auto& raw = f.raw();
    for (std::size_t m = 0; m < factors.size(); ++m) {
        raw[3 * m] *= factors[m];
        raw[3 * m + 1] *= factors[m];
        raw[3 * m + 2] *= factors[m];
    }
}

void TimeIntegrator::step(MhdState& s, double dt) {
    set_exp_tables(dt);
    if (energy_ref_ < 0.0) energy_ref_ = model_.model_energy(s);
    const bool diff_w = model_.physics().nu > 0.0;
    const bool diff_b = model_.physics().mu > 0.0;

    // dissipation quadrature: (dt/6) (f(a1) + 2 f(a2) + 2 f(a3) + f(a4))
    double visc_acc = model_.viscous_dissipation_rate(s);
    double mag_acc = model_.magnetic_dissipation_rate(s);

    model_.nonlinear_rhs(s, n1w_, n1b_); // N1 at a1 = s

    // a2 = E (s + dt/2 N1)
    stage_.w = s.w;
    stage_.w.axpy(0.5 * dt, n1w_);
    if (diff_w) apply_exp(stage_.w, exp_w_half_);
    stage_.b = s.b;
    stage_.b.axpy(0.5 * dt, n1b_);
    if (diff_b) apply_exp(stage_.b, exp_b_half_);
    visc_acc += 2.0 * model_.viscous_dissipation_rate(stage_);
    mag_acc += 2.0 * model_.magnetic_dissipation_rate(stage_);
    model_.nonlinear_rhs(stage_, n2w_, n2b_);

    // a3 = E s + dt/2 N2
    stage_.w = s.w;
    if (diff_w) apply_exp(stage_.w, exp_w_half_);
    stage_.w.axpy(0.5 * dt, n2w_);
    stage_.b = s.b;
    if (diff_b) apply_exp(stage_.b, exp_b_half_);
    stage_.b.axpy(0.5 * dt, n2b_);
    visc_acc += 2.0 * model_.viscous_dissipation_rate(stage_);
    mag_acc += 2.0 * model_.magnetic_dissipation_rate(stage_);
    model_.nonlinear_rhs(stage_, n3w_, n3b_);

    // a4 = E (E s + dt N3)
    stage_.w = s.w;
    if (diff_w) apply_exp(stage_.w, exp_w_half_);
    stage_.w.axpy(dt, n3w_);
    if (diff_w) apply_exp(stage_.w, exp_w_half_);
    stage_.b = s.b;
    if (diff_b) apply_exp(stage_.b, exp_b_half_);
    stage_.b.axpy(dt, n3b_);
    if (diff_b) apply_exp(stage_.b, exp_b_half_);
    visc_acc += model_.viscous_dissipation_rate(stage_);
    mag_acc += model_.magnetic_dissipation_rate(stage_);
    model_.nonlinear_rhs(stage_, n4w_, n4b_);

    // s_{n+1} = E^2 s + dt/6 (E^2 N1 + 2 E N2 + 2 E N3 + N4)
    if (diff_w) {
        apply_exp(s.w, exp_w_half_);
        apply_exp(s.w, exp_w_half_);
        apply_exp(n1w_, exp_w_half_);
        apply_exp(n1w_, exp_w_half_);
        apply_exp(n2w_, exp_w_half_);
        apply_exp(n3w_, exp_w_half_);
    }
    s.w.axpy(dt / 6.0, n1w_);
    s.w.axpy(dt / 3.0, n2w_);
    s.w.axpy(dt / 3.0, n3w_);
    s.w.axpy(dt / 6.0, n4w_);

    if (diff_b) {
        apply_exp(s.b, exp_b_half_);
        apply_exp(s.b, exp_b_half_);
        apply_exp(n1b_, exp_b_half_);
        apply_exp(n1b_, exp_b_half_);
        apply_exp(n2b_, exp_b_half_);
        apply_exp(n3b_, exp_b_half_);
    }
    s.b.axpy(dt / 6.0, n1b_);
    s.b.axpy(dt / 3.0, n2b_);
    s.b.axpy(dt / 3.0, n3b_);
    s.b.axpy(dt / 6.0, n4b_);

    visc_cum_ += dt / 6.0 * visc_acc;
    mag_cum_ += dt / 6.0 * mag_acc;
    s.t += dt;

    if (!s.w.all_finite() || !s.b.all_finite())
        throw blowup_error("non-finite coefficient at t = " + std::to_string(s.t),
                           s.t - dt);
    const double energy = model_.model_energy(s);
    if (energy_ref_ > 0.0 && energy > 10.0 * energy_ref_)
        throw blowup_error("model energy grew past 10x initial at t = " + std::to_string(s.t),
                           s.t - dt);
}

double suggest_dt(const MhdState& s, MhdModel& model, const IntegratorConfig& cfg) {
    SpectralVectorField u = s.w;
    apply_mode_multiplier(u, model.deconv_multiplier());
    const std::vector<double> phys = inverse_transform(model.engine(), u);
    const std::size_t n = model.grid().physical_point_count();
    double max_speed_sq = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
        const double sq = phys[x] * phys[x] + phys[n + x] * phys[n + x] +
                          phys[2 * n + x] * phys[2 * n + x];
        max_speed_sq = std::max(max_speed_sq, sq);
    }
    const double max_speed = std::max(std::sqrt(max_speed_sq), 1e-300);
    return std::min(cfg.dt, cfg.cfl_safety * model.grid().dx() / max_speed);
}

MhdState run(MhdState initial, MhdModel& model, const IntegratorConfig& cfg,
             const RunHooks& hooks) {
    TimeIntegrator integrator(model, cfg);
    integrator.reset(initial);

    MhdState s = std::move(initial);
    const double t0 = s.t;
    const double span = cfg.t_end - t0;
    if (hooks.on_record) hooks.on_record(s, integrator);
    if (span <= 0.0) return s;

    const long n_steps = static_cast<long>(std::ceil(span / cfg.dt - 1e-9));
    for (long i = 1; i <= n_steps; ++i) {
        const double target = i == n_steps ? cfg.t_end : t0 + double(i) * cfg.dt;
        integrator.step(s, target - s.t);
        s.t = target;
        const bool last = i == n_steps;
        if (hooks.on_record && (last || (hooks.record_every > 0 && i % hooks.record_every == 0)))
            hooks.on_record(s, integrator);
        if (hooks.on_snapshot && hooks.snapshot_every > 0 && (last || i % hooks.snapshot_every == 0))
            hooks.on_snapshot(s);
    }
    return s;
}

} // namespace admhd
