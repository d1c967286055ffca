#include "admhd/diagnostics.hpp"

#include "admhd/errors.hpp"
#include "admhd/initial_conditions.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <thread>

namespace admhd {

DiagnosticsRecord make_record(const MhdState& s, const MhdModel& model, double visc_cum,
                              double mag_cum, double initial_energy) {
    DiagnosticsRecord rec;
    rec.t = s.t;
    rec.model_energy = model.model_energy(s);
    rec.kinetic_l2 = sobolev_norm(s.w, 0.0);
    rec.magnetic_l2 = sobolev_norm(s.b, 0.0);
    rec.w_h_theta = sobolev_norm(s.w, model.filter().theta);
    rec.visc_dissip_cum = visc_cum;
    rec.mag_dissip_cum = mag_cum;
    if (initial_energy > 0.0)
        rec.balance_residual =
            std::abs(rec.model_energy + visc_cum + mag_cum - initial_energy) / initial_energy;
    rec.blowup_monitor = blowup_monitor(s, model.filter());
    rec.div_residual_w = divergence_residual(s.w);
    rec.div_residual_b = divergence_residual(s.b);
    return rec;
}

double blowup_monitor(const MhdState& s, const FilterParams& fp) {
    const double h = sobolev_norm(s.w, fp.theta);
    return std::pow(fp.alpha, 2.0 * fp.theta) * h * h;
}

std::optional<double> energy_balance_residual(const std::vector<DiagnosticsRecord>& records) {
    if (records.size() < 2) throw config_error("energy_balance_residual: need >= 2 records");
    const double e0 = records.front().model_energy;
    if (!(e0 > 0.0)) return std::nullopt;
    double worst = 0.0;
    for (const auto& r : records) {
        const double res =
            std::abs(r.model_energy + r.visc_dissip_cum + r.mag_dissip_cum - e0) / e0;
        worst = std::max(worst, res);
    }
    return worst;
}

bool energy_inequality_holds(const MhdState& s, const FilterParams& fp, double initial_l2) {
    const double l2 = sobolev_norm(s.w, 0.0);
    const double lhs = l2 * l2 + blowup_monitor(s, fp);
    const double rhs = initial_l2 * initial_l2;
    return lhs <= rhs * (1.0 + 1e-8);
}

bool energy_inequality_holds(const DiagnosticsRecord& rec, double initial_l2) {
    const double lhs = rec.kinetic_l2 * rec.kinetic_l2 + rec.blowup_monitor;
    const double rhs = initial_l2 * initial_l2;
    return lhs <= rhs * (1.0 + 1e-8);
}

std::string to_ndjson_line(const DiagnosticsRecord& rec) {
    nlohmann::ordered_json j;
    j["t"] = rec.t;
    j["model_energy"] = rec.model_energy;
    j["kinetic_l2"] = rec.kinetic_l2;
    j["magnetic_l2"] = rec.magnetic_l2;
    j["w_h_theta"] = rec.w_h_theta;
    j["visc_dissip_cum"] = rec.visc_dissip_cum;
    j["mag_dissip_cum"] = rec.mag_dissip_cum;
    if (rec.balance_residual)
        j["balance_residual"] = *rec.balance_residual;
    else
        j["balance_residual"] = nullptr;
    j["blowup_monitor"] = rec.blowup_monitor;
    j["div_residual_w"] = rec.div_residual_w;
    j["div_residual_b"] = rec.div_residual_b;
    return j.dump();
}

void write_ndjson(std::ostream& os, const DiagnosticsRecord& rec) {
    os << to_ndjson_line(rec) << '\n';
}

namespace {

struct StoredTrajectory {
    std::vector<double> times;
    std::vector<SpectralVectorField> w;
    std::vector<SpectralVectorField> b;
};

// squared trapezoidal L2(0,T) quadrature of per-record squared values
double trapezoid(const std::vector<double>& times, const std::vector<double>& sq_values) {
    if (times.size() < 2) return sq_values.empty() ? 0.0 : sq_values.front();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < times.size(); ++i)
        acc += 0.5 * (times[i + 1] - times[i]) * (sq_values[i] + sq_values[i + 1]);
    return acc;
}

double sobolev_diff_sq(const SpectralVectorField& a, const SpectralVectorField& b, double s) {
    SpectralVectorField d = a;
    d.axpy(-1.0, b);
    const double n = sobolev_norm(d, s);
    return n * n;
}

} // namespace

std::vector<LimitStudyRow> limit_study(const MhdState& initial, const GridSpec& grid,
                                       const LimitStudyConfig& cfg,
                                       const std::vector<int>& n_list) {
    // reference: the limit model, same viscosities
    PhysicalParams limit_pp = cfg.physics;
    limit_pp.model_case = ModelCase::LimitModel;
    StoredTrajectory ref;
    {
        MhdModel model(grid, cfg.filter, DeconvParams{0}, limit_pp);
        RunHooks hooks;
        hooks.record_every = cfg.record_every;
        hooks.on_record = [&](const MhdState& s, const TimeIntegrator&) {
            ref.times.push_back(s.t);
            ref.w.push_back(s.w);
            ref.b.push_back(s.b);
        };
        run(initial, model, cfg.integrator, hooks);
    }

    std::vector<int> orders = n_list;
    std::sort(orders.begin(), orders.end());
    std::vector<LimitStudyRow> rows(orders.size());

    const auto run_member = [&](std::size_t slot) {
        LimitStudyRow& row = rows[slot];
        row.order_n = orders[slot];
        MhdModel model(grid, cfg.filter, DeconvParams{orders[slot]}, cfg.physics);
        std::vector<double> dw_sq, db_sq, times;
        std::size_t idx = 0;
        RunHooks hooks;
        hooks.record_every = cfg.record_every;
        hooks.on_record = [&](const MhdState& s, const TimeIntegrator&) {
            if (idx >= ref.times.size()) return;
            times.push_back(s.t);
            dw_sq.push_back(sobolev_diff_sq(s.w, ref.w[idx], cfg.s_w));
            db_sq.push_back(sobolev_diff_sq(s.b, ref.b[idx], cfg.s_b));
            ++idx;
        };
        try {
            run(initial, model, cfg.integrator, hooks);
            row.err_w = std::sqrt(trapezoid(times, dw_sq));
            row.err_b = std::sqrt(trapezoid(times, db_sq));
        } catch (const blowup_error&) {
            row.blew_up = true;
        }
    };

    if (cfg.workers <= 1) {
        for (std::size_t i = 0; i < orders.size(); ++i) run_member(i);
    } else {
        // members are independent; results land in preassigned slots, so the
        // table is identical no matter how many workers run it
        std::size_t next = 0;
        while (next < orders.size()) {
            std::vector<std::thread> pool;
            const std::size_t batch =
                std::min<std::size_t>(static_cast<std::size_t>(cfg.workers), orders.size() - next);
            for (std::size_t i = 0; i < batch; ++i)
                pool.emplace_back(run_member, next + i);
            for (auto& t : pool) t.join();
            next += batch;
        }
    }
    return rows;
}

StabilityReport stability_probe(const MhdState& initial, const GridSpec& grid,
                                const FilterParams& fp, const DeconvParams& dp,
                                const PhysicalParams& pp, const IntegratorConfig& cfg,
                                double perturbation_scale, unsigned long long seed) {
    MhdState perturbed = initial;
    if (perturbation_scale != 0.0) {
        SpectralVectorField noise =
            random_solenoidal_field(grid, seed, -1.0, 1.0, double(grid.max_wave()));
        perturbed.w.axpy(perturbation_scale, noise);
    }

    const auto difference = [&](const MhdState& a, const MhdState& b) {
        return fp.alpha * sobolev_diff_sq(a.w, b.w, fp.theta) + sobolev_diff_sq(a.b, b.b, 0.0);
    };

    StabilityReport report;
    report.initial_difference = difference(initial, perturbed);

    StoredTrajectory base;
    {
        MhdModel model(grid, fp, dp, pp);
        RunHooks hooks;
        hooks.record_every = 1;
        hooks.on_record = [&](const MhdState& s, const TimeIntegrator&) {
            base.times.push_back(s.t);
            base.w.push_back(s.w);
            base.b.push_back(s.b);
        };
        run(initial, model, cfg, hooks);
    }

    double sup = report.initial_difference;
    {
        MhdModel model(grid, fp, dp, pp);
        std::size_t idx = 0;
        RunHooks hooks;
        hooks.record_every = 1;
        hooks.on_record = [&](const MhdState& s, const TimeIntegrator&) {
            if (idx >= base.times.size()) return;
            MhdState ref;
            ref.w = base.w[idx];
            ref.b = base.b[idx];
            sup = std::max(sup, difference(s, ref));
            ++idx;
        };
        run(perturbed, model, cfg, hooks);
    }

    report.sup_difference = sup;
    report.growth_ratio =
        report.initial_difference > 0.0 ? sup / report.initial_difference : 1.0;
    const double span = cfg.t_end - initial.t;
    report.implied_rate = span > 0.0 ? std::log(std::max(report.growth_ratio, 1e-300)) / span : 0.0;
    return report;
}

} // namespace admhd
