#pragma once

#include "admhd/mhd_model.hpp"
#include "admhd/time_integrator.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace admhd {

/// One time-stamped diagnostics sample. Serialized as NDJSON with exactly
/// these key names, one record per line.
struct DiagnosticsRecord {
    double t = 0.0;
    double model_energy = 0.0;
    double kinetic_l2 = 0.0;  // ||w||_2
    double magnetic_l2 = 0.0; // ||B||_2
    double w_h_theta = 0.0;   // ||w||_{theta,2}
    double visc_dissip_cum = 0.0;
    double mag_dissip_cum = 0.0;
    std::optional<double> balance_residual; // empty when E(0) = 0
    double blowup_monitor = 0.0;            // alpha^{2 theta} ||w||_{theta,2}^2
    double div_residual_w = 0.0;
    double div_residual_b = 0.0;
};

/// Assembles a record from the current state and the stepper's accumulated
/// dissipation integrals. initial_energy feeds the balance residual.
DiagnosticsRecord make_record(const MhdState& s, const MhdModel& model, double visc_cum,
                              double mag_cum, double initial_energy);

/// alpha^{2 theta} ||w||_{theta,2}^2.
double blowup_monitor(const MhdState& s, const FilterParams& fp);

/// Max over records of |E(t) + dissip_cum(t) - E(0)| / E(0); empty when
/// E(0) = 0 (residual undefined).
std::optional<double> energy_balance_residual(const std::vector<DiagnosticsRecord>& records);

/// Checks ||w(t)||^2 + alpha^{2 theta} ||w(t)||_{theta,2}^2 <= initial_l2^2
/// with relative slack >= -1e-8; initial_l2 is ||v0||_2 = ||A w0||_2.
bool energy_inequality_holds(const MhdState& s, const FilterParams& fp, double initial_l2);
bool energy_inequality_holds(const DiagnosticsRecord& rec, double initial_l2);

/// NDJSON serialization (append-only stream, one line per record,
/// full double precision).
std::string to_ndjson_line(const DiagnosticsRecord& rec);
void write_ndjson(std::ostream& os, const DiagnosticsRecord& rec);

/// One row of the deconvolution-order convergence study.
struct LimitStudyRow {
    int order_n = 0;
    double err_w = 0.0; // L2(0,T; H^{s_w}) distance to the limit-model run
    double err_b = 0.0; // L2(0,T; H^{s_b}) distance
    bool blew_up = false;
};

struct LimitStudyConfig {
    FilterParams filter;
    PhysicalParams physics; // viscosities shared; the reference run forces LimitModel
    IntegratorConfig integrator;
    int record_every = 10;
    double s_w = 1.0; // trajectory norm exponents, s_w < 1 + theta, s_b < 1
    double s_b = 0.5;
    int workers = 1; // member runs are independent; > 1 runs them in a thread pool
};

/// Runs the limit model once and the order-N model per entry of n_list from
/// the same initial state, then reports trajectory distances by trapezoidal
/// time quadrature over the records. Rows are ordered by N; a member that
/// blows up is flagged and its distances left at zero.
std::vector<LimitStudyRow> limit_study(const MhdState& initial, const GridSpec& grid,
                                       const LimitStudyConfig& cfg,
                                       const std::vector<int>& n_list);

struct StabilityReport {
    double initial_difference = 0.0; // alpha ||dw0||_{theta,2}^2 + ||dB0||_2^2
    double sup_difference = 0.0;     // sup_t of the same functional
    double growth_ratio = 1.0;       // sup / initial (1 for a zero perturbation)
    double implied_rate = 0.0;       // log(ratio) / T
};

/// Desk-scale continuous-dependence probe: integrates the base state and a
/// perturbed copy (w + scale * unit random solenoidal field) and reports the
/// worst-case growth of the weighted difference functional.
StabilityReport stability_probe(const MhdState& initial, const GridSpec& grid,
                                const FilterParams& fp, const DeconvParams& dp,
                                const PhysicalParams& pp, const IntegratorConfig& cfg,
                                double perturbation_scale, unsigned long long seed);

} // namespace admhd
