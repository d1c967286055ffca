// admhd: pseudo-spectral simulator and operator toolbox for the
// approximate-deconvolution MHD model on the periodic box.
//
// Subcommands:
//   simulate        integrate the configured model, writing NDJSON
//                   diagnostics and binary snapshots
//   sweep_n         deconvolution-order convergence study against the
//                   limit model (CSV table)
//   operator_check  self-contained property suite for the filter and
//                   deconvolution operators
//   pressure        recover the pressure field from a state snapshot
//
// Exit codes: 0 success, 2 configuration error, 3 numerical blow-up,
// 4 property failure.

#include <CLI11.hpp>

#include "admhd/diagnostics.hpp"
#include "admhd/errors.hpp"
#include "admhd/initial_conditions.hpp"
#include "admhd/sim_config.hpp"
#include "admhd/snapshot.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using namespace admhd;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBlowup = 3;
constexpr int kExitProperty = 4;

struct CommonArgs {
    std::string config_path;
    std::string output_dir;
    long long seed_override = -1;
    bool quiet = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "configuration file")->required();
    cmd->add_option("--output-dir", args.output_dir, "output directory (overrides config)");
    cmd->add_option("--seed", args.seed_override, "override initial.random.seed");
    cmd->add_flag("--quiet", args.quiet, "suppress progress output");
}

SimConfig load(const CommonArgs& args) {
    SimConfig cfg = load_config_file(args.config_path);
    if (args.seed_override >= 0)
        cfg.initial.random.seed = static_cast<unsigned long long>(args.seed_override);
    return cfg;
}

fs::path resolve_output_dir(const CommonArgs& args, const SimConfig& cfg) {
    if (!args.output_dir.empty()) return fs::path(args.output_dir);
    const char* root = std::getenv("ADMHD_OUTPUT_DIR");
    if (root != nullptr && *root != '\0') return fs::path(root) / cfg.output.directory;
    return fs::path(cfg.output.directory);
}

std::string snapshot_name(long index) {
    std::ostringstream os;
    os << "state_" << std::setw(6) << std::setfill('0') << index << ".snap";
    return os.str();
}

int run_simulate(const CommonArgs& args) {
    const SimConfig cfg = load(args);
    const fs::path out_dir = resolve_output_dir(args, cfg);
    fs::create_directories(out_dir);

    // materialized config, for reproducing the run
    {
        std::ofstream os(out_dir / "config.resolved");
        os << render_config(cfg);
    }

    MhdModel model(cfg.grid, cfg.filter, cfg.deconv, cfg.physics);
    MhdState initial = make_initial_state(cfg);
    const double e0 = model.model_energy(initial);

    std::ofstream ndjson(out_dir / "diagnostics.ndjson", std::ios::trunc);
    long snapshot_index = 0;
    RunHooks hooks;
    hooks.record_every = cfg.output.record_interval;
    hooks.snapshot_every = cfg.output.snapshot_interval;
    hooks.on_record = [&](const MhdState& s, const TimeIntegrator& it) {
        write_ndjson(ndjson, make_record(s, model, it.viscous_dissipation_cum(),
                                         it.magnetic_dissipation_cum(), e0));
        if (!args.quiet) std::cout << "t = " << s.t << "\n";
    };
    hooks.on_snapshot = [&](const MhdState& s) {
        write_state_snapshot((out_dir / snapshot_name(++snapshot_index)).string(), s);
    };

    try {
        const MhdState final_state = run(std::move(initial), model, cfg.integrator, hooks);
        ndjson.flush();
        write_state_snapshot((out_dir / "state_final.snap").string(), final_state);
    } catch (const blowup_error& e) {
        ndjson.flush();
        std::cerr << "blow-up: " << e.what() << " (last valid t = " << e.last_valid_time()
                  << ")\n";
        return kExitBlowup;
    }
    return kExitOk;
}

int run_sweep(const CommonArgs& args, const std::string& n_list_arg, int workers) {
    const SimConfig cfg = load(args);
    if (cfg.filter.theta < 0.5 || cfg.filter.theta >= 1.0)
        throw config_error("sweep_n requires filter.theta in [0.5, 1)");

    std::vector<int> n_list;
    {
        std::istringstream is(n_list_arg);
        std::string token;
        while (std::getline(is, token, ',')) {
            try {
                n_list.push_back(std::stoi(token));
            } catch (const std::exception&) {
                throw config_error("--n-list: cannot parse '" + token + "'");
            }
            if (n_list.back() < 0) throw config_error("--n-list entries must be >= 0");
        }
        if (n_list.empty()) throw config_error("--n-list must name at least one order");
    }

    const fs::path out_dir = resolve_output_dir(args, cfg);
    fs::create_directories(out_dir);

    LimitStudyConfig study;
    study.filter = cfg.filter;
    study.physics = cfg.physics;
    study.integrator = cfg.integrator;
    study.record_every = cfg.output.record_interval;
    study.workers = workers;
    const MhdState initial = make_initial_state(cfg);
    const auto rows = limit_study(initial, cfg.grid, study, n_list);

    std::ofstream csv(out_dir / "sweep.csv", std::ios::trunc);
    csv << std::setprecision(17) << "N,err_w,err_b,status\n";
    bool any_blowup = false;
    for (const auto& row : rows) {
        csv << row.order_n << ',' << row.err_w << ',' << row.err_b << ','
            << (row.blew_up ? "blowup" : "ok") << '\n';
        any_blowup = any_blowup || row.blew_up;
        if (!args.quiet)
            std::cout << "N = " << row.order_n << ": err_w = " << row.err_w
                      << ", err_b = " << row.err_b << (row.blew_up ? " [blow-up]" : "") << "\n";
    }
    return any_blowup ? kExitBlowup : kExitOk;
}

int run_operator_check(const CommonArgs& args) {
    const SimConfig cfg = load(args);
    const fs::path out_dir = resolve_output_dir(args, cfg);
    fs::create_directories(out_dir);
    std::ofstream report(out_dir / "operator_report.txt", std::ios::trunc);

    int failures = 0;
    const auto check = [&](const std::string& name, bool ok, double value) {
        std::ostringstream line;
        line << (ok ? "PASS" : "FAIL") << " " << name << " (worst = " << value << ")";
        report << line.str() << '\n';
        if (!args.quiet || !ok) std::cout << line.str() << "\n";
        if (!ok) ++failures;
    };

    // symbol bounds over random parameter tuples
    {
        std::mt19937_64 rng(cfg.initial.random.seed);
        std::uniform_real_distribution<double> k_sq_dist(0.0, 1e4);
        std::uniform_real_distribution<double> alpha_dist(1e-2, 10.0);
        std::uniform_real_distribution<double> theta_dist(0.0, 1.0);
        std::uniform_int_distribution<int> n_dist(0, 64);
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const FilterParams fp{alpha_dist(rng), theta_dist(rng)};
            const DeconvParams dp{n_dist(rng)};
            const double k_sq = k_sq_dist(rng);
            const double d_hat = deconv_symbol(k_sq, fp, dp);
            const double a_hat = helmholtz_symbol(k_sq, fp, 1.0);
            worst = std::max({worst, 1.0 - d_hat, d_hat - (dp.order_n + 1), d_hat - a_hat});
        }
        check("symbol bounds 1 <= D_hat <= min(N+1, A_hat)", worst <= 1e-12, worst);
    }

    // deconvolution norm chain on random fields at the configured grid
    {
        double worst = 0.0;
        for (unsigned long long i = 0; i < 10; ++i) {
            const SpectralVectorField f = random_solenoidal_field(
                cfg.grid, cfg.initial.random.seed + i, -1.0, 1.0, cfg.grid.max_wave());
            for (int n : {0, 1, 4, cfg.deconv.order_n}) {
                const SpectralVectorField df = apply_deconvolution(f, cfg.filter, {n});
                SpectralVectorField chained = apply_helmholtz_power(f, cfg.filter, -1.0);
                auto table = deconv_symbol_table(cfg.grid, cfg.filter, {n});
                for (auto& v : table) v = std::sqrt(v);
                apply_mode_multiplier(chained, table);
                chained = apply_helmholtz_power(chained, cfg.filter, 0.5);
                for (double s : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
                    const double base = sobolev_norm(f, s);
                    const double dn = sobolev_norm(df, s);
                    worst = std::max(worst, (base - dn) / base);
                    worst = std::max(worst, (dn - (n + 1) * base) / base);
                    worst = std::max(worst, (sobolev_norm(chained, s) - base) / base);
                }
            }
        }
        check("deconvolution norm chain", worst <= 1e-10, worst);
    }

    // filter norm identity and half-power duality
    {
        double worst = 0.0;
        for (unsigned long long i = 0; i < 20; ++i) {
            const SpectralVectorField f = random_solenoidal_field(
                cfg.grid, cfg.initial.random.seed + 100 + i, -1.0, 1.0, cfg.grid.max_wave());
            worst = std::max(worst, helmholtz_norm_identity_residual(f, cfg.filter));
        }
        check("filter norm identity", worst <= 1e-12, worst);

        worst = 0.0;
        for (unsigned long long i = 0; i < 10; ++i) {
            const SpectralVectorField f = random_solenoidal_field(
                cfg.grid, cfg.initial.random.seed + 200 + i, -1.0, 1.0, cfg.grid.max_wave());
            const SpectralVectorField h = random_solenoidal_field(
                cfg.grid, cfg.initial.random.seed + 300 + i, -1.0, 1.0, cfg.grid.max_wave());
            const double lhs = l2_inner(apply_helmholtz_power(f, cfg.filter, -0.5),
                                        apply_helmholtz_power(h, cfg.filter, 0.5));
            const double rhs = l2_inner(f, h);
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300));
        }
        check("half-power duality", worst <= 1e-12, worst);
    }

    // geometric convergence of the deconvolution toward the filter inverse
    {
        const SpectralVectorField f = random_solenoidal_field(
            cfg.grid, cfg.initial.random.seed + 400, -2.0, 1.0, cfg.grid.max_wave());
        const double k_sq_max = 3.0 * cfg.grid.max_wave() * cfg.grid.max_wave();
        const double a_max = std::pow(cfg.filter.alpha, 2.0 * cfg.filter.theta) *
                             std::pow(k_sq_max, cfg.filter.theta);
        const double r_max = a_max / (1.0 + a_max);
        double worst = 0.0;
        double prev = deconv_limit_error(f, cfg.filter, {0});
        for (int n = 1; n <= 12; ++n) {
            const double err = deconv_limit_error(f, cfg.filter, {n});
            worst = std::max(worst, err / prev - r_max);
            prev = err;
        }
        check("deconvolution limit contraction", worst <= 1e-10, worst);
    }

    // energy neutrality of the nonlinear terms for the configured case
    {
        MhdModel model(cfg.grid, cfg.filter, cfg.deconv, cfg.physics);
        double worst = 0.0;
        for (unsigned long long i = 0; i < 5; ++i) {
            MhdState s;
            s.w = random_solenoidal_field(cfg.grid, cfg.initial.random.seed + 500 + i, -1.5, 1.0,
                                          cfg.grid.max_wave());
            s.b = SpectralVectorField(cfg.grid);
            if (cfg.physics.model_case != ModelCase::DeconvEuler)
                s.b = random_solenoidal_field(cfg.grid, cfg.initial.random.seed + 600 + i, -1.5,
                                              1.0, cfg.grid.max_wave());
            worst = std::max(worst, model.energy_cancellation_residual(s));
        }
        check("nonlinear energy neutrality", worst <= 1e-10, worst);
    }

    // per-mode symbol table for external plotting
    {
        std::vector<double> k_sq_values;
        for (int k = 0; k <= cfg.grid.max_wave(); ++k) k_sq_values.push_back(double(k) * k);
        std::ofstream csv(out_dir / "symbols.csv", std::ios::trunc);
        write_symbol_table_csv(csv, k_sq_values, cfg.filter, cfg.deconv);
    }

    return failures == 0 ? kExitOk : kExitProperty;
}

int run_pressure(const CommonArgs& args, const std::string& snapshot_path) {
    const SimConfig cfg = load(args);
    const fs::path out_dir = resolve_output_dir(args, cfg);
    fs::create_directories(out_dir);

    const MhdState state = read_state_snapshot(snapshot_path, &cfg.grid);
    MhdModel model(cfg.grid, cfg.filter, cfg.deconv, cfg.physics);
    const SpectralScalarField q = model.recover_pressure(state);
    write_scalar_snapshot((out_dir / "pressure.snap").string(), q, state.t);
    if (!args.quiet) std::cout << "pressure field written (L2 norm " << q.l2_norm() << ")\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"approximate-deconvolution MHD spectral toolbox"};
    app.require_subcommand(1);

    CommonArgs sim_args, sweep_args, op_args, pressure_args;
    std::string n_list_arg, snapshot_path;
    int workers = 1;

    CLI::App* simulate = app.add_subcommand("simulate", "integrate the configured model");
    add_common(simulate, sim_args);

    CLI::App* sweep = app.add_subcommand("sweep_n", "deconvolution-order convergence study");
    add_common(sweep, sweep_args);
    sweep->add_option("--n-list", n_list_arg, "comma-separated deconvolution orders")->required();
    sweep->add_option("--workers", workers, "parallel member runs");

    CLI::App* op_check = app.add_subcommand("operator_check", "operator property suite");
    add_common(op_check, op_args);

    CLI::App* pressure = app.add_subcommand("pressure", "recover pressure from a snapshot");
    add_common(pressure, pressure_args);
    pressure->add_option("--snapshot", snapshot_path, "state snapshot")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (simulate->parsed()) return run_simulate(sim_args);
        if (sweep->parsed()) return run_sweep(sweep_args, n_list_arg, workers);
        if (op_check->parsed()) return run_operator_check(op_args);
        if (pressure->parsed()) return run_pressure(pressure_args, snapshot_path);
    } catch (const config_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const invariant_error& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitConfig;
    } catch (const blowup_error& e) {
        std::cerr << "blow-up: " << e.what() << "\n";
        return kExitBlowup;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitProperty;
    }
    return kExitOk;
}
