#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "admhd/diagnostics.hpp"
#include "admhd/errors.hpp"
#include "admhd/initial_conditions.hpp"
#include "admhd/time_integrator.hpp"
#include "test_helpers.hpp"

#include <cmath>
#include <string>
#include <vector>

using namespace admhd;
using namespace admhd::test;

namespace {

GridSpec grid16() { return GridSpec::with_default_padding(16); }

/// w and B both proportional to the ABC field: the nonlinear terms vanish
/// identically, so the exact solution is per-mode exponential decay.
MhdState parallel_abc_state(const GridSpec& g, double w_amp, double b_amp) {
    MhdState s;
    s.w = abc_field(g, w_amp, w_amp, w_amp);
    s.b = abc_field(g, b_amp, b_amp, b_amp);
    return s;
}

double ade_energy_drift(const GridSpec& g, double dt, double t_end) {
    MhdModel model(g, {0.5, 0.75}, {3}, {0.0, 0.0, ModelCase::DeconvEuler});
    MhdState s;
    s.w = random_solenoidal_field(g, 7, -1.0, 1.0, 7.0);
    s.w.scale(3.0);
    s.b = SpectralVectorField(g);
    const double e0 = model.model_energy(s);
    const MhdState f = run(std::move(s), model, {dt, t_end, 0.5, Scheme::IFRK4}, {});
    return std::abs(model.model_energy(f) - e0) / e0;
}

} // namespace

TEST_CASE("a zero state stays zero") {
    const GridSpec g = grid16();
    MhdModel model(g, {0.5, 1.0}, {2}, {0.01, 0.01, ModelCase::DoubleViscous});
    TimeIntegrator integrator(model, {1e-2, 1.0, 0.5, Scheme::IFRK4});
    MhdState s;
    s.w = SpectralVectorField(g);
    s.b = SpectralVectorField(g);
    for (int i = 0; i < 5; ++i) integrator.step(s);
    CHECK(s.w.l2_norm() == 0.0);
    CHECK(s.b.l2_norm() == 0.0);
    CHECK(s.t == doctest::Approx(5e-2));
}

TEST_CASE("diffusion is exact: parallel ABC state decays by the heat kernel") {
    const GridSpec g = grid16();
    const PhysicalParams pp{0.04, 0.09, ModelCase::DoubleViscous};
    MhdModel model(g, {0.5, 1.0}, {2}, pp);
    const double dt = 1e-2;
    TimeIntegrator integrator(model, {dt, 1.0, 0.5, Scheme::IFRK4});

    MhdState s = parallel_abc_state(g, 1.0, 0.3);
    const MhdState s0 = s;
    integrator.step(s);

    SUBCASE("per mode after one step, |k|^2 = 1 shell") {
        double worst = 0.0;
        for_each_mode(g, [&](int kx, int ky, int kz, std::size_t m) {
            for (int c = 0; c < 3; ++c) {
                const auto want_w = s0.w.mode(m)[c] * std::exp(-pp.nu * dt);
                const auto want_b = s0.b.mode(m)[c] * std::exp(-pp.mu * dt);
                if (std::abs(s0.w.mode(m)[c]) > 0.0)
                    worst = std::max(worst, std::abs(s.w.mode(m)[c] - want_w) / std::abs(want_w));
                if (std::abs(s0.b.mode(m)[c]) > 0.0)
                    worst = std::max(worst, std::abs(s.b.mode(m)[c] - want_b) / std::abs(want_b));
            }
            (void)kx;
            (void)ky;
            (void)kz;
        });
        CHECK(worst <= 1e-12);
    }
    SUBCASE("norm decay over 100 steps") {
        for (int i = 1; i < 100; ++i) integrator.step(s);
        const double t = 100.0 * dt;
        CHECK(rel_err(s.w.l2_norm(), s0.w.l2_norm() * std::exp(-pp.nu * t)) <= 1e-10);
        CHECK(rel_err(s.b.l2_norm(), s0.b.l2_norm() * std::exp(-pp.mu * t)) <= 1e-10);
    }
    SUBCASE("dissipation integral matches the closed form") {
        for (int i = 1; i < 100; ++i) integrator.step(s);
        // E(t) + cum = E(0) for the exactly diffusive solution
        const double e0 = model.model_energy(s0);
        const double balance = model.model_energy(s) + integrator.viscous_dissipation_cum() +
                               integrator.magnetic_dissipation_cum();
        CHECK(rel_err(balance, e0) <= 1e-10);
    }
}

TEST_CASE("energy drift converges at fourth order or better on the inviscid model") {
    const GridSpec g = grid16();
    const double d1 = ade_energy_drift(g, 1e-2, 0.5);
    const double d2 = ade_energy_drift(g, 5e-3, 0.5);
    CHECK(d1 >= 1e-9);  // measurably above the rounding floor
    CHECK(d1 <= 1e-4);
    CHECK(d2 <= d1 / 12.0);
}

TEST_CASE("solenoidality and mean are preserved along a run") {
    const GridSpec g = grid16();
    MhdModel model(g, {0.5, 0.75}, {3}, {0.01, 0.02, ModelCase::DoubleViscous});
    MhdState s;
    s.w = random_solenoidal_field(g, 51, -1.5, 1.0, 6.0);
    s.b = random_solenoidal_field(g, 52, -1.5, 1.0, 6.0);
    TimeIntegrator integrator(model, {5e-3, 1.0, 0.5, Scheme::IFRK4});
    for (int i = 0; i < 50; ++i) {
        integrator.step(s);
        const double scale_w = std::max(s.w.l2_norm(), 1e-300);
        const double scale_b = std::max(s.b.l2_norm(), 1e-300);
        REQUIRE(divergence_residual(s.w) <= 1e-12 * scale_w);
        REQUIRE(divergence_residual(s.b) <= 1e-12 * scale_b);
        REQUIRE(mean_residual(s.w) == 0.0);
        REQUIRE(mean_residual(s.b) == 0.0);
        REQUIRE(conjugate_symmetry_residual(s.w) <= 1e-14 * scale_w);
    }
}

TEST_CASE("suggest_dt") {
    const GridSpec g = grid16();
    MhdModel model(g, {0.5, 1.0}, {2}, {0.0, 0.0, ModelCase::DeconvEuler});
    IntegratorConfig cfg{1e-1, 1.0, 0.5, Scheme::IFRK4};

    SUBCASE("zero state returns cfg.dt") {
        MhdState s;
        s.w = SpectralVectorField(g);
        s.b = SpectralVectorField(g);
        CHECK(suggest_dt(s, model, cfg) == cfg.dt);
    }
    SUBCASE("matches the direct max-speed evaluation for ABC data") {
        MhdState s;
        s.w = abc_field(g, 1.0, 1.0, 1.0);
        s.b = SpectralVectorField(g);
        // D_N of the |k| = 1 shell rescales by a constant, so the max speed
        // is gamma * max_x |abc(x)| on the sampling grid
        const double gamma = deconv_symbol(1.0, model.filter(), model.deconv());
        const int m = g.padded_n;
        double max_speed = 0.0;
        for (int ix = 0; ix < m; ++ix)
            for (int iy = 0; iy < m; ++iy)
                for (int iz = 0; iz < m; ++iz) {
                    const double x = 2.0 * M_PI * ix / m;
                    const double y = 2.0 * M_PI * iy / m;
                    const double z = 2.0 * M_PI * iz / m;
                    const double ux = std::sin(z) + std::cos(y);
                    const double uy = std::sin(x) + std::cos(z);
                    const double uz = std::sin(y) + std::cos(x);
                    max_speed = std::max(max_speed, gamma * std::sqrt(ux * ux + uy * uy + uz * uz));
                }
        const double expect = std::min(cfg.dt, cfg.cfl_safety * g.dx() / max_speed);
        CHECK(rel_err(suggest_dt(s, model, cfg), expect) <= 1e-12);
    }
    SUBCASE("doubling the amplitude halves the suggestion when the advective limit binds") {
        MhdState s;
        s.w = abc_field(g, 1.0, 1.0, 1.0);
        s.b = SpectralVectorField(g);
        const double base = suggest_dt(s, model, cfg);
        REQUIRE(base < cfg.dt);
        s.w.scale(2.0);
        CHECK(rel_err(suggest_dt(s, model, cfg), base / 2.0) <= 1e-12);
    }
    SUBCASE("suggestion never exceeds cfg.dt") {
        MhdState s;
        s.w = abc_field(g, 1e-6, 1e-6, 1e-6);
        s.b = SpectralVectorField(g);
        CHECK(suggest_dt(s, model, cfg) == cfg.dt);
    }
}

TEST_CASE("run") {
    const GridSpec g = grid16();

    SUBCASE("t_end = 0 returns the initial state and emits one record") {
        MhdModel model(g, {0.5, 1.0}, {2}, {0.0, 0.0, ModelCase::DeconvEuler});
        MhdState s;
        s.w = abc_field(g, 1.0, 1.0, 1.0);
        s.b = SpectralVectorField(g);
        const SpectralVectorField w0 = s.w;
        int records = 0;
        RunHooks hooks;
        hooks.on_record = [&](const MhdState&, const TimeIntegrator&) { ++records; };
        const MhdState out = run(std::move(s), model, {1e-3, 0.0, 0.5, Scheme::IFRK4}, hooks);
        CHECK(records == 1);
        CHECK(max_coeff_diff(out.w, w0) == 0.0);
    }
    SUBCASE("records land on the configured interval plus the final step") {
        MhdModel model(g, {0.5, 1.0}, {2}, {0.0, 0.0, ModelCase::DeconvEuler});
        MhdState s;
        s.w = abc_field(g, 1.0, 1.0, 1.0);
        s.b = SpectralVectorField(g);
        std::vector<double> times;
        RunHooks hooks;
        hooks.record_every = 2;
        hooks.on_record = [&](const MhdState& st, const TimeIntegrator&) {
            times.push_back(st.t);
        };
        run(std::move(s), model, {1e-2, 5e-2, 0.5, Scheme::IFRK4}, hooks);
        REQUIRE(times.size() == 4);
        CHECK(times[0] == 0.0);
        CHECK(times[1] == doctest::Approx(2e-2));
        CHECK(times[2] == doctest::Approx(4e-2));
        CHECK(times[3] == doctest::Approx(5e-2));
    }
    SUBCASE("two runs produce bit-identical diagnostics") {
        const auto trace = [&] {
            MhdModel model(g, {0.5, 0.75}, {3}, {0.01, 0.02, ModelCase::DoubleViscous});
            MhdState s;
            s.w = random_solenoidal_field(g, 61, -1.5, 1.0, 6.0);
            s.b = random_solenoidal_field(g, 62, -1.5, 1.0, 6.0);
            const double e0 = model.model_energy(s);
            std::string ndjson;
            RunHooks hooks;
            hooks.record_every = 5;
            hooks.on_record = [&](const MhdState& st, const TimeIntegrator& it) {
                ndjson += to_ndjson_line(make_record(st, model, it.viscous_dissipation_cum(),
                                                     it.magnetic_dissipation_cum(), e0));
                ndjson += '\n';
            };
            run(std::move(s), model, {5e-3, 0.1, 0.5, Scheme::IFRK4}, hooks);
            return ndjson;
        };
        const std::string first = trace();
        const std::string second = trace();
        CHECK(first == second);
        CHECK(first.find("\"t\":") != std::string::npos);
    }
    SUBCASE("ABC data conserves the inviscid model energy") {
        MhdModel model(g, {0.5, 1.0}, {5}, {0.0, 0.0, ModelCase::DeconvEuler});
        MhdState s;
        s.w = apply_helmholtz_power(abc_field(g, 1.0, 1.0, 1.0), model.filter(), -1.0);
        s.b = SpectralVectorField(g);
        const double e0 = model.model_energy(s);
        const MhdState out = run(std::move(s), model, {1e-3, 0.2, 0.5, Scheme::IFRK4}, {});
        CHECK(std::abs(model.model_energy(out) - e0) / e0 <= 1e-7);
    }
}

TEST_CASE("blow-up raises blowup_error carrying the last valid time") {
    const GridSpec g = grid16();
    MhdModel model(g, {0.5, 0.75}, {1}, {0.0, 0.0, ModelCase::DeconvEuler});
    MhdState s;
    s.w = random_solenoidal_field(g, 71, -0.5, 1.0, 7.0);
    s.w.scale(50.0); // far past the advective stability limit at dt = 0.5
    s.b = SpectralVectorField(g);
    int records = 0;
    RunHooks hooks;
    hooks.on_record = [&](const MhdState&, const TimeIntegrator&) { ++records; };
    try {
        run(std::move(s), model, {0.5, 10.0, 0.5, Scheme::IFRK4}, hooks);
        FAIL("expected blowup_error");
    } catch (const blowup_error& e) {
        CHECK(e.last_valid_time() >= 0.0);
        CHECK(e.last_valid_time() < 10.0);
        CHECK(records >= 1); // partial diagnostics delivered before the throw
    }
}
