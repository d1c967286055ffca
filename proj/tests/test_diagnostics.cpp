#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "admhd/diagnostics.hpp"
#include "admhd/errors.hpp"
#include "admhd/initial_conditions.hpp"
#include "test_helpers.hpp"

#include <cmath>
#include <string>
#include <vector>

using namespace admhd;
using namespace admhd::test;

namespace {

GridSpec grid16() { return GridSpec::with_default_padding(16); }

} // namespace

TEST_CASE("model energy") {
    const GridSpec g = grid16();

    SUBCASE("zero state") {
        MhdState s;
        s.w = SpectralVectorField(g);
        s.b = SpectralVectorField(g);
        CHECK(model_energy(s, {1.0, 1.0}, {0}, ModelCase::DoubleViscous) == 0.0);
    }
    SUBCASE("single pair at |k| = 1, alpha = theta = 1, N = 0 gives 2") {
        MhdState s;
        s.w = SpectralVectorField(g);
        s.w.set_pair(1, 0, 0, 1, {1.0, 0.0}); // |c| = 1 on both members of the pair
        s.b = SpectralVectorField(g);
        // (1/2) A_hat D_hat sum|c|^2 = (1/2) * 2 * 1 * 2
        CHECK(model_energy(s, {1.0, 1.0}, {0}, ModelCase::DeconvEuler) == doctest::Approx(2.0));
    }
    SUBCASE("magnetic-only state reduces to half the squared L2 norm") {
        MhdState s;
        s.w = SpectralVectorField(g);
        s.b = random_solenoidal_field(g, 5, -1.0, 1.0, 6.0);
        const double b = s.b.l2_norm();
        CHECK(rel_err(model_energy(s, {0.5, 0.75}, {4}, ModelCase::DoubleViscous), 0.5 * b * b) <=
              1e-14);
    }
    SUBCASE("free function agrees with the model member") {
        MhdModel model(g, {0.5, 0.75}, {4}, {0.01, 0.01, ModelCase::DoubleViscous});
        MhdState s;
        s.w = random_solenoidal_field(g, 6, -1.0, 1.0, 6.0);
        s.b = random_solenoidal_field(g, 7, -1.0, 1.0, 6.0);
        CHECK(rel_err(model.model_energy(s),
                      model_energy(s, {0.5, 0.75}, {4}, ModelCase::DoubleViscous)) <= 1e-14);
    }
}

TEST_CASE("blow-up monitor") {
    const GridSpec g = grid16();

    SUBCASE("zero state") {
        MhdState s;
        s.w = SpectralVectorField(g);
        CHECK(blowup_monitor(s, {0.5, 1.0}) == 0.0);
    }
    SUBCASE("single pair at |k| = 2, theta = 1, alpha = 0.5 gives 2") {
        MhdState s;
        s.w = SpectralVectorField(g);
        s.w.set_pair(2, 0, 0, 1, {1.0, 0.0});
        // alpha^2 * sum |k|^2 |c|^2 = 0.25 * 4 * 2
        CHECK(blowup_monitor(s, {0.5, 1.0}) == doctest::Approx(2.0));
    }
    SUBCASE("scales as alpha^{2 theta} at fixed w") {
        MhdState s;
        s.w = random_solenoidal_field(g, 9, -1.0, 1.0, 6.0);
        for (double theta : {0.5, 1.0}) {
            const double m1 = blowup_monitor(s, {0.4, theta});
            const double m2 = blowup_monitor(s, {0.8, theta});
            CHECK(rel_err(m2 / m1, std::pow(2.0, 2.0 * theta)) <= 1e-12);
        }
    }
}

TEST_CASE("energy balance residual over a trajectory") {
    const GridSpec g = grid16();

    SUBCASE("needs at least two records") {
        std::vector<DiagnosticsRecord> records(1);
        CHECK_THROWS_AS(energy_balance_residual(records), config_error);
    }
    SUBCASE("zero initial energy reports not-applicable") {
        std::vector<DiagnosticsRecord> records(2);
        CHECK(!energy_balance_residual(records).has_value());
    }
    SUBCASE("inviscid run: residual equals the energy drift") {
        MhdModel model(g, {0.5, 0.75}, {3}, {0.0, 0.0, ModelCase::DeconvEuler});
        MhdState s;
        s.w = random_solenoidal_field(g, 11, -1.0, 1.0, 6.0);
        s.b = SpectralVectorField(g);
        const double e0 = model.model_energy(s);
        std::vector<DiagnosticsRecord> records;
        RunHooks hooks;
        hooks.record_every = 10;
        hooks.on_record = [&](const MhdState& st, const TimeIntegrator& it) {
            records.push_back(make_record(st, model, it.viscous_dissipation_cum(),
                                          it.magnetic_dissipation_cum(), e0));
        };
        run(std::move(s), model, {5e-3, 0.2, 0.5, Scheme::IFRK4}, hooks);
        const auto residual = energy_balance_residual(records);
        REQUIRE(residual.has_value());
        double drift = 0.0;
        for (const auto& r : records) {
            CHECK(r.visc_dissip_cum == 0.0);
            CHECK(r.mag_dissip_cum == 0.0);
            drift = std::max(drift, std::abs(r.model_energy - e0) / e0);
        }
        CHECK(*residual == doctest::Approx(drift));
    }
    SUBCASE("pure-diffusion parallel ABC run stays below 1e-10") {
        MhdModel model(g, {0.5, 1.0}, {2}, {0.03, 0.05, ModelCase::DoubleViscous});
        MhdState s;
        s.w = abc_field(g, 1.0, 1.0, 1.0);
        s.b = abc_field(g, 0.4, 0.4, 0.4);
        const double e0 = model.model_energy(s);
        std::vector<DiagnosticsRecord> records;
        RunHooks hooks;
        hooks.record_every = 20;
        hooks.on_record = [&](const MhdState& st, const TimeIntegrator& it) {
            records.push_back(make_record(st, model, it.viscous_dissipation_cum(),
                                          it.magnetic_dissipation_cum(), e0));
        };
        run(std::move(s), model, {1e-2, 1.0, 0.5, Scheme::IFRK4}, hooks);
        const auto residual = energy_balance_residual(records);
        REQUIRE(residual.has_value());
        CHECK(*residual <= 1e-10);
    }
    SUBCASE("viscous MHD short run balances to quadrature accuracy") {
        MhdModel model(g, {0.5, 0.5}, {3}, {0.01, 0.01, ModelCase::DoubleViscous});
        MhdState s;
        s.w = random_solenoidal_field(g, 13, -1.5, 1.0, 6.0);
        s.b = random_solenoidal_field(g, 14, -1.5, 1.0, 6.0);
        const double e0 = model.model_energy(s);
        std::vector<DiagnosticsRecord> records;
        RunHooks hooks;
        hooks.record_every = 25;
        hooks.on_record = [&](const MhdState& st, const TimeIntegrator& it) {
            records.push_back(make_record(st, model, it.viscous_dissipation_cum(),
                                          it.magnetic_dissipation_cum(), e0));
        };
        run(std::move(s), model, {1e-3, 0.25, 0.5, Scheme::IFRK4}, hooks);
        const auto residual = energy_balance_residual(records);
        REQUIRE(residual.has_value());
        CHECK(*residual <= 1e-6);
    }
}

TEST_CASE("energy inequality check") {
    const GridSpec g = grid16();
    const FilterParams fp{0.5, 1.0};

    MhdState s;
    SpectralVectorField v0 = random_solenoidal_field(g, 15, -1.0, 1.0, 6.0);
    s.w = apply_helmholtz_power(v0, fp, -1.0);
    s.b = SpectralVectorField(g);
    const double initial_l2 = v0.l2_norm();

    SUBCASE("holds at t = 0") { CHECK(energy_inequality_holds(s, fp, initial_l2)); }
    SUBCASE("holds along a conserved trajectory") {
        MhdModel model(g, fp, {4}, {0.0, 0.0, ModelCase::DeconvEuler});
        RunHooks hooks;
        bool all_hold = true;
        hooks.record_every = 10;
        hooks.on_record = [&](const MhdState& st, const TimeIntegrator&) {
            all_hold = all_hold && energy_inequality_holds(st, fp, initial_l2);
        };
        run(s, model, {5e-3, 0.2, 0.5, Scheme::IFRK4}, hooks);
        CHECK(all_hold);
    }
    SUBCASE("an artificially inflated state is flagged") {
        MhdState inflated = s;
        inflated.w.scale(3.0);
        CHECK(!energy_inequality_holds(inflated, fp, initial_l2));
    }
    SUBCASE("record-level form agrees with the state-level form") {
        MhdModel model(g, fp, {4}, {0.0, 0.0, ModelCase::DeconvEuler});
        const DiagnosticsRecord rec = make_record(s, model, 0.0, 0.0, model.model_energy(s));
        CHECK(energy_inequality_holds(rec, initial_l2) ==
              energy_inequality_holds(s, fp, initial_l2));
    }
}

TEST_CASE("ndjson records") {
    const GridSpec g = grid16();
    MhdModel model(g, {0.5, 0.75}, {3}, {0.01, 0.01, ModelCase::DoubleViscous});
    MhdState s;
    s.w = random_solenoidal_field(g, 21, -1.0, 1.0, 6.0);
    s.b = random_solenoidal_field(g, 22, -1.0, 1.0, 6.0);

    SUBCASE("keys appear exactly and in declaration order") {
        const DiagnosticsRecord rec = make_record(s, model, 0.1, 0.2, model.model_energy(s));
        const std::string line = to_ndjson_line(rec);
        const char* keys[] = {"\"t\":",
                              "\"model_energy\":",
                              "\"kinetic_l2\":",
                              "\"magnetic_l2\":",
                              "\"w_h_theta\":",
                              "\"visc_dissip_cum\":",
                              "\"mag_dissip_cum\":",
                              "\"balance_residual\":",
                              "\"blowup_monitor\":",
                              "\"div_residual_w\":",
                              "\"div_residual_b\":"};
        std::size_t pos = 0;
        for (const char* key : keys) {
            const std::size_t found = line.find(key, pos);
            REQUIRE(found != std::string::npos);
            pos = found;
        }
    }
    SUBCASE("undefined balance residual serializes as null") {
        const DiagnosticsRecord rec = make_record(s, model, 0.0, 0.0, 0.0);
        CHECK(to_ndjson_line(rec).find("\"balance_residual\":null") != std::string::npos);
    }
    SUBCASE("record values match the component diagnostics") {
        const DiagnosticsRecord rec = make_record(s, model, 0.0, 0.0, model.model_energy(s));
        CHECK(rec.model_energy == doctest::Approx(model.model_energy(s)));
        CHECK(rec.kinetic_l2 == doctest::Approx(sobolev_norm(s.w, 0.0)));
        CHECK(rec.magnetic_l2 == doctest::Approx(sobolev_norm(s.b, 0.0)));
        CHECK(rec.w_h_theta == doctest::Approx(sobolev_norm(s.w, 0.75)));
        CHECK(rec.blowup_monitor == doctest::Approx(blowup_monitor(s, model.filter())));
        REQUIRE(rec.balance_residual.has_value());
        CHECK(*rec.balance_residual == doctest::Approx(0.0));
    }
}

TEST_CASE("limit study") {
    const GridSpec g = grid16();
    LimitStudyConfig cfg;
    cfg.filter = {0.5, 0.75};
    cfg.physics = {0.01, 0.01, ModelCase::DoubleViscous};
    cfg.integrator = {5e-3, 0.1, 0.5, Scheme::IFRK4};
    cfg.record_every = 4;

    MhdState initial;
    initial.w = random_solenoidal_field(g, 31, -1.5, 1.0, 6.0);
    initial.b = random_solenoidal_field(g, 32, -1.5, 1.0, 6.0);

    SUBCASE("identical dynamics give exactly zero distance") {
        LimitStudyConfig same = cfg;
        same.physics.model_case = ModelCase::LimitModel; // members equal the reference
        const auto rows = limit_study(initial, g, same, {0, 3});
        REQUIRE(rows.size() == 2);
        CHECK(rows[0].err_w == 0.0);
        CHECK(rows[0].err_b == 0.0);
        CHECK(rows[1].err_w == 0.0);
    }
    SUBCASE("errors decrease with the deconvolution order and rows are sorted") {
        const auto rows = limit_study(initial, g, cfg, {8, 0, 2}); // unsorted on purpose
        REQUIRE(rows.size() == 3);
        CHECK(rows[0].order_n == 0);
        CHECK(rows[1].order_n == 2);
        CHECK(rows[2].order_n == 8);
        CHECK(rows[0].err_w > rows[2].err_w);
        CHECK(rows[0].err_b > rows[2].err_b);
        for (const auto& r : rows) CHECK(!r.blew_up);
    }
    SUBCASE("single-shell data contracts at the per-mode geometric rate") {
        LimitStudyConfig shell_cfg = cfg;
        shell_cfg.filter = {1.0, 1.0};
        shell_cfg.integrator = {5e-3, 0.02, 0.5, Scheme::IFRK4};
        shell_cfg.record_every = 1;
        MhdState shell;
        shell.w = random_solenoidal_field(g, 33, 0.0, 1.0, 1.0);
        shell.b = random_solenoidal_field(g, 34, 0.0, 1.0, 1.0);
        const auto rows = limit_study(shell, g, shell_cfg, {2, 3, 4, 5});
        const double r = 0.5; // alpha^2 |k|^2 / (1 + alpha^2 |k|^2) on the |k| = 1 shell
        for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
            const double ratio = rows[i + 1].err_w / rows[i].err_w;
            CHECK(std::abs(ratio - r) <= 0.1 * r);
        }
    }
}

TEST_CASE("stability probe") {
    const GridSpec g = grid16();
    const FilterParams fp{0.5, 0.75};
    const DeconvParams dp{3};
    const PhysicalParams pp{0.02, 0.02, ModelCase::DoubleViscous};
    const IntegratorConfig cfg{5e-3, 0.05, 0.5, Scheme::IFRK4};

    MhdState initial;
    initial.w = apply_helmholtz_power(abc_field(g, 1.0, 1.0, 1.0), fp, -1.0);
    initial.b = random_solenoidal_field(g, 41, -1.5, 1.0, 4.0);
    initial.b.scale(0.2);

    SUBCASE("zero perturbation reports ratio 1") {
        const StabilityReport rep = stability_probe(initial, g, fp, dp, pp, cfg, 0.0, 99);
        CHECK(rep.initial_difference == 0.0);
        CHECK(rep.growth_ratio == 1.0);
    }
    SUBCASE("growth is finite and roughly first order in the perturbation") {
        const StabilityReport full = stability_probe(initial, g, fp, dp, pp, cfg, 1e-6, 99);
        const StabilityReport half = stability_probe(initial, g, fp, dp, pp, cfg, 5e-7, 99);
        REQUIRE(full.initial_difference > 0.0);
        CHECK(std::isfinite(full.growth_ratio));
        CHECK(full.growth_ratio > 0.0);
        // the functional is quadratic in the difference: halving the
        // perturbation quarters it, up to second-order effects
        const double scale_ratio = half.sup_difference / full.sup_difference;
        CHECK(scale_ratio == doctest::Approx(0.25).epsilon(0.2));
        MESSAGE("growth ratio ", full.growth_ratio, ", implied rate ", full.implied_rate);
    }
}
