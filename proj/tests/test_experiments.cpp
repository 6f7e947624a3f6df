#include "swarmlift/experiments.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include <doctest.h>

#include "swarmlift/control.hpp"

using namespace swarmlift;

TEST_CASE("polygon tuning chains cable stiffness into the gain solve") {
    PayloadModel payload;
    TunedGains g = tune_for_polygon(payload, 0.6, 0.027);

    CHECK(g.x0 == doctest::Approx(0.34641016151377546).epsilon(1e-12));
    CHECK(g.k_p == doctest::Approx(0.17103389970042908).epsilon(1e-9));
    // Equilateral geometry admits the exact solve: k = k_p / 3.
    CHECK(g.k == doctest::Approx(g.k_p / 3.0).epsilon(1e-9));
    CHECK(g.k == doctest::Approx(0.057011299900143025).epsilon(1e-9));
    CHECK(g.B == doctest::Approx(0.11097045002355759).epsilon(1e-9));
    CHECK(g.zeta_x == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(g.zeta_y == doctest::Approx(1.0).epsilon(1e-9));

    // The damping target carries through.
    TunedGains soft = tune_for_polygon(payload, 0.6, 0.027, 0.7);
    CHECK(soft.zeta_x == doctest::Approx(0.7).epsilon(1e-9));
    CHECK(soft.k == doctest::Approx(g.k).epsilon(1e-9));
    CHECK(soft.B < g.B);

    // A square fleet gets a different span and stiffness.
    PayloadModel four = payload;
    four.agent_count = 4;
    four.cable_length_m = 0.9;
    TunedGains g4 = tune_for_polygon(four, 0.6, 0.027);
    CHECK(g4.x0 == doctest::Approx(0.6 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(g4.k_p > 0.0);
    CHECK(g4.zeta_x == doctest::Approx(1.0).epsilon(1e-6));

    CHECK_THROWS_AS(tune_for_polygon(payload, 0.0, 0.027), std::domain_error);
    // Side 1.05 on a 0.6 m cable needs a span past the cable length.
    CHECK_THROWS_AS(tune_for_polygon(payload, 1.05, 0.027), TautCableError);
}

TEST_CASE("stock suite layout") {
    std::vector<Scenario> suite = default_suite();
    REQUIRE(suite.size() == 11);

    CHECK(suite[0].name == "baseline");
    CHECK_FALSE(suite[0].payload.has_value());
    CHECK(std::holds_alternative<std::monostate>(suite[0].controller.law));
    CHECK(suite[0].seed == 30);

    std::set<std::uint64_t> seeds;
    for (const Scenario& sc : suite) {
        sc.validate();
        seeds.insert(sc.seed);
        CHECK(sc.initial_positions.size() == 3);
        CHECK(sc.fleet.goal.x == 10.0);
        CHECK(sc.fleet.cruise_speed == 0.2);
        CHECK(sc.disturbance.kind == DisturbanceKind::ornstein_uhlenbeck);
        CHECK(sc.disturbance.sigma_force_N == 0.005);
        CHECK(sc.dt == 0.01);
        CHECK(sc.duration_s == 36.0);
        CHECK(sc.controller.mode == CommandMode::velocity);
        // Neighbors start one side length apart, inside radio range.
        CHECK(norm(sc.initial_positions[1] - sc.initial_positions[0]) ==
              doctest::Approx(0.6).epsilon(1e-12));
    }
    CHECK(seeds.size() == 11);

    TunedGains gains = tune_for_polygon(PayloadModel{}, 0.6, 0.027);
    for (int i = 1; i <= 5; ++i) {
        const Scenario& sc = suite[static_cast<std::size_t>(i)];
        CHECK(sc.name == "sd_" + std::to_string(i));
        CHECK(sc.seed == 30 + static_cast<std::uint64_t>(i));
        REQUIRE(sc.payload.has_value());
        CHECK(sc.payload->agent_count == 3);
        const auto& sd = std::get<SpringDamperConfig>(sc.controller.law);
        CHECK(sd.k == gains.k);
        CHECK(sd.B == gains.B);
        CHECK(sd.l0 == 0.6);
        CHECK(sd.tau == 0.2);
    }
    for (int i = 1; i <= 5; ++i) {
        const Scenario& sc = suite[static_cast<std::size_t>(5 + i)];
        CHECK(sc.name == "lj_" + std::to_string(i));
        CHECK(sc.seed == 35 + static_cast<std::uint64_t>(i));
        const auto& lj = std::get<LennardJonesConfig>(sc.controller.law);
        CHECK(lj.epsilon == gains.k);
        CHECK(lj.sigma == 0.6);
    }
}

TEST_CASE("suite knobs propagate") {
    SuiteConfig cfg;
    cfg.base_seed = 100;
    cfg.agents = 4;
    cfg.side_m = 0.5;
    cfg.cable_length_m = 0.9;
    cfg.duration_s = 10.0;
    std::vector<Scenario> suite = default_suite(cfg);
    CHECK(suite[0].seed == 100);
    CHECK(suite[10].seed == 110);
    CHECK(suite[0].initial_positions.size() == 4);
    CHECK(suite[3].payload->cable_length_m == 0.9);
    CHECK(suite[3].payload->agent_count == 4);
    CHECK(suite[0].duration_s == 10.0);
    CHECK(norm(suite[0].initial_positions[1] - suite[0].initial_positions[0]) ==
          doctest::Approx(0.5).epsilon(1e-12));
}
