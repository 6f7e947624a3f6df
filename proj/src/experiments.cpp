#include "swarmlift/experiments.hpp"

#include <cmath>

#include "swarmlift/control.hpp"

namespace swarmlift {

TunedGains tune_for_polygon(const PayloadModel& payload, double side_m, double m_robot,
                            double damping_ratio) {
    if (!(side_m > 0.0)) throw std::domain_error("side length must be positive");
    std::vector<Vec2> shape =
        regular_polygon(payload.agent_count, side_m / (2.0 * std::sin(M_PI / payload.agent_count)));

    TunedGains out;
    out.x0 = norm(shape[0]);
    out.k_p = payload_stiffness(payload, out.x0);
    std::vector<double> bearings = bearings_about_centroid(shape, 0);
    TuneResult tuned = tune_gains(m_robot, out.k_p, bearings, damping_ratio);
    out.k = tuned.k;
    out.B = tuned.B;
    out.zeta_x = tuned.zeta_x;
    out.zeta_y = tuned.zeta_y;
    return out;
}

std::vector<Scenario> default_suite(const SuiteConfig& cfg) {
    PayloadModel payload;
    payload.mass_kg = cfg.payload_mass_kg;
    payload.cable_length_m = cfg.cable_length_m;
    payload.agent_count = cfg.agents;

    TunedGains gains = tune_for_polygon(payload, cfg.side_m, cfg.robot_mass_kg);

    Scenario base;
    base.initial_positions =
        regular_polygon(cfg.agents, cfg.side_m / (2.0 * std::sin(M_PI / cfg.agents)));
    base.fleet.goal = {10.0, 0.0};
    base.fleet.cruise_speed = 0.2;
    base.plant.mass_kg = cfg.robot_mass_kg;
    base.disturbance.kind = DisturbanceKind::ornstein_uhlenbeck;
    base.disturbance.sigma_force_N = 0.005;
    base.disturbance.correlation_time_s = 0.5;
    base.dt = cfg.dt;
    base.duration_s = cfg.duration_s;

    std::vector<Scenario> suite;

    Scenario free_flight = base;
    free_flight.name = "baseline";
    free_flight.seed = cfg.base_seed;
    suite.push_back(free_flight);

    SpringDamperConfig sd;
    sd.k = gains.k;
    sd.l0 = cfg.side_m;
    sd.B = gains.B;
    sd.tau = 0.2;
    for (int i = 1; i <= 5; ++i) {
        Scenario sc = base;
        sc.name = "sd_" + std::to_string(i);
        sc.seed = cfg.base_seed + static_cast<std::uint64_t>(i);
        sc.payload = payload;
        sc.controller.law = sd;
        suite.push_back(sc);
    }

    LennardJonesConfig lj;
    lj.epsilon = gains.k;
    lj.sigma = cfg.side_m;
    for (int i = 1; i <= 5; ++i) {
        Scenario sc = base;
        sc.name = "lj_" + std::to_string(i);
        sc.seed = cfg.base_seed + static_cast<std::uint64_t>(5 + i);
        sc.payload = payload;
        sc.controller.law = lj;
        suite.push_back(sc);
    }
    return suite;
}

}  // namespace swarmlift
