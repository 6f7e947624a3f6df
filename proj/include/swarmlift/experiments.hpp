#pragma once

#include <cstdint>
#include <vector>

#include "swarmlift/catenary.hpp"
#include "swarmlift/sim.hpp"

namespace swarmlift {

/// Output of the payload-aware gain chain for a regular polygon fleet.
struct TunedGains {
    double x0 = 0.0;      ///< robot-to-centre span at the nominal shape (m)
    double k_p = 0.0;     ///< payload stiffness at that span (N/m)
    double k = 0.0;       ///< link spring constant (N/m)
    double B = 0.0;       ///< link damping constant (N s/m)
    double zeta_x = 0.0;  ///< achieved radial damping ratio
    double zeta_y = 0.0;  ///< achieved transverse damping ratio
};

/// Chains the cable model into the gain tuner: n robots on a regular
/// polygon of the given side, every robot carrying the payload.
TunedGains tune_for_polygon(const PayloadModel& payload, double side_m, double m_robot,
                            double damping_ratio = 1.0);

/// Knobs for the stock comparison suite.
struct SuiteConfig {
    std::uint64_t base_seed = 30;
    int agents = 3;
    double side_m = 0.6;
    double payload_mass_kg = 0.03;
    double cable_length_m = 0.6;
    double robot_mass_kg = 0.027;
    double dt = 0.01;
    double duration_s = 36.0;
    double window_start_s = 4.0;  ///< analysis window start (s)
    double window_end_s = 35.0;   ///< analysis window end (s)
};

/// The stock comparison: one free-flight baseline (no payload, no formation
/// law), five spring-damper carries, and five pair-potential carries, under
/// identical goals and per-robot disturbances, seeded base_seed + 0..10.
/// Names: baseline, sd_1..sd_5, lj_1..lj_5.
std::vector<Scenario> default_suite(const SuiteConfig& cfg = {});

}  // namespace swarmlift
