#pragma once

#include <stdexcept>

namespace swarmlift {

/// Thrown when a requested cable span reaches or exceeds the cable length,
/// where the sagging-cable model has no solution.
struct TautCableError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Flexible payload carried by a fleet of robots through inextensible cables
/// of equal length, one per robot, all meeting below the swarm centre.
///
/// Units: kg, m, s throughout.
struct PayloadModel {
    double mass_kg = 0.03;
    double cable_length_m = 0.6;
    int agent_count = 3;
    double gravity = 9.81;

    void validate() const;
};

/// Solution of length = a*sinh(x0/a) for the cable shape parameter a.
struct CatenarySolution {
    double a = 0.0;         ///< shape parameter (m)
    double x0 = 0.0;        ///< horizontal robot-to-centre distance (m)
    double residual = 0.0;  ///< |a*sinh(x0/a) - length| (m)
};

/// Relative tolerance on the length residual accepted by solve_catenary.
inline constexpr double kCatenaryRelTol = 1e-9;

/// Weight share carried by each robot: m*g/n. Requires mass > 0, n >= 1.
double vertical_tension(double mass_kg, int agent_count, double gravity = 9.81);
double vertical_tension(const PayloadModel& payload);

/// Solves for the cable shape at horizontal span x0 from the swarm centre.
/// Requires 0 < x0 < cable length; throws TautCableError at or beyond it.
CatenarySolution solve_catenary(const PayloadModel& payload, double x0);

/// Horizontal cable tension at span x0: T_z * a / length.
double horizontal_tension(const PayloadModel& payload, double x0);

/// Stiffness the payload presents to radial robot motion about x0_eq,
/// i.e. the derivative of horizontal_tension with respect to the span.
double payload_stiffness(const PayloadModel& payload, double x0_eq);

}  // namespace swarmlift
