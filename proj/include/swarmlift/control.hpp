#pragma once

#include <span>
#include <vector>

#include "swarmlift/geometry.hpp"

namespace swarmlift {

/// Virtual spring-damper link between neighboring robots.
struct SpringDamperConfig {
    double k = 0.25;   ///< spring constant (N/m)
    double l0 = 0.6;   ///< rest length (m)
    double B = 0.16;   ///< damping constant (N s/m)
    double tau = 0.2;  ///< smoothing time constant for the distance rate (s)

    void validate() const;
};

/// Lennard-Jones style pair potential, scaled so the force slope at the
/// minimum matches a spring of constant epsilon.
struct LennardJonesConfig {
    double epsilon = 0.25;  ///< well strength (N/m at the minimum)
    double sigma = 0.6;     ///< equilibrium distance (m)

    void validate() const;
};

/// Saturation the robots apply when turning pair forces into commands.
/// The potential diverges at short range, so distances are floored before
/// evaluation and the resulting force magnitude capped.
struct ForceLimits {
    double f_max = 0.1;        ///< |force| ceiling (N)
    double d_min_ratio = 0.2;  ///< distance floor, as a fraction of rest length
};

/// Per-axis closed-loop gains in the swarm frame (x radial to the swarm
/// centre, y transverse), combining the payload's radial stiffness with
/// the projections of every neighbor link.
struct AxisGains {
    double k_x = 0.0;
    double k_y = 0.0;
    double B_x = 0.0;
    double B_y = 0.0;
};

/// Gains chosen by tune_gains, with the damping ratios they achieve.
struct TuneResult {
    double k = 0.0;
    double B = 0.0;
    double zeta_x = 0.0;
    double zeta_y = 0.0;
    bool collinear = false;  ///< all neighbors on the x axis; y untunable
};

/// Signed scalar pair force, positive pushing the pair apart:
///   -k*(d - l0) - B*d_dot.
double spring_damper_force(const SpringDamperConfig& cfg, double d, double d_dot);

/// Pair potential (eps*sigma^2/8) * ((sigma/d)^4 - 2*(sigma/d)^2).
/// Requires d > 0.
double lennard_jones_potential(const LennardJonesConfig& cfg, double d);

/// Negated potential gradient (eps*sigma/2) * ((sigma/d)^5 - (sigma/d)^3),
/// positive pushing the pair apart. Requires d > 0.
double lennard_jones_force(const LennardJonesConfig& cfg, double d);

/// Clamps a scalar pair force to [-f_max, f_max].
double clamp_force(double f, const ForceLimits& limits);

/// Combines payload stiffness k_p with neighbor links at the given bearings
/// (radians from the robot's x axis, which points at the swarm centre):
///   k_x = k_p + k*sum(cos^2), k_y = k*sum(sin^2), likewise for B.
AxisGains axis_gains(double k, double B, double k_p,
                     std::span<const double> neighbor_bearings);

/// Picks (k, B) so both axes sit as close as possible to the requested
/// damping ratio given robot mass and payload stiffness. When the bearing
/// geometry admits it the x ratio is met exactly with k solving
/// zeta_x = zeta_y; otherwise k minimizes the worse axis deviation over a
/// bounded sweep, with k_fallback setting the scale when the payload term
/// vanishes. Collinear geometries tune x alone and flag the result.
TuneResult tune_gains(double m_robot, double k_p,
                      std::span<const double> neighbor_bearings,
                      double damping_ratio = 1.0, double k_fallback = 0.25);

/// Bearings of every other robot as seen from positions[index], measured
/// from the direction toward the centroid of all robots.
std::vector<double> bearings_about_centroid(std::span<const Vec2> positions,
                                            std::size_t index);

/// Positions of a regular n-gon with the given circumradius, first vertex
/// on the +x axis.
std::vector<Vec2> regular_polygon(int n, double circumradius);

}  // namespace swarmlift
