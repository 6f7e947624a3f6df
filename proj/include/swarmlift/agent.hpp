#pragma once

#include <map>
#include <span>
#include <variant>

#include "swarmlift/control.hpp"
#include "swarmlift/estimation.hpp"
#include "swarmlift/geometry.hpp"
#include "swarmlift/swarmnet.hpp"

namespace swarmlift {

/// Which law turns a neighbor distance into a pair force. Monostate means
/// no formation control at all (goal attraction only).
using FormationLaw = std::variant<std::monostate, SpringDamperConfig, LennardJonesConfig>;

/// How step_agent's output is meant to be consumed by the plant.
enum class CommandMode {
    velocity,  ///< command is a velocity setpoint (m/s)
    force,     ///< command is a planar force (N)
};

struct ControllerConfig {
    FormationLaw law;
    double gain_f = 0.0;  ///< force -> speed gain (m/s per N); 0 derives 1/(k * l0)
    double v_max = 0.5;   ///< command magnitude ceiling in velocity mode (m/s)
    double capture_radius_m = 0.05;  ///< attraction tapers inside this radius
    ForceLimits limits;
    CommandMode mode = CommandMode::velocity;

    void validate() const;
    bool has_formation() const;
    double rest_length() const;    ///< l0, sigma, or 0 without a law
    double formation_gain() const; ///< gain_f, or the derived default
};

/// Shared goal every robot steers toward while the formation law holds the
/// shape. attractor_weight scales the goal term against the formation term.
struct FleetCommand {
    Vec2 goal;
    double cruise_speed = 0.2;      ///< m/s
    double attractor_weight = 1.0;  ///< dimensionless

    void validate() const;
};

/// Everything one robot knows: identity, last mocap fix, and one distance
/// filter per neighbor it has heard from.
struct AgentState {
    AgentId id = 0;
    Vec2 position;
    Vec2 velocity;
    double altitude_setpoint_m = 0.8;
    std::map<AgentId, EmaDerivativeFilter> filters;
};

/// Sum of clamped pair forces toward/away from each observed neighbor.
/// Spring-damper links feed each neighbor's distance through that
/// neighbor's filter (updated here) for the damping term; distances are
/// floored at limits.d_min_ratio times the rest length before the law is
/// evaluated and each pair force is clamped to limits.f_max.
Vec2 formation_force(AgentState& state, std::span<const NeighborObservation> observations,
                     const ControllerConfig& controller, double now);

/// One control tick: goal attraction plus the formation term.
/// In velocity mode the result is attractor_weight * attraction +
/// formation_gain * force, clamped to v_max; in force mode the raw force
/// sum plus the attraction reinterpreted as a force, unclamped.
/// Attraction is cruise_speed toward the goal, tapering linearly inside
/// capture_radius_m. Requires dt > 0.
Vec2 step_agent(AgentState& state, std::span<const NeighborObservation> observations,
                const FleetCommand& fleet, const ControllerConfig& controller,
                double now, double dt);

}  // namespace swarmlift
