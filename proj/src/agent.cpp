#include "swarmlift/agent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swarmlift {

void ControllerConfig::validate() const {
    if (const auto* sd = std::get_if<SpringDamperConfig>(&law)) sd->validate();
    if (const auto* lj = std::get_if<LennardJonesConfig>(&law)) lj->validate();
    if (gain_f < 0.0) throw std::domain_error("force-to-speed gain must be nonnegative");
    if (!(v_max > 0.0)) throw std::domain_error("speed ceiling must be positive");
    if (!(capture_radius_m > 0.0)) throw std::domain_error("capture radius must be positive");
    if (!(limits.f_max > 0.0)) throw std::domain_error("force ceiling must be positive");
    if (!(limits.d_min_ratio > 0.0)) throw std::domain_error("distance floor must be positive");
}

bool ControllerConfig::has_formation() const {
    return !std::holds_alternative<std::monostate>(law);
}

double ControllerConfig::rest_length() const {
    if (const auto* sd = std::get_if<SpringDamperConfig>(&law)) return sd->l0;
    if (const auto* lj = std::get_if<LennardJonesConfig>(&law)) return lj->sigma;
    return 0.0;
}

double ControllerConfig::formation_gain() const {
    if (gain_f > 0.0) return gain_f;
    if (const auto* sd = std::get_if<SpringDamperConfig>(&law)) return 1.0 / (sd->k * sd->l0);
    if (const auto* lj = std::get_if<LennardJonesConfig>(&law))
        return 1.0 / (lj->epsilon * lj->sigma);
    return 0.0;
}

void FleetCommand::validate() const {
    if (cruise_speed < 0.0) throw std::domain_error("cruise speed must be nonnegative");
    if (attractor_weight < 0.0) throw std::domain_error("attractor weight must be nonnegative");
}

Vec2 formation_force(AgentState& state, std::span<const NeighborObservation> observations,
                     const ControllerConfig& controller, double now) {
    controller.validate();
    Vec2 total;
    if (!controller.has_formation()) return total;

    const double rest = controller.rest_length();
    const double floor = controller.limits.d_min_ratio * rest;

    for (const NeighborObservation& obs : observations) {
        const double d_raw = norm(obs.relative_position);
        // Coincident fix: no direction to push along, skip the pair.
        if (d_raw <= 0.0) continue;
        const Vec2 away = {-obs.relative_position.x / d_raw, -obs.relative_position.y / d_raw};
        const double d = std::max(d_raw, floor);

        double scalar = 0.0;
        if (const auto* sd = std::get_if<SpringDamperConfig>(&controller.law)) {
            auto [it, fresh] = state.filters.try_emplace(obs.sender, sd->tau);
            (void)fresh;
            EmaUpdate upd = it->second.update(now, d_raw);
            scalar = spring_damper_force(*sd, d, upd.rate);
        } else {
            scalar = lennard_jones_force(std::get<LennardJonesConfig>(controller.law), d);
        }
        total += clamp_force(scalar, controller.limits) * away;
    }
    return total;
}

Vec2 step_agent(AgentState& state, std::span<const NeighborObservation> observations,
                const FleetCommand& fleet, const ControllerConfig& controller,
                double now, double dt) {
    if (!(dt > 0.0)) throw std::domain_error("control period must be positive");
    fleet.validate();

    Vec2 force = formation_force(state, observations, controller, now);

    Vec2 to_goal = fleet.goal - state.position;
    double dist = norm(to_goal);
    Vec2 attraction;
    if (dist > 0.0) {
        double speed = fleet.cruise_speed * std::min(1.0, dist / controller.capture_radius_m);
        attraction = (speed / dist) * to_goal;
    }

    if (controller.mode == CommandMode::force)
        return fleet.attractor_weight * attraction + force;

    Vec2 cmd = fleet.attractor_weight * attraction + controller.formation_gain() * force;
    double mag = norm(cmd);
    if (mag > controller.v_max) cmd *= controller.v_max / mag;
    return cmd;
}

}  // namespace swarmlift
