#include "swarmlift/sim.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace swarmlift {

void PlantConfig::validate() const {
    if (!(mass_kg > 0.0)) throw std::domain_error("robot mass must be positive");
    if (!(velocity_tracking_tc > 0.0))
        throw std::domain_error("velocity tracking time constant must be positive");
    if (!(v_max > 0.0)) throw std::domain_error("speed clamp must be positive");
}

void DisturbanceConfig::validate() const {
    if (kind == DisturbanceKind::none) return;
    if (sigma_force_N < 0.0) throw std::domain_error("disturbance strength must be nonnegative");
    if (kind == DisturbanceKind::ornstein_uhlenbeck && !(correlation_time_s > 0.0))
        throw std::domain_error("disturbance correlation time must be positive");
}

void Scenario::validate() const {
    if (initial_positions.empty()) throw std::invalid_argument("scenario has no agents");
    if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
    if (!(duration_s >= dt)) throw std::invalid_argument("duration shorter than one step");
    if (!(altitude_m > 0.0)) throw std::invalid_argument("altitude must be positive");
    controller.validate();
    fleet.validate();
    hub.validate();
    plant.validate();
    disturbance.validate();

    const auto n = static_cast<AgentId>(initial_positions.size());
    std::set<AgentId> seen;
    for (AgentId c : carriers) {
        if (c < 0 || c >= n) throw std::invalid_argument("carrier id out of range");
        if (!seen.insert(c).second) throw std::invalid_argument("duplicate carrier id");
    }
    if (payload) {
        payload->validate();
        const std::size_t count = carriers.empty() ? initial_positions.size() : carriers.size();
        if (count < 2) throw std::invalid_argument("payload needs at least two carriers");
        if (static_cast<std::size_t>(payload->agent_count) != count)
            throw std::invalid_argument("payload agent count does not match the carriers");
    }
}

std::vector<AgentId> Scenario::carrier_ids() const {
    std::vector<AgentId> ids = carriers;
    if (ids.empty())
        for (std::size_t i = 0; i < initial_positions.size(); ++i)
            ids.push_back(static_cast<AgentId>(i));
    std::sort(ids.begin(), ids.end());
    return ids;
}

namespace {

TrajectoryLog::Series extract(const TrajectoryLog& log, AgentId agent, Axis axis,
                              double t_start, double t_end, bool command) {
    TrajectoryLog::Series s;
    for (const StepRecord& r : log.records) {
        if (r.agent != agent || r.t < t_start || r.t > t_end) continue;
        s.t.push_back(r.t);
        s.value.push_back(component(command ? r.command : r.position, axis));
    }
    return s;
}

}  // namespace

TrajectoryLog::Series TrajectoryLog::position_series(AgentId agent, Axis axis, double t_start,
                                                     double t_end) const {
    return extract(*this, agent, axis, t_start, t_end, false);
}

TrajectoryLog::Series TrajectoryLog::command_series(AgentId agent, Axis axis, double t_start,
                                                    double t_end) const {
    return extract(*this, agent, axis, t_start, t_end, true);
}

double taut_stiffness(const PayloadModel& payload) {
    return 100.0 * payload_stiffness(payload, 0.9 * payload.cable_length_m);
}

Vec2 payload_force(std::span<const Vec2> carrier_positions, const PayloadModel& payload,
                   std::size_t index, int* taut_events) {
    payload.validate();
    if (carrier_positions.size() != static_cast<std::size_t>(payload.agent_count))
        throw std::invalid_argument("carrier positions do not match the payload agent count");
    if (index >= carrier_positions.size()) throw std::invalid_argument("carrier index out of range");

    Vec2 centroid;
    for (const Vec2& q : carrier_positions) centroid += q;
    centroid *= 1.0 / static_cast<double>(carrier_positions.size());

    Vec2 rel = centroid - carrier_positions[index];
    const double x0 = norm(rel);
    const double length = payload.cable_length_m;
    if (x0 < 1e-9 * length) return {};

    const double x0_taut = kTautSpanRatio * length;
    double magnitude;
    if (x0 < x0_taut) {
        magnitude = horizontal_tension(payload, x0);
    } else {
        magnitude = horizontal_tension(payload, x0_taut) + taut_stiffness(payload) * (x0 - x0_taut);
        if (taut_events) ++*taut_events;
    }
    return (magnitude / x0) * rel;
}

TrajectoryLog run(const Scenario& scenario) {
    scenario.validate();

    const std::size_t n = scenario.initial_positions.size();
    const std::vector<AgentId> carriers = scenario.carrier_ids();

    std::vector<AgentState> states(n);
    std::vector<Vec2> plant_pos(scenario.initial_positions.begin(),
                                scenario.initial_positions.end());
    std::vector<Vec2> plant_vel(n);
    std::vector<Vec2> ou_state(n);
    std::vector<Vec2> commands(n);

    CommHub hub(scenario.hub);
    for (std::size_t i = 0; i < n; ++i) {
        states[i].id = static_cast<AgentId>(i);
        states[i].position = plant_pos[i];
        states[i].altitude_setpoint_m = scenario.altitude_m;
    }
    for (AgentId c : (scenario.payload ? carriers : std::vector<AgentId>{}))
        hub.join_group(c, "carriers");

    TrajectoryLog log;
    log.name = scenario.name;
    log.dt = scenario.dt;
    for (std::size_t i = 0; i < n; ++i) log.agents.push_back(static_cast<AgentId>(i));
    if (scenario.payload) log.vertical_tension_N = vertical_tension(*scenario.payload);

    const auto steps = static_cast<std::size_t>(std::llround(scenario.duration_s / scenario.dt));
    log.records.reserve(steps * n);

    const PlantConfig& plant = scenario.plant;
    const DisturbanceConfig& dist = scenario.disturbance;
    const bool force_mode = scenario.controller.mode == CommandMode::force;
    const double ou_decay = dist.kind == DisturbanceKind::ornstein_uhlenbeck
                                ? std::exp(-scenario.dt / dist.correlation_time_s)
                                : 0.0;
    const double ou_kick = dist.kind == DisturbanceKind::ornstein_uhlenbeck
                               ? dist.sigma_force_N * std::sqrt(1.0 - ou_decay * ou_decay)
                               : 0.0;

    std::vector<Vec2> carrier_snapshot(carriers.size());

    for (std::size_t step = 0; step < steps; ++step) {
        const double t = static_cast<double>(step) * scenario.dt;

        Positions positions;
        for (std::size_t i = 0; i < n; ++i) positions[static_cast<AgentId>(i)] = plant_pos[i];
        DeliveryMap inboxes =
            hub.step(positions, {}, combine_seed({scenario.seed, 0xC0FFEEull, step}));

        for (std::size_t i = 0; i < n; ++i) {
            states[i].position = plant_pos[i];
            states[i].velocity = plant_vel[i];
            commands[i] = step_agent(states[i], inboxes[static_cast<AgentId>(i)], scenario.fleet,
                                     scenario.controller, t, scenario.dt);
            log.records.push_back(
                {t, static_cast<AgentId>(i), plant_pos[i], plant_vel[i], commands[i]});
        }

        for (std::size_t c = 0; c < carriers.size(); ++c)
            carrier_snapshot[c] = plant_pos[static_cast<std::size_t>(carriers[c])];

        for (std::size_t i = 0; i < n; ++i) {
            Vec2 force;
            if (scenario.payload) {
                auto it = std::lower_bound(carriers.begin(), carriers.end(),
                                           static_cast<AgentId>(i));
                if (it != carriers.end() && *it == static_cast<AgentId>(i))
                    force += payload_force(carrier_snapshot, *scenario.payload,
                                           static_cast<std::size_t>(it - carriers.begin()),
                                           &log.taut_events);
            }
            if (dist.kind != DisturbanceKind::none) {
                const std::uint64_t key =
                    combine_seed({scenario.seed, 0xD157ull, static_cast<std::uint64_t>(i)});
                const Vec2 xi = {keyed_gaussian(key, static_cast<std::uint32_t>(2 * step)),
                                 keyed_gaussian(key, static_cast<std::uint32_t>(2 * step + 1))};
                if (dist.kind == DisturbanceKind::white) {
                    force += dist.sigma_force_N * xi;
                } else {
                    ou_state[i] = ou_decay * ou_state[i] + ou_kick * xi;
                    force += ou_state[i];
                }
            }

            Vec2& v = plant_vel[i];
            if (force_mode)
                v += scenario.dt * (1.0 / plant.mass_kg) * (commands[i] + force);
            else
                v += scenario.dt * ((1.0 / plant.velocity_tracking_tc) * (commands[i] - v) +
                                    (1.0 / plant.mass_kg) * force);
            const double speed = norm(v);
            if (speed > plant.v_max) v *= plant.v_max / speed;
            plant_pos[i] += scenario.dt * v;

            if (!std::isfinite(plant_pos[i].x) || !std::isfinite(plant_pos[i].y) ||
                norm(plant_pos[i]) > 1e6)
                throw DivergenceError("agent " + std::to_string(i) + " diverged at t=" +
                                      std::to_string(t) + " s");
        }
    }
    return log;
}

}  // namespace swarmlift
