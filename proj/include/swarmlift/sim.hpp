#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmlift/agent.hpp"
#include "swarmlift/catenary.hpp"
#include "swarmlift/geometry.hpp"
#include "swarmlift/swarmnet.hpp"

namespace swarmlift {

/// Thrown when an agent's state stops being finite or leaves any plausible
/// arena, pointing at a mis-tuned scenario.
struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// First-order velocity-tracking plant standing in for a small quadrotor's
/// onboard loops, with planar external forces added in.
struct PlantConfig {
    double mass_kg = 0.027;
    double velocity_tracking_tc = 0.3;  ///< s
    double v_max = 0.5;                 ///< hard speed clamp (m/s)

    void validate() const;
};

enum class DisturbanceKind { none, white, ornstein_uhlenbeck };

/// Per-agent random planar force. White draws sigma_force_N fresh each
/// step; the Ornstein-Uhlenbeck kind relaxes toward zero over
/// correlation_time_s with stationary deviation sigma_force_N, stepped by
/// its exact discretization.
struct DisturbanceConfig {
    DisturbanceKind kind = DisturbanceKind::none;
    double sigma_force_N = 0.005;
    double correlation_time_s = 0.5;

    void validate() const;
};

struct Scenario {
    std::string name = "run";
    std::vector<Vec2> initial_positions;
    std::vector<AgentId> carriers;        ///< payload group; empty means everyone
    std::optional<PayloadModel> payload;  ///< agent_count must match the carriers
    ControllerConfig controller;
    FleetCommand fleet;
    HubConfig hub;
    PlantConfig plant;
    DisturbanceConfig disturbance;
    double dt = 0.01;
    double duration_s = 12.0;
    std::uint64_t seed = 1;
    double altitude_m = 0.8;

    void validate() const;
    /// The carrier list with the empty-means-everyone default resolved.
    std::vector<AgentId> carrier_ids() const;
};

/// One logged control tick for one agent: the state its controller saw and
/// the command it issued.
struct StepRecord {
    double t = 0.0;
    AgentId agent = 0;
    Vec2 position;
    Vec2 velocity;
    Vec2 command;
};

/// Step-major record of a run (agents ascending within each step).
struct TrajectoryLog {
    std::string name = "run";
    double dt = 0.0;
    std::vector<AgentId> agents;
    std::vector<StepRecord> records;
    int taut_events = 0;              ///< steps*agents where a cable went taut
    double vertical_tension_N = 0.0;  ///< per-carrier share, 0 without payload

    std::size_t steps() const {
        return agents.empty() ? 0 : records.size() / agents.size();
    }

    struct Series {
        std::vector<double> t;
        std::vector<double> value;
    };
    /// One agent's position coordinate over t in [t_start, t_end].
    Series position_series(AgentId agent, Axis axis, double t_start, double t_end) const;
    /// Same for the issued command.
    Series command_series(AgentId agent, Axis axis, double t_start, double t_end) const;
};

/// Span ratio past which the cable is treated as taut and the model hands
/// over to a stiff linear penalty.
inline constexpr double kTautSpanRatio = 0.98;

/// Penalty slope used beyond kTautSpanRatio: two orders of magnitude above
/// the payload stiffness at nine tenths of the cable length.
double taut_stiffness(const PayloadModel& payload);

/// Horizontal pull the payload exerts on carrier `index`, pointing at the
/// carrier centroid, from the cable model at the carrier's span. Nearly
/// vertical cables (span below 1e-9 of the length) pull nothing; spans at
/// or past kTautSpanRatio of the length use the taut penalty and bump
/// *taut_events when given.
Vec2 payload_force(std::span<const Vec2> carrier_positions, const PayloadModel& payload,
                   std::size_t index, int* taut_events = nullptr);

/// Runs a scenario to completion. Deterministic: same scenario, same log.
TrajectoryLog run(const Scenario& scenario);

}  // namespace swarmlift
