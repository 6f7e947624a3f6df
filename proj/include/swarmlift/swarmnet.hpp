#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "swarmlift/geometry.hpp"

namespace swarmlift {

/// One received radio message: who sent it, where they are relative to the
/// receiver, and whatever bytes they broadcast.
struct NeighborObservation {
    AgentId sender = 0;
    Vec2 relative_position;  ///< receiver -> sender (m), noise-perturbed
    std::vector<std::uint8_t> payload;
};

struct HubConfig {
    double comm_range_m = 1.5;
    int delivery_delay_steps = 0;
    double position_noise_std_m = 0.0;

    void validate() const;
};

using Outboxes = std::map<AgentId, std::vector<std::uint8_t>>;
using Positions = std::map<AgentId, Vec2>;
using DeliveryMap = std::map<AgentId, std::vector<NeighborObservation>>;

/// One synchronous broadcast round. Every agent listed in `positions`
/// receives one observation per other agent within range, ordered by sender
/// id, stamped with the noisy relative position and that sender's outbox
/// bytes (empty when the sender queued nothing). Reported relative
/// positions never exceed the range even with noise on.
///
/// Noise draws are keyed on (seed, receiver, sender), so each directed pair
/// has its own stream and membership changes elsewhere in the swarm cannot
/// shift anyone's perception.
DeliveryMap step_exchange(const Positions& positions, const Outboxes& outboxes,
                          const HubConfig& cfg, std::uint64_t seed);

/// Stateful wrapper adding delivery delay and named agent groups.
class CommHub {
public:
    explicit CommHub(HubConfig cfg);

    /// Queues this round's outboxes and delivers the round from
    /// delivery_delay_steps ago (nothing while the queue fills), range-checked
    /// and position-stamped against current positions.
    DeliveryMap step(const Positions& positions, const Outboxes& outboxes,
                     std::uint64_t seed);

    void join_group(AgentId agent, const std::string& label);
    void leave_group(AgentId agent, const std::string& label);

    /// Members of a group; unknown labels give the empty set.
    const std::set<AgentId>& group_members(const std::string& label) const;

    const HubConfig& config() const { return cfg_; }

private:
    HubConfig cfg_;
    std::deque<Outboxes> pending_;
    std::map<std::string, std::set<AgentId>> groups_;
};

/// SplitMix64 bit mixer used to key per-pair noise streams.
std::uint64_t mix_bits(std::uint64_t z);

/// Folds words into one seed through repeated mixing.
std::uint64_t combine_seed(std::initializer_list<std::uint64_t> words);

/// Standard normal draw generated from a counter-keyed stream (Box-Muller
/// over two mixed 53-bit uniforms). Same key, same draw.
double keyed_gaussian(std::uint64_t key, std::uint32_t index);

}  // namespace swarmlift
