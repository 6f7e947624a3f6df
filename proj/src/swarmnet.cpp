#include "swarmlift/swarmnet.hpp"

#include <cmath>
#include <stdexcept>

namespace swarmlift {

void HubConfig::validate() const {
    if (!(comm_range_m > 0.0)) throw std::domain_error("communication range must be positive");
    if (delivery_delay_steps < 0) throw std::domain_error("delivery delay must be nonnegative");
    if (position_noise_std_m < 0.0) throw std::domain_error("position noise must be nonnegative");
}

std::uint64_t mix_bits(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t combine_seed(std::initializer_list<std::uint64_t> words) {
    std::uint64_t h = 0x243F6A8885A308D3ull;
    for (std::uint64_t w : words) h = mix_bits(h ^ w);
    return h;
}

double keyed_gaussian(std::uint64_t key, std::uint32_t index) {
    std::uint64_t a = mix_bits(key ^ (0xA0761D6478BD642Full * (2ull * index + 1)));
    std::uint64_t b = mix_bits(key ^ (0xE7037ED1A0B428DBull * (2ull * index + 2)));
    // (0,1] and [0,1) respectively; the log argument never hits zero.
    double u1 = (static_cast<double>(a >> 11) + 1.0) * 0x1.0p-53;
    double u2 = static_cast<double>(b >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

DeliveryMap step_exchange(const Positions& positions, const Outboxes& outboxes,
                          const HubConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    DeliveryMap out;
    for (const auto& [rid, rpos] : positions) {
        auto& inbox = out[rid];
        for (const auto& [sid, spos] : positions) {
            if (sid == rid) continue;
            Vec2 rel = spos - rpos;
            if (norm(rel) > cfg.comm_range_m) continue;
            if (cfg.position_noise_std_m > 0.0) {
                std::uint64_t key =
                    combine_seed({seed, static_cast<std::uint64_t>(static_cast<std::int64_t>(rid)),
                                  static_cast<std::uint64_t>(static_cast<std::int64_t>(sid))});
                rel.x += cfg.position_noise_std_m * keyed_gaussian(key, 0);
                rel.y += cfg.position_noise_std_m * keyed_gaussian(key, 1);
                double noisy = norm(rel);
                if (noisy > cfg.comm_range_m) rel *= cfg.comm_range_m / noisy;
            }
            NeighborObservation obs;
            obs.sender = sid;
            obs.relative_position = rel;
            auto it = outboxes.find(sid);
            if (it != outboxes.end()) obs.payload = it->second;
            inbox.push_back(std::move(obs));
        }
    }
    return out;
}

CommHub::CommHub(HubConfig cfg) : cfg_(cfg) { cfg_.validate(); }

DeliveryMap CommHub::step(const Positions& positions, const Outboxes& outboxes,
                          std::uint64_t seed) {
    pending_.push_back(outboxes);
    if (pending_.size() <= static_cast<std::size_t>(cfg_.delivery_delay_steps)) {
        DeliveryMap empty;
        for (const auto& kv : positions) empty[kv.first];
        return empty;
    }
    Outboxes due = std::move(pending_.front());
    pending_.pop_front();
    return step_exchange(positions, due, cfg_, seed);
}

void CommHub::join_group(AgentId agent, const std::string& label) {
    groups_[label].insert(agent);
}

void CommHub::leave_group(AgentId agent, const std::string& label) {
    auto it = groups_.find(label);
    if (it != groups_.end()) it->second.erase(agent);
}

const std::set<AgentId>& CommHub::group_members(const std::string& label) const {
    static const std::set<AgentId> kEmpty;
    auto it = groups_.find(label);
    return it == groups_.end() ? kEmpty : it->second;
}

}  // namespace swarmlift
