#include "swarmlift/swarmnet.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include <doctest.h>

using namespace swarmlift;

namespace {

Positions triangle_positions() {
    return {{0, {0.0, 0.0}}, {1, {0.6, 0.0}}, {2, {0.3, 0.5196152422706632}}};
}

}  // namespace

TEST_CASE("everyone in range hears everyone else, sorted by sender") {
    Positions pos = triangle_positions();
    Outboxes out;
    out[1] = {0xAB, 0xCD};
    HubConfig cfg;
    DeliveryMap inboxes = step_exchange(pos, out, cfg, 7);

    REQUIRE(inboxes.size() == 3);
    for (const auto& [id, obs] : inboxes) {
        REQUIRE(obs.size() == 2);
        CHECK(obs[0].sender < obs[1].sender);
        for (const NeighborObservation& o : obs) {
            CHECK(o.sender != id);
            Vec2 expected = pos.at(o.sender) - pos.at(id);
            CHECK(o.relative_position.x == expected.x);
            CHECK(o.relative_position.y == expected.y);
        }
    }
    // Payload bytes ride along; silent senders deliver empty payloads.
    CHECK(inboxes.at(0)[0].payload == std::vector<std::uint8_t>{0xAB, 0xCD});
    CHECK(inboxes.at(0)[1].payload.empty());
    CHECK(inboxes.at(1)[0].payload.empty());
}

TEST_CASE("range boundary is inclusive") {
    HubConfig cfg;
    cfg.comm_range_m = 1.0;
    Positions pos{{0, {0.0, 0.0}}, {1, {1.0, 0.0}}, {2, {2.0, 0.0}}, {3, {3.0000001, 0.0}}};
    DeliveryMap inboxes = step_exchange(pos, {}, cfg, 1);

    CHECK(inboxes.at(0).size() == 1);  // hears 1, not 2
    CHECK(inboxes.at(0)[0].sender == 1);
    CHECK(inboxes.at(1).size() == 2);  // exactly at range both ways
    CHECK(inboxes.at(2).size() == 1);  // 1 at range, 3 a hair beyond
    CHECK(inboxes.at(2)[0].sender == 1);
    CHECK(inboxes.at(3).empty());
}

TEST_CASE("exchange is deterministic in the seed") {
    Positions pos = triangle_positions();
    HubConfig cfg;
    cfg.position_noise_std_m = 0.02;
    DeliveryMap a = step_exchange(pos, {}, cfg, 42);
    DeliveryMap b = step_exchange(pos, {}, cfg, 42);
    DeliveryMap c = step_exchange(pos, {}, cfg, 43);

    bool differs = false;
    for (const auto& [id, obs] : a) {
        for (std::size_t i = 0; i < obs.size(); ++i) {
            CHECK(obs[i].relative_position.x == b.at(id)[i].relative_position.x);
            CHECK(obs[i].relative_position.y == b.at(id)[i].relative_position.y);
            if (obs[i].relative_position.x != c.at(id)[i].relative_position.x) differs = true;
        }
    }
    CHECK(differs);

    // Noise perturbs but never erases the measurement.
    Vec2 truth = pos.at(1) - pos.at(0);
    Vec2 seen = a.at(0)[0].relative_position;
    CHECK(seen.x != truth.x);
    CHECK(norm(seen - truth) < 0.2);
}

TEST_CASE("per-pair noise streams ignore swarm membership") {
    HubConfig cfg;
    cfg.position_noise_std_m = 0.05;
    Positions three = triangle_positions();
    Positions four = three;
    four[3] = {0.9, 0.9};

    DeliveryMap small = step_exchange(three, {}, cfg, 99);
    DeliveryMap big = step_exchange(four, {}, cfg, 99);

    // Adding agent 3 must not change what 0 hears from 1 or 2.
    for (std::size_t i = 0; i < small.at(0).size(); ++i) {
        CHECK(small.at(0)[i].sender == big.at(0)[i].sender);
        CHECK(small.at(0)[i].relative_position.x == big.at(0)[i].relative_position.x);
        CHECK(small.at(0)[i].relative_position.y == big.at(0)[i].relative_position.y);
    }
    // Directed pairs see independent noise: 0->1 differs from 1->0.
    Vec2 zero_sees_one = small.at(0)[0].relative_position;
    Vec2 one_sees_zero = small.at(1)[0].relative_position;
    CHECK(zero_sees_one.x != -one_sees_zero.x);
}

TEST_CASE("noisy positions are clamped to the range") {
    HubConfig cfg;
    cfg.comm_range_m = 1.0;
    cfg.position_noise_std_m = 50.0;
    Positions pos{{0, {0.0, 0.0}}, {1, {0.99, 0.0}}};
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        DeliveryMap inboxes = step_exchange(pos, {}, cfg, seed);
        REQUIRE(inboxes.at(0).size() == 1);
        CHECK(norm(inboxes.at(0)[0].relative_position) <= cfg.comm_range_m + 1e-12);
    }
}

TEST_CASE("delayed delivery carries old bytes with current positions") {
    HubConfig cfg;
    cfg.delivery_delay_steps = 2;
    CommHub hub(cfg);

    Positions pos{{0, {0.0, 0.0}}, {1, {0.5, 0.0}}};
    Outboxes round0;
    round0[1] = {1};
    Outboxes round1;
    round1[1] = {2};
    Outboxes round2;
    round2[1] = {3};

    // Nothing comes out while the pipe fills.
    DeliveryMap d0 = hub.step(pos, round0, 5);
    CHECK(d0.at(0).empty());
    CHECK(d0.at(1).empty());
    DeliveryMap d1 = hub.step(pos, round1, 5);
    CHECK(d1.at(0).empty());

    // Round 2 delivers round 0's bytes, stamped with where agents are now.
    Positions moved{{0, {0.0, 0.0}}, {1, {0.8, 0.0}}};
    DeliveryMap d2 = hub.step(moved, round2, 5);
    REQUIRE(d2.at(0).size() == 1);
    CHECK(d2.at(0)[0].payload == std::vector<std::uint8_t>{1});
    CHECK(d2.at(0)[0].relative_position.x == 0.8);

    // Zero delay is pass-through.
    CommHub direct(HubConfig{});
    DeliveryMap now = direct.step(pos, round0, 5);
    CHECK(now.at(0)[0].payload == std::vector<std::uint8_t>{1});
}

TEST_CASE("delayed messages from agents now out of range are dropped") {
    HubConfig cfg;
    cfg.comm_range_m = 1.0;
    cfg.delivery_delay_steps = 1;
    CommHub hub(cfg);

    Positions close{{0, {0.0, 0.0}}, {1, {0.5, 0.0}}};
    Outboxes out;
    out[1] = {9};
    hub.step(close, out, 3);

    Positions far{{0, {0.0, 0.0}}, {1, {5.0, 0.0}}};
    DeliveryMap d = hub.step(far, {}, 3);
    CHECK(d.at(0).empty());
}

TEST_CASE("groups") {
    CommHub hub(HubConfig{});
    CHECK(hub.group_members("carriers").empty());
    hub.join_group(2, "carriers");
    hub.join_group(0, "carriers");
    hub.join_group(0, "carriers");  // idempotent
    hub.join_group(1, "scouts");
    CHECK(hub.group_members("carriers") == std::set<AgentId>{0, 2});
    CHECK(hub.group_members("scouts") == std::set<AgentId>{1});
    hub.leave_group(2, "carriers");
    hub.leave_group(7, "carriers");  // unknown member is a no-op
    CHECK(hub.group_members("carriers") == std::set<AgentId>{0});
}

TEST_CASE("config validation") {
    HubConfig cfg;
    cfg.comm_range_m = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::domain_error);
    cfg = HubConfig{};
    cfg.delivery_delay_steps = -1;
    CHECK_THROWS_AS(cfg.validate(), std::domain_error);
    cfg = HubConfig{};
    cfg.position_noise_std_m = -0.1;
    CHECK_THROWS_AS(cfg.validate(), std::domain_error);
}

TEST_CASE("bit mixer and seed folding") {
    CHECK(mix_bits(1) != mix_bits(2));
    CHECK(mix_bits(0) != 0);
    CHECK(combine_seed({1, 2}) != combine_seed({2, 1}));
    CHECK(combine_seed({1, 2}) != combine_seed({1, 3}));
    CHECK(combine_seed({5}) == combine_seed({5}));
}

TEST_CASE("keyed gaussian stream is reproducible with sane moments") {
    CHECK(keyed_gaussian(11, 0) == keyed_gaussian(11, 0));
    CHECK(keyed_gaussian(11, 0) != keyed_gaussian(11, 1));
    CHECK(keyed_gaussian(11, 0) != keyed_gaussian(12, 0));

    const int n = 100000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        double g = keyed_gaussian(0xFEED, static_cast<std::uint32_t>(i));
        sum += g;
        sum_sq += g * g;
    }
    double mean = sum / n;
    double var = sum_sq / n - mean * mean;
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(var - 1.0) < 0.02);
}
