#include "swarmlift/scenario_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace swarmlift {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct KeyedValue {
    std::string value;
    int line = 0;
};

[[noreturn]] void fail(int line, const std::string& what) {
    throw ScenarioParseError("line " + std::to_string(line) + ": " + what);
}

class KeyTable {
public:
    explicit KeyTable(const std::string& text) {
        std::istringstream in(text);
        std::string raw;
        int line = 0;
        while (std::getline(in, raw)) {
            ++line;
            auto hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            std::string s = trim(raw);
            if (s.empty()) continue;
            auto eq = s.find('=');
            if (eq == std::string::npos) fail(line, "expected key = value");
            std::string key = trim(s.substr(0, eq));
            std::string value = trim(s.substr(eq + 1));
            if (key.empty()) fail(line, "empty key");
            if (value.empty()) fail(line, "empty value for '" + key + "'");
            if (!entries_.emplace(key, KeyedValue{value, line}).second)
                fail(line, "duplicate key '" + key + "'");
        }
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    const KeyedValue* take(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return nullptr;
        consumed_.insert(key);
        return &it->second;
    }

    double number(const std::string& key, double fallback) {
        const KeyedValue* kv = take(key);
        if (!kv) return fallback;
        try {
            std::size_t used = 0;
            double v = std::stod(kv->value, &used);
            if (used != kv->value.size()) throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            fail(kv->line, "'" + key + "' is not a number: " + kv->value);
        }
    }

    std::uint64_t integer(const std::string& key, std::uint64_t fallback) {
        const KeyedValue* kv = take(key);
        if (!kv) return fallback;
        try {
            std::size_t used = 0;
            auto v = std::stoull(kv->value, &used);
            if (used != kv->value.size()) throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            fail(kv->line, "'" + key + "' is not an integer: " + kv->value);
        }
    }

    std::string word(const std::string& key, const std::string& fallback) {
        const KeyedValue* kv = take(key);
        return kv ? kv->value : fallback;
    }

    // Like word(), but reports the source line for error messages.
    std::pair<std::string, int> word_at(const std::string& key, const std::string& fallback) {
        const KeyedValue* kv = take(key);
        return kv ? std::make_pair(kv->value, kv->line) : std::make_pair(fallback, 0);
    }

    double required_number(const std::string& key, int context_line) {
        if (!has(key)) fail(context_line, "missing key '" + key + "'");
        return number(key, 0.0);
    }

    bool flag(const std::string& key, bool fallback) {
        const KeyedValue* kv = take(key);
        if (!kv) return fallback;
        if (kv->value == "true" || kv->value == "1" || kv->value == "yes") return true;
        if (kv->value == "false" || kv->value == "0" || kv->value == "no") return false;
        fail(kv->line, "'" + key + "' must be true or false: " + kv->value);
    }

    void reject_leftovers() const {
        for (const auto& [key, kv] : entries_)
            if (!consumed_.count(key)) fail(kv.line, "unknown key '" + key + "'");
    }

private:
    std::map<std::string, KeyedValue> entries_;
    std::set<std::string> consumed_;
};

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    KeyTable keys(text);
    Scenario sc;

    sc.name = keys.word("name", sc.name);

    const auto agents = static_cast<int>(keys.integer("agents", 0));
    auto [shape, shape_line] = keys.word_at("formation.shape", "polygon");
    if (shape == "polygon") {
        if (agents < 1) fail(shape_line, "polygon formation needs agents >= 1");
        if (agents == 1) {
            sc.initial_positions = {Vec2{}};
            keys.number("formation.side", 0.0);
        } else {
            double side = keys.number("formation.side", 0.6);
            double circumradius = side / (2.0 * std::sin(M_PI / agents));
            sc.initial_positions = regular_polygon(agents, circumradius);
        }
    } else if (shape == "explicit") {
        for (int i = 0; agents > 0 ? i < agents : keys.has("agent." + std::to_string(i) + ".x");
             ++i) {
            std::string base = "agent." + std::to_string(i) + ".";
            Vec2 p{keys.required_number(base + "x", shape_line),
                   keys.required_number(base + "y", shape_line)};
            sc.initial_positions.push_back(p);
        }
        if (sc.initial_positions.empty())
            fail(shape_line, "explicit formation lists no agent positions");
    } else {
        fail(shape_line, "formation.shape must be polygon or explicit: " + shape);
    }
    double offset_x = keys.number("formation.offset_x", 0.0);
    double offset_y = keys.number("formation.offset_y", 0.0);
    for (Vec2& p : sc.initial_positions) p += Vec2{offset_x, offset_y};

    if (const KeyedValue* kv = keys.take("carriers")) {
        std::istringstream in(kv->value);
        std::string tok;
        while (std::getline(in, tok, ',')) {
            try {
                sc.carriers.push_back(static_cast<AgentId>(std::stol(trim(tok))));
            } catch (const std::exception&) {
                fail(kv->line, "carriers must be a comma-separated id list");
            }
        }
    }

    if (keys.flag("payload.enabled", false)) {
        PayloadModel p;
        p.mass_kg = keys.number("payload.mass", p.mass_kg);
        p.cable_length_m = keys.number("payload.cable_length", p.cable_length_m);
        p.gravity = keys.number("payload.gravity", p.gravity);
        p.agent_count = static_cast<int>(sc.carriers.empty() ? sc.initial_positions.size()
                                                             : sc.carriers.size());
        sc.payload = p;
    } else {
        keys.number("payload.mass", 0.0);
        keys.number("payload.cable_length", 0.0);
        keys.number("payload.gravity", 0.0);
    }

    auto [law, law_line] = keys.word_at("controller.law", "none");
    if (law == "spring_damper") {
        SpringDamperConfig sd;
        sd.k = keys.number("controller.k", sd.k);
        sd.l0 = keys.number("controller.l0", sd.l0);
        sd.B = keys.number("controller.B", sd.B);
        sd.tau = keys.number("controller.tau", sd.tau);
        sc.controller.law = sd;
    } else if (law == "lennard_jones") {
        LennardJonesConfig lj;
        lj.epsilon = keys.number("controller.epsilon", lj.epsilon);
        lj.sigma = keys.number("controller.sigma", lj.sigma);
        sc.controller.law = lj;
    } else if (law != "none") {
        fail(law_line, "controller.law must be none, spring_damper, or lennard_jones: " + law);
    }
    sc.controller.gain_f = keys.number("controller.gain_f", sc.controller.gain_f);
    sc.controller.v_max = keys.number("controller.v_max", sc.controller.v_max);
    sc.controller.capture_radius_m =
        keys.number("controller.capture_radius", sc.controller.capture_radius_m);
    sc.controller.limits.f_max = keys.number("controller.f_max", sc.controller.limits.f_max);
    sc.controller.limits.d_min_ratio =
        keys.number("controller.d_min_ratio", sc.controller.limits.d_min_ratio);
    auto [mode, mode_line] = keys.word_at("controller.mode", "velocity");
    if (mode == "velocity")
        sc.controller.mode = CommandMode::velocity;
    else if (mode == "force")
        sc.controller.mode = CommandMode::force;
    else
        fail(mode_line, "controller.mode must be velocity or force: " + mode);

    sc.fleet.goal.x = keys.number("fleet.goal_x", sc.fleet.goal.x);
    sc.fleet.goal.y = keys.number("fleet.goal_y", sc.fleet.goal.y);
    sc.fleet.cruise_speed = keys.number("fleet.cruise_speed", sc.fleet.cruise_speed);
    sc.fleet.attractor_weight = keys.number("fleet.attractor_weight", sc.fleet.attractor_weight);

    sc.hub.comm_range_m = keys.number("hub.range", sc.hub.comm_range_m);
    sc.hub.delivery_delay_steps =
        static_cast<int>(keys.integer("hub.delay_steps", sc.hub.delivery_delay_steps));
    sc.hub.position_noise_std_m = keys.number("hub.noise_std", sc.hub.position_noise_std_m);

    sc.plant.mass_kg = keys.number("plant.mass", sc.plant.mass_kg);
    sc.plant.velocity_tracking_tc = keys.number("plant.tracking_tc", sc.plant.velocity_tracking_tc);
    sc.plant.v_max = keys.number("plant.v_max", sc.plant.v_max);

    auto [kind, kind_line] = keys.word_at("disturbance.kind", "none");
    if (kind == "none")
        sc.disturbance.kind = DisturbanceKind::none;
    else if (kind == "white")
        sc.disturbance.kind = DisturbanceKind::white;
    else if (kind == "ou")
        sc.disturbance.kind = DisturbanceKind::ornstein_uhlenbeck;
    else
        fail(kind_line, "disturbance.kind must be none, white, or ou: " + kind);
    sc.disturbance.sigma_force_N = keys.number("disturbance.sigma", sc.disturbance.sigma_force_N);
    sc.disturbance.correlation_time_s =
        keys.number("disturbance.correlation_time", sc.disturbance.correlation_time_s);

    sc.dt = keys.number("sim.dt", sc.dt);
    sc.duration_s = keys.number("sim.duration", sc.duration_s);
    sc.seed = keys.integer("sim.seed", sc.seed);
    sc.altitude_m = keys.number("sim.altitude", sc.altitude_m);

    keys.reject_leftovers();
    sc.validate();
    return sc;
}

Scenario load_scenario(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open scenario file: " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_scenario(buf.str());
    } catch (const ScenarioParseError& e) {
        throw ScenarioParseError(file.string() + ": " + e.what());
    }
}

std::string serialize_scenario(const Scenario& sc) {
    std::ostringstream out;
    out << "name = " << sc.name << "\n";
    out << "formation.shape = explicit\n";
    out << "agents = " << sc.initial_positions.size() << "\n";
    for (std::size_t i = 0; i < sc.initial_positions.size(); ++i) {
        out << "agent." << i << ".x = " << format_double(sc.initial_positions[i].x) << "\n";
        out << "agent." << i << ".y = " << format_double(sc.initial_positions[i].y) << "\n";
    }
    if (!sc.carriers.empty()) {
        out << "carriers = ";
        for (std::size_t i = 0; i < sc.carriers.size(); ++i)
            out << (i ? "," : "") << sc.carriers[i];
        out << "\n";
    }
    if (sc.payload) {
        out << "payload.enabled = true\n";
        out << "payload.mass = " << format_double(sc.payload->mass_kg) << "\n";
        out << "payload.cable_length = " << format_double(sc.payload->cable_length_m) << "\n";
        out << "payload.gravity = " << format_double(sc.payload->gravity) << "\n";
    }
    if (const auto* sd = std::get_if<SpringDamperConfig>(&sc.controller.law)) {
        out << "controller.law = spring_damper\n";
        out << "controller.k = " << format_double(sd->k) << "\n";
        out << "controller.l0 = " << format_double(sd->l0) << "\n";
        out << "controller.B = " << format_double(sd->B) << "\n";
        out << "controller.tau = " << format_double(sd->tau) << "\n";
    } else if (const auto* lj = std::get_if<LennardJonesConfig>(&sc.controller.law)) {
        out << "controller.law = lennard_jones\n";
        out << "controller.epsilon = " << format_double(lj->epsilon) << "\n";
        out << "controller.sigma = " << format_double(lj->sigma) << "\n";
    } else {
        out << "controller.law = none\n";
    }
    out << "controller.gain_f = " << format_double(sc.controller.gain_f) << "\n";
    out << "controller.v_max = " << format_double(sc.controller.v_max) << "\n";
    out << "controller.capture_radius = " << format_double(sc.controller.capture_radius_m) << "\n";
    out << "controller.f_max = " << format_double(sc.controller.limits.f_max) << "\n";
    out << "controller.d_min_ratio = " << format_double(sc.controller.limits.d_min_ratio) << "\n";
    out << "controller.mode = "
        << (sc.controller.mode == CommandMode::force ? "force" : "velocity") << "\n";
    out << "fleet.goal_x = " << format_double(sc.fleet.goal.x) << "\n";
    out << "fleet.goal_y = " << format_double(sc.fleet.goal.y) << "\n";
    out << "fleet.cruise_speed = " << format_double(sc.fleet.cruise_speed) << "\n";
    out << "fleet.attractor_weight = " << format_double(sc.fleet.attractor_weight) << "\n";
    out << "hub.range = " << format_double(sc.hub.comm_range_m) << "\n";
    out << "hub.delay_steps = " << sc.hub.delivery_delay_steps << "\n";
    out << "hub.noise_std = " << format_double(sc.hub.position_noise_std_m) << "\n";
    out << "plant.mass = " << format_double(sc.plant.mass_kg) << "\n";
    out << "plant.tracking_tc = " << format_double(sc.plant.velocity_tracking_tc) << "\n";
    out << "plant.v_max = " << format_double(sc.plant.v_max) << "\n";
    const char* kind = sc.disturbance.kind == DisturbanceKind::none
                           ? "none"
                           : sc.disturbance.kind == DisturbanceKind::white ? "white" : "ou";
    out << "disturbance.kind = " << kind << "\n";
    out << "disturbance.sigma = " << format_double(sc.disturbance.sigma_force_N) << "\n";
    out << "disturbance.correlation_time = " << format_double(sc.disturbance.correlation_time_s)
        << "\n";
    out << "sim.dt = " << format_double(sc.dt) << "\n";
    out << "sim.duration = " << format_double(sc.duration_s) << "\n";
    out << "sim.seed = " << sc.seed << "\n";
    out << "sim.altitude = " << format_double(sc.altitude_m) << "\n";
    return out.str();
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write scenario file: " + file.string());
    out << serialize_scenario(scenario);
}

void write_csv(const TrajectoryLog& log, const std::filesystem::path& file) {
    std::FILE* f = std::fopen(file.string().c_str(), "wb");
    if (!f) throw std::runtime_error("cannot write log file: " + file.string());
    std::fputs("t,agent,x,y,vx,vy,cmd_vx,cmd_vy\n", f);
    for (const StepRecord& r : log.records)
        std::fprintf(f, "%.17g,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.agent,
                     r.position.x, r.position.y, r.velocity.x, r.velocity.y, r.command.x,
                     r.command.y);
    std::fclose(f);
}

TrajectoryLog read_csv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open log file: " + file.string());
    std::string line;
    if (!std::getline(in, line) || trim(line) != "t,agent,x,y,vx,vy,cmd_vx,cmd_vy")
        throw std::runtime_error(file.string() + ": not a trajectory log (bad header)");

    TrajectoryLog log;
    log.name = file.stem().string();
    std::set<AgentId> agents;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        StepRecord r;
        double cells[8];
        const char* p = line.c_str();
        for (int i = 0; i < 8; ++i) {
            char* end = nullptr;
            cells[i] = std::strtod(p, &end);
            if (end == p || (i < 7 && *end != ',') || (i == 7 && *end != '\0' && *end != '\r'))
                throw std::runtime_error(file.string() + ":" + std::to_string(line_no) +
                                         ": malformed row");
            p = i < 7 ? end + 1 : end;
        }
        r.t = cells[0];
        r.agent = static_cast<AgentId>(cells[1]);
        r.position = {cells[2], cells[3]};
        r.velocity = {cells[4], cells[5]};
        r.command = {cells[6], cells[7]};
        agents.insert(r.agent);
        log.records.push_back(r);
    }
    log.agents.assign(agents.begin(), agents.end());
    if (log.records.size() > log.agents.size())
        log.dt = log.records[log.agents.size()].t - log.records[0].t;
    return log;
}

RunPaths write_run(const TrajectoryLog& log, const Scenario& scenario,
                   const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    RunPaths paths;
    paths.csv = dir / (log.name + ".csv");
    paths.meta = dir / (log.name + ".meta.json");
    write_csv(log, paths.csv);

    nlohmann::json j;
    j["name"] = log.name;
    j["csv"] = paths.csv.filename().string();
    j["agents"] = scenario.initial_positions.size();
    j["carriers"] = scenario.carrier_ids();
    j["dt"] = scenario.dt;
    j["duration_s"] = scenario.duration_s;
    j["seed"] = scenario.seed;
    j["altitude_m"] = scenario.altitude_m;
    j["taut_events"] = log.taut_events;
    j["vertical_tension_N"] = log.vertical_tension_N;
    j["scenario_text"] = serialize_scenario(scenario);
    std::ofstream meta(paths.meta);
    if (!meta) throw std::runtime_error("cannot write metadata: " + paths.meta.string());
    meta << j.dump(2) << "\n";
    return paths;
}

}  // namespace swarmlift
