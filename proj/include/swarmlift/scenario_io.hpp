#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "swarmlift/sim.hpp"

namespace swarmlift {

/// Thrown on malformed scenario text; the message carries the line number.
struct ScenarioParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses flat key = value scenario text (# starts a comment). Unknown keys
/// are rejected so typos fail loudly. See docs/scenario.md for the schema.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& file);

/// Writes a scenario back out as key = value text with explicit agent
/// positions; parse_scenario(serialize_scenario(s)) reproduces s.
std::string serialize_scenario(const Scenario& scenario);
void save_scenario(const Scenario& scenario, const std::filesystem::path& file);

/// Writes `t,agent,x,y,vx,vy,cmd_vx,cmd_vy` rows, one per agent per step,
/// every value printed with enough digits to round-trip exactly.
void write_csv(const TrajectoryLog& log, const std::filesystem::path& file);

/// Reads a CSV written by write_csv. The log name is taken from the stem.
TrajectoryLog read_csv(const std::filesystem::path& file);

/// Everything write_run put on disk for one run.
struct RunPaths {
    std::filesystem::path csv;
    std::filesystem::path meta;
};

/// Writes <dir>/<log.name>.csv and a JSON sidecar <dir>/<log.name>.meta.json
/// echoing the scenario plus run facts (taut events, tension share).
RunPaths write_run(const TrajectoryLog& log, const Scenario& scenario,
                   const std::filesystem::path& dir);

}  // namespace swarmlift
