#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trs/feasibility.hpp"
#include "trs/horizon.hpp"
#include "trs/network_builder.hpp"
#include "trs/scenario.hpp"

namespace trs {

enum class RunMode {
  StaticTrs,       // transit-based matches only
  StaticRs,        // door-to-door rideshare only
  StaticCombined,  // union of both match sets
  Dynamic,         // rolling-horizon simulation
};

const char* to_string(RunMode m);
RunMode parse_run_mode(const std::string& s);

struct PathsConfig {
  std::string road_nodes;
  std::string road_links;
  std::string gtfs;      // GTFS directory for build-network
  std::string network;   // serialized transit graph
  std::string requests;  // request table; empty = generate a scenario
  std::string matches;   // match table for the validate command
  std::string out_dir = "out";
};

struct MatchConfig {
  Objective objective = Objective::MaxSavings;
  RunMode mode = RunMode::StaticTrs;
  MatchVariant variant = MatchVariant::FirstMile;
  unsigned threads = 0;      // 0 = hardware concurrency
  bool include_rideshare = false;  // union RS edges into dynamic runs
  bool multi_label = false;  // reserved; accepted only as false
};

// Whole-run configuration: one sectioned key=value file plus overrides.
// Defaults here are the defaults of every command.
struct RunConfig {
  PathsConfig paths;
  BuildParams build;
  CoordFrame frame = CoordFrame::Planar;  // walking-distance metric
  Weights weights;
  MatchConfig match;
  SimConfig sim;
  ScenarioParams scenario;
};

// Parses a config file.  Unknown sections or keys, malformed lines and bad
// values raise InputError with file and line.  `overrides` entries have the
// form "section.key=value" and are applied after the file in order.
RunConfig load_config(const std::string& path,
                      const std::vector<std::string>& overrides);
RunConfig config_from_overrides(const std::vector<std::string>& overrides);

// Applies one "section.key=value" assignment.
void apply_override(RunConfig& cfg, const std::string& assignment,
                    const std::string& context);

// Canonical flat dump (sorted section.key = value lines).  Two configs with
// equal dumps behave identically; the hash of the dump goes into every
// output file's provenance header.
std::string canonical_config(const RunConfig& cfg);
std::string config_hash(const RunConfig& cfg);

// Provenance line written at the top of generated files: engine name and
// version, config hash, scenario seed.
std::string provenance_line(const RunConfig& cfg);

}  // namespace trs
