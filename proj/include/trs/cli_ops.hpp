#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "trs/config.hpp"

namespace trs {

// Command bodies behind the executable, separated so tests can drive them
// in-process.  Each returns the process exit code (0 on success) and throws
// InputError / InvariantError for the 1 / 2 exit paths, which the
// executable's main translates.  `out` receives the human-readable report;
// machine-readable files land under cfg.paths.out_dir.

// Expands the GTFS feed into the transit graph anchored at the request
// endpoints, saves it to cfg.paths.network, and prints the link census.
int cmd_build_network(const RunConfig& cfg, std::ostream& out);

// Static pipeline: feasibility per mode, assignment, integrality check,
// match/assignment/summary files.
int cmd_match(const RunConfig& cfg, std::ostream& out);

// Rolling-horizon run: per-step report rows plus the finalized match log.
int cmd_simulate(const RunConfig& cfg, std::ostream& out);

// Repeats the static pipeline across one scenario dimension
// (rider_flex|driver_flex|participation|ratio), both objectives per value.
int cmd_sweep(const RunConfig& cfg, const std::string& dimension,
              const std::vector<double>& values, std::ostream& out);

// Replays the validator over a match table; nonzero when any row fails.
int cmd_validate(const RunConfig& cfg, std::ostream& out);

}  // namespace trs
