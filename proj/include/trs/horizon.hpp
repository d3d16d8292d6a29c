#pragma once

#include <string>
#include <vector>

#include "trs/feasibility.hpp"
#include "trs/matching.hpp"

namespace trs {

struct SimConfig {
  Seconds step = 300;              // wall-clock advance per round
  Seconds lead = 300;              // commitment lead before a deadline
  Seconds horizon_start = 0;
  Seconds horizon_end = 24 * 3600;
  Objective objective = Objective::MaxSavings;
  MatchVariant transit_variant = MatchVariant::FirstMile;
  bool include_pure_rideshare = false;  // union in door-to-door matches
  bool record_pairs = false;            // keep per-step evaluated pair lists
};

struct StepReport {
  Seconds clock = 0;
  std::size_t admitted_riders = 0;
  std::size_t admitted_drivers = 0;
  std::size_t pairs_evaluated = 0;
  std::size_t matches_added = 0;
  std::size_t open_matches = 0;     // pool size after this round's additions
  std::size_t optimal_matches = 0;  // size of the round's optimal assignment
  std::size_t finalized = 0;
  std::size_t expired = 0;
  std::vector<std::pair<std::string, std::string>> evaluated_pairs;
};

struct SimResult {
  std::vector<StepReport> steps;
  std::vector<FeasibleMatch> finalized;   // in finalization order
  std::vector<Seconds> finalized_clock;   // sim clock at each finalization
  std::vector<std::string> expired;       // unmatched request ids
  std::size_t total_riders = 0;
  std::size_t total_drivers = 0;
  std::int64_t total_savings = 0;         // saved vehicle seconds, finalized
  double matching_rate = 0.0;  // finalized over the mean participant count
  double wall_seconds = 0.0;
};

// Rolling-horizon loop over an announcement-ordered request stream.  Each
// round admits the announcements of the next step window, searches only the
// new-against-existing pair blocks (a pair is never searched twice), pools
// the feasible matches, re-solves the assignment on the pool, commits the
// optimal matches whose rider or driver is within `lead` of their departure
// deadline at the end of the round, and drops unmatched requests whose
// deadline falls inside the same cutoff.  Committed and dropped participants
// leave the pool together with every match touching them.
class RollingHorizonSim {
 public:
  RollingHorizonSim(const PotentialMatchSearch& search, SimConfig cfg)
      : search_(search), cfg_(cfg) {}

  // Requests need not be sorted; the stream is ordered by announce time
  // internally (ties keep input order).  Participants whose windows cannot
  // be derived raise InputError.
  SimResult run(const std::vector<Participant>& requests) const;

 private:
  const PotentialMatchSearch& search_;
  SimConfig cfg_;
};

// Runs the per-rider potential-match search for a block of riders against a
// fixed driver set, fanning riders out over `threads` workers (0 = hardware
// concurrency, 1 = serial).  Results are concatenated in rider order, so the
// output is identical regardless of thread count.
std::vector<FeasibleMatch> search_rider_block(
    const PotentialMatchSearch& search, const std::vector<Participant>& riders,
    const std::vector<Participant>& drivers, MatchVariant variant,
    unsigned threads);

}  // namespace trs
