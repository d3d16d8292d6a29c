#pragma once

#include <string>
#include <vector>

#include "trs/request.hpp"
#include "trs/road_graph.hpp"
#include "trs/transit_graph.hpp"

namespace trs {

// Generalized-cost weights per link kind.  Access and egress walking share
// one weight; waiting and walking transfers carry their own.
struct Weights {
  double access = 1.5;
  double wait = 2.0;
  double in_vehicle = 1.0;
  double walk_transfer = 2.0;

  double factor(LinkKind k) const {
    switch (k) {
      case LinkKind::Access:
      case LinkKind::Egress: return access;
      case LinkKind::InVehicle: return in_vehicle;
      case LinkKind::WaitTransfer: return wait;
      case LinkKind::WalkTransfer: return walk_transfer;
    }
    return 1.0;
  }
};

struct SearchParams {
  Weights weights;
  Seconds service_time = 120;  // car-to-transit handoff (walk + boarding)
};

enum class MatchVariant {
  FirstMile,       // drive to transit, ride to the destination
  LastMile,        // ride from the origin, drive the final leg
  PureRideshare,   // driver covers the whole trip
};

const char* to_string(MatchVariant v);
MatchVariant parse_match_variant(const std::string& s);

// Transit link ids in travel order.  Empty for pure rideshare.
using Itinerary = std::vector<std::int64_t>;

struct FeasibleMatch {
  std::string rider;
  std::string driver;
  MatchVariant variant = MatchVariant::FirstMile;
  std::int64_t handoff_node = -1;  // transit vertex where car and rider part
                                   // (first mile) or meet (last mile); -1 for
                                   // pure rideshare
  NodeId handoff_road = 0;         // road node of the handoff
  NodeId dropoff_road = 0;         // road node where the rider leaves the car
  Seconds depart_time = 0;         // driver leaves home
  Seconds pickup_time = 0;         // rider enters the car
  Seconds dropoff_time = 0;        // rider leaves the car
  Seconds arrive_time = 0;         // rider reaches the destination
  Seconds driver_arrive = 0;       // driver reaches the destination
  Seconds t_drive = 0;             // driver's driving time, excludes waiting
  Seconds t_transit = 0;           // in-vehicle transit time
  Seconds t_walk = 0;              // access + egress + walking transfers
  Seconds t_wait = 0;              // pure waiting links
  int n_transfers = 0;             // walking transfers along the itinerary
  Seconds t_vhrs = 0;              // vehicle-time saved vs. two solo drives
  double gen_cost = 0.0;           // weighted itinerary cost
  Itinerary itinerary;
};

// Search labels, exposed for inspection by tests and the validator.
struct LabelSet {
  std::vector<double> gc;
  std::vector<Seconds> time;
  std::vector<std::int64_t> pred;  // link id toward the seed, -1 at the seed
  std::vector<char> reached;
  std::int64_t seed = -1;
};

struct ValidationResult {
  bool ok = true;
  std::string problem;
};

// Potential-match search over one prebuilt transit graph.  The object only
// borrows the graph, road network and oracle; keep them alive alongside it.
// All methods are const and safe to call from several threads at once.
class PotentialMatchSearch {
 public:
  PotentialMatchSearch(const TransitGraph& tg, const RoadGraph& road,
                       const TravelTimeOracle& oracle, SearchParams params);

  // First-mile search for one rider: a backward generalized-cost scan from
  // the rider's destination anchor.  The time label of a vertex is the
  // latest clock at which the rider can still leave it and make the latest
  // arrival; a vertex is kept only when even the fastest possible drive from
  // the rider's origin gets there strictly before that deadline.  Every
  // labelled vertex j is then tested against every driver: pickup inside the
  // rider's departure window, car arrival (plus handoff) no later than j's
  // deadline, and the driver's own arrival deadline.  Matches carry the
  // cost-optimal itinerary from j.  Returns matches sorted by (driver id,
  // handoff vertex).  An absent destination anchor yields no matches.
  std::vector<FeasibleMatch> rider_driver_potential_match(
      const Participant& rider, const std::vector<Participant>& drivers,
      LabelSet* labels_out = nullptr) const;

  // Last-mile mirror: a forward scan from the rider's origin anchor where
  // the time label is the earliest arrival at a vertex.  A driver matches at
  // vertex j when they can reach its road node by the rider's arrival and
  // the final drive meets both arrival deadlines.
  std::vector<FeasibleMatch> last_mile_potential_match(
      const Participant& rider, const std::vector<Participant>& drivers,
      LabelSet* labels_out = nullptr) const;

  // Door-to-door matches on the road network alone, one per (rider, driver)
  // pair whose chained drive origin(d) -> origin(r) -> dest(r) -> dest(d)
  // meets all four window checks.
  std::vector<FeasibleMatch> standalone_rs_match(
      const std::vector<Participant>& riders,
      const std::vector<Participant>& drivers) const;

  // Recomputes every quantity of a match from its identifiers and itinerary.
  // Used by the emitters; exposed so tests can cross-check stored metrics.
  FeasibleMatch make_match(const Participant& rider, const Participant& driver,
                           MatchVariant variant, std::int64_t handoff_node,
                           const Itinerary& itinerary) const;

  // Checks the full feasible-match contract: time-window conditions for both
  // parties, itinerary integrity, metric consistency, and (when
  // check_optimality) that the itinerary's generalized cost equals the label
  // a fresh search assigns to the handoff vertex.
  ValidationResult validate(const FeasibleMatch& m, const Participant& rider,
                            const Participant& driver,
                            bool check_optimality = true) const;

  const SearchParams& params() const { return params_; }
  const TransitGraph& transit() const { return tg_; }

 private:
  struct ScanResult;
  ScanResult scan(const Participant& rider, bool forward) const;
  Itinerary chain_from(const LabelSet& ls, std::int64_t node,
                       bool forward) const;

  const TransitGraph& tg_;
  const RoadGraph& road_;
  const TravelTimeOracle& oracle_;
  SearchParams params_;
  std::vector<std::uint32_t> handoff_idx_;  // transit node -> road dense index
};

// Delimited match table with a provenance comment on top.  `selected` flags
// (one per match) mark the rows the optimizer picked; dropoff_node is the
// road node where the rider leaves the car.  load_matches restores every
// field verbatim, so save followed by load is the identity.
struct MatchTable {
  std::vector<FeasibleMatch> matches;
  std::vector<char> selected;
};

void save_matches(const MatchTable& table, const std::string& path,
                  const std::string& provenance);
MatchTable load_matches(const std::string& path);

}  // namespace trs
