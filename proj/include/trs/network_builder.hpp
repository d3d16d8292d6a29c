#pragma once

#include <array>
#include <string>
#include <vector>

#include "trs/gtfs.hpp"
#include "trs/road_graph.hpp"
#include "trs/transit_graph.hpp"

namespace trs {

struct BuildParams {
  double max_access_walk_mi = 0.75;    // anchor-to-stop walking reach
  double max_transfer_walk_mi = 0.25;  // stop-to-stop transfer reach
  Seconds schedule_slack = 600;        // longest tolerated transfer wait
  double walk_speed_mph = 3.0;
  Seconds service_time = 120;          // mode-change time, folded into access
  int service_date = 0;                // YYYYMMDD; 0 keeps every trip
};

// Road nodes that participate as trip endpoints.  Origin anchors get access
// links (walk onto the system), destination anchors get egress links (walk
// off it).  A node may appear in both lists; it becomes a single vertex.
struct AnchorSet {
  std::vector<NodeId> origins;
  std::vector<NodeId> destinations;
};

struct BuildReport {
  std::size_t stop_time_nodes = 0;
  std::size_t anchor_nodes = 0;
  std::size_t trips_used = 0;
  std::size_t trips_skipped = 0;  // inactive service or fewer than two stops
  std::array<std::size_t, kLinkKindCount> links{};
  double wall_seconds = 0.0;

  std::size_t total_links() const;
  std::string summary() const;
};

// Expands a GTFS feed into the time-expanded transit graph:
//   - one vertex per scheduled stop visit of every active trip, stamped with
//     the departure time and the 1-based position along the trip;
//   - in-vehicle links between consecutive visits of a trip;
//   - transfer links between visits of different routes when the connection
//     is walkable within `max_transfer_walk_mi` and the wait after walking
//     falls in [0, schedule_slack]; zero walking distance makes it a pure
//     waiting link.  Transfers never leave a trip at its first visit and
//     never enter one at its last;
//   - access links from origin anchors (walk + service_time) and egress
//     links to destination anchors (walk) within `max_access_walk_mi`;
//   - every vertex mapped to its nearest road node, ties toward the smaller
//     road id.
// Node order (trips sorted by id, then anchors sorted by road id) and link
// order are deterministic, so rebuilding the same inputs reproduces the
// graph byte for byte.
TransitGraph build_network(const GtfsFeed& feed, const RoadGraph& road,
                           const BuildParams& params, const AnchorSet& anchors,
                           CoordFrame frame, BuildReport* report = nullptr);

}  // namespace trs
