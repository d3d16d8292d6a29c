#pragma once

#include <string>
#include <vector>

#include "trs/road_graph.hpp"
#include "trs/types.hpp"

namespace trs {

// One trip announcement.  Preferred times are what the participant asked
// for; the tolerances expand them into the hard windows below.
struct Request {
  std::string id;
  Role role = Role::Rider;
  NodeId origin = 0;
  NodeId destination = 0;
  Seconds announce_time = 0;   // when the request enters the system
  Seconds pref_depart = 0;     // preferred departure from origin
  Seconds pref_arrive = 0;     // preferred arrival at destination
  Seconds sched_dev = 0;       // tolerated deviation around both preferences
  Seconds travel_delay = 0;    // tolerated ride-time extension
};

// Hard feasibility windows derived from a request.  earliest_arrive is kept
// for completeness even though the matching conditions never read it.
struct TimeWindows {
  Seconds earliest_depart = 0;
  Seconds latest_depart = 0;
  Seconds earliest_arrive = 0;
  Seconds latest_arrive = 0;
  Seconds max_ride = 0;  // direct travel time plus tolerated delay
};

struct Participant {
  Request req;
  TimeWindows win;
};

// Expands preferences into windows:
//   earliest_depart = pref_depart - sched_dev
//   latest_depart   = pref_depart + sched_dev
//   earliest_arrive = pref_arrive - sched_dev
//   latest_arrive   = pref_arrive + sched_dev
//   max_ride        = t(origin, destination) + travel_delay
// Throws InputError("disconnected request ...") when the destination is not
// reachable from the origin, since max_ride would be undefined.
TimeWindows derive_windows(const Request& r, const TravelTimeOracle& oracle);

// Loads a request table (columns: id, role, origin_node, dest_node,
// announce_time, pref_depart, pref_arrive, sched_dev, travel_delay) and
// checks the per-row invariants: nonnegative tolerances, origin differing
// from destination, announce_time no later than the earliest departure, and
// ids unique.  Violations raise InputError naming the row.
std::vector<Request> load_requests(const std::string& path);

void save_requests(const std::vector<Request>& reqs, const std::string& path,
                   const std::string& provenance);

// Validation shared by the loader and the scenario generator.  Returns an
// explanation for the failed invariant, or an empty string when fine.
std::string request_problem(const Request& r);

}  // namespace trs
