#pragma once

#include "trs/request.hpp"
#include "trs/road_graph.hpp"

namespace trs {

// Space-time reachability predicates for one participant.  All of them treat
// an unreachable travel time as "not inside" rather than as an error.

// Node n is reachable by time tau when departing no earlier than the
// participant's earliest departure, and tau has not passed the latest
// arrival.
bool in_forward_cone(const Participant& p, NodeId n, Seconds tau,
                     const TravelTimeOracle& oracle);

// From node n at time tau the destination is still reachable by the latest
// arrival, and tau is not before the earliest departure.
bool in_backward_cone(const Participant& p, NodeId n, Seconds tau,
                      const TravelTimeOracle& oracle);

// Intersection of the two cones at time tau.
bool in_stp(const Participant& p, NodeId n, Seconds tau,
            const TravelTimeOracle& oracle);

// Time-free projection: a detour through n fits the latest-arrival budget.
// Nonempty exactly when some tau puts n inside the space-time prism.
bool in_ppa(const Participant& p, NodeId n, const TravelTimeOracle& oracle);

}  // namespace trs
