#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trs/geo.hpp"
#include "trs/request.hpp"
#include "trs/road_graph.hpp"

namespace trs {

enum class OdSampling {
  Uniform,  // every road node equally likely
  Gravity,  // node weight = in-degree + out-degree
};

const char* to_string(OdSampling s);
OdSampling parse_od_sampling(const std::string& s);

struct ScenarioParams {
  std::size_t n_trips = 200;          // trips sampled before any filter
  double participation_rate = 1.0;    // fraction of trips that opt in, (0,1]
  double driver_rider_ratio = 1.0;    // drivers per rider, > 0
  double rider_flex = 0.8;            // ride-time allowance as a fraction of
  double driver_flex = 0.4;           // the direct drive
  Seconds announce_back = 3600;       // announce up to this before departure
  std::uint64_t seed = 1;
  double fmlm_buffer_mi = 0.75;       // keep trips with no stop this close
  OdSampling sampling = OdSampling::Uniform;
  Seconds window_start = 6 * 3600;    // base departures drawn in this range
  Seconds window_end = 9 * 3600;
  Seconds depart_jitter = 1800;       // spread added onto the base departure
  Seconds sched_dev = 600;            // per-request schedule deviation
  bool exact_roles = true;            // partition exactly by ratio vs. a
                                      // per-trip Bernoulli draw
  CoordFrame frame = CoordFrame::Planar;
};

struct ScenarioResult {
  std::vector<Request> requests;  // riders and drivers, trip order
  std::size_t sampled = 0;        // trips drawn
  std::size_t qualified = 0;      // surviving the stop-buffer filter
  std::size_t participating = 0;  // surviving the participation draw
  std::size_t unroutable = 0;     // trips skipped: no connected pair found
  std::size_t riders = 0;
  std::size_t drivers = 0;
  std::string warning;            // nonempty when the scenario came out empty
};

// Indices of origins whose nearest stop is farther than `buffer_mi` (the
// first/last-mile access condition).  An empty stop set qualifies everything.
std::vector<std::size_t> fmlm_filter(const std::vector<Point>& origins,
                                     const std::vector<Point>& stops,
                                     double buffer_mi, CoordFrame frame);

// Draws a synthetic request set over the road network.  Pipeline per trip:
// origin/destination sampling (redrawn while equal or disconnected), a base
// departure uniform in the window plus a uniform jitter, a participation
// draw, the stop-buffer filter, then role assignment by the driver-rider
// ratio and window construction with the role's flexibility.  The generator
// consumes random draws in that fixed order, so a seed pins the output file
// byte for byte.
ScenarioResult generate_scenario(const RoadGraph& road,
                                 const TravelTimeOracle& oracle,
                                 const std::vector<Point>& stops,
                                 const ScenarioParams& params);

}  // namespace trs
