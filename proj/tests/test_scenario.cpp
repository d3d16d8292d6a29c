#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "trs/request.hpp"
#include "trs/scenario.hpp"

using namespace trs;
using namespace trs::testing;

namespace {

using ReqSig = std::tuple<std::string, int, NodeId, NodeId, Seconds, Seconds,
                          Seconds, Seconds, Seconds>;

ReqSig req_sig(const Request& q) {
  return {q.id,          int(q.role),  q.origin,    q.destination,
          q.announce_time, q.pref_depart, q.pref_arrive, q.sched_dev,
          q.travel_delay};
}

std::vector<ReqSig> req_sigs(const std::vector<Request>& qs) {
  std::vector<ReqSig> out;
  for (const auto& q : qs) out.push_back(req_sig(q));
  return out;
}

// Four corners of a five-mile square, connected as a two-way ring.
RoadGraph square_road() {
  std::vector<RoadNode> nodes = {
      {1, {0.0, 0.0}}, {2, {5.0, 0.0}}, {3, {5.0, 5.0}}, {4, {0.0, 5.0}}};
  std::vector<std::tuple<NodeId, NodeId, Seconds>> links;
  for (NodeId a = 1; a <= 4; ++a) {
    NodeId b = a == 4 ? 1 : a + 1;
    links.emplace_back(a, b, 300);
    links.emplace_back(b, a, 300);
  }
  return RoadGraph::from_memory(nodes, links);
}

// Hub-and-spoke: node 1 carries ten arc endpoints, every leaf two.
RoadGraph star_road() {
  std::vector<RoadNode> nodes;
  for (NodeId id = 1; id <= 6; ++id)
    nodes.push_back({id, {double(id), 0.0}});
  std::vector<std::tuple<NodeId, NodeId, Seconds>> links;
  for (NodeId leaf = 2; leaf <= 6; ++leaf) {
    links.emplace_back(1, leaf, 120);
    links.emplace_back(leaf, 1, 120);
  }
  return RoadGraph::from_memory(nodes, links);
}

}  // namespace

TEST_CASE("filter keeps origins beyond the stop buffer") {
  std::vector<Point> stops = {{0.0, 0.0}, {3.0, 0.0}};
  std::vector<Point> origins = {
      {0.5, 0.0},   // half a mile from the first stop
      {1.0, 0.0},   // one mile from either stop
      {0.0, 0.75},  // exactly on the buffer boundary
      {1.5, 0.0},   // midway, 1.5 miles from both
      {3.1, 0.0},   // a tenth of a mile from the second stop
  };
  auto keep = fmlm_filter(origins, stops, 0.75, CoordFrame::Planar);
  CHECK(keep == (std::vector<std::size_t>{1, 3}));

  // Without any stop everything needs the service.
  auto all = fmlm_filter(origins, {}, 0.75, CoordFrame::Planar);
  CHECK(all == (std::vector<std::size_t>{0, 1, 2, 3, 4}));

  // Geodetic coordinates are (lon, lat) degrees; a fiftieth of a degree of
  // latitude is over a mile, a five-hundredth is well under the buffer.
  std::vector<Point> geo_stops = {{0.0, 0.0}};
  std::vector<Point> geo_origins = {{0.0, 0.02}, {0.0, 0.002}};
  auto geo_keep = fmlm_filter(geo_origins, geo_stops, 0.75,
                              CoordFrame::Geodetic);
  CHECK(geo_keep == (std::vector<std::size_t>{0}));
}

TEST_CASE("generation is reproducible for a seed") {
  RoadGraph road = square_road();
  TravelTimeOracle oracle(road);
  std::vector<Point> stops = {{0.0, 0.0}};

  ScenarioParams params;
  params.n_trips = 120;
  params.participation_rate = 0.9;
  params.driver_rider_ratio = 1.0;
  params.seed = 99;
  params.fmlm_buffer_mi = 0.75;

  ScenarioResult a = generate_scenario(road, oracle, stops, params);
  ScenarioResult b = generate_scenario(road, oracle, stops, params);
  CHECK(a.sampled == b.sampled);
  CHECK(a.participating == b.participating);
  CHECK(a.qualified == b.qualified);
  CHECK(a.unroutable == b.unroutable);
  CHECK(a.riders == b.riders);
  CHECK(a.drivers == b.drivers);
  CHECK(req_sigs(a.requests) == req_sigs(b.requests));
  REQUIRE(!a.requests.empty());

  params.seed = 100;
  ScenarioResult c = generate_scenario(road, oracle, stops, params);
  CHECK(req_sigs(c.requests) != req_sigs(a.requests));
}

TEST_CASE("requests honour the sampled windows and roles") {
  std::mt19937_64 graph_rng(61);
  RoadGraph road = random_road_graph(graph_rng, 12);
  TravelTimeOracle oracle(road);

  ScenarioParams params;
  params.n_trips = 300;
  params.participation_rate = 1.0;
  params.driver_rider_ratio = 2.0;
  params.rider_flex = 0.8;
  params.driver_flex = 0.4;
  params.announce_back = 3600;
  params.seed = 7;
  params.window_start = 6 * 3600;
  params.window_end = 9 * 3600;
  params.depart_jitter = 1800;
  params.sched_dev = 600;

  ScenarioResult res = generate_scenario(road, oracle, {}, params);
  CHECK(res.sampled == 300);
  CHECK(res.unroutable == 0);
  CHECK(res.participating == 300);
  CHECK(res.qualified == 300);
  REQUIRE(res.requests.size() == 300);
  CHECK(res.riders + res.drivers == res.requests.size());

  // Exact role mode cuts at the ratio's driver share of the trip count.
  double share = params.driver_rider_ratio / (1.0 + params.driver_rider_ratio);
  CHECK(res.drivers ==
        std::size_t(std::llround(share * double(res.qualified))));

  std::size_t next_rider = 0, next_driver = 0;
  for (const Request& q : res.requests) {
    CAPTURE(q.id);
    CHECK(q.origin != q.destination);
    Seconds direct = oracle.travel_time(q.origin, q.destination);
    REQUIRE(is_reachable(direct));

    char buf[16];
    if (q.role == Role::Driver) {
      std::snprintf(buf, sizeof buf, "d%04zu", ++next_driver);
      CHECK(q.travel_delay ==
            Seconds(std::llround(params.driver_flex * double(direct))));
    } else {
      std::snprintf(buf, sizeof buf, "r%04zu", ++next_rider);
      CHECK(q.travel_delay ==
            Seconds(std::llround(params.rider_flex * double(direct))));
    }
    CHECK(q.id == buf);
    CHECK(q.sched_dev == params.sched_dev);

    // The base departure is the earliest departure; the arrival deadline
    // sits one maximal ride beyond it.
    TimeWindows win = derive_windows(q, oracle);
    CHECK(win.earliest_depart >= params.window_start);
    CHECK(win.earliest_depart <= params.window_end + params.depart_jitter);
    CHECK(win.latest_arrive - win.earliest_depart == direct + q.travel_delay);
    CHECK(win.max_ride == direct + q.travel_delay);
    CHECK(q.announce_time <= win.earliest_depart);
    CHECK(q.announce_time >=
          std::max<Seconds>(0, win.earliest_depart - params.announce_back));
  }
  CHECK(next_rider == res.riders);
  CHECK(next_driver == res.drivers);
}

TEST_CASE("zero flexibility pins the arrival window to the direct drive") {
  RoadGraph road = square_road();
  TravelTimeOracle oracle(road);

  ScenarioParams params;
  params.n_trips = 80;
  params.rider_flex = 0.0;
  params.driver_flex = 0.0;
  params.announce_back = 0;
  params.seed = 5;
  params.sched_dev = 300;

  ScenarioResult res = generate_scenario(road, oracle, {}, params);
  REQUIRE(!res.requests.empty());
  for (const Request& q : res.requests) {
    CAPTURE(q.id);
    Seconds direct = oracle.travel_time(q.origin, q.destination);
    CHECK(q.travel_delay == 0);
    TimeWindows win = derive_windows(q, oracle);
    CHECK(win.latest_arrive - win.earliest_depart == direct);
    // With no announce lead the request enters at its earliest departure.
    CHECK(q.announce_time == win.earliest_depart);
  }
}

TEST_CASE("the stop buffer excludes covered origins end to end") {
  RoadGraph road = square_road();
  TravelTimeOracle oracle(road);

  ScenarioParams params;
  params.n_trips = 200;
  params.seed = 3;
  params.fmlm_buffer_mi = 0.75;

  // One stop on the first corner: trips from node 1 walk to transit and
  // leave the pool, the other corners qualify.  Destinations are not
  // filtered, so node 1 still shows up as one.
  std::vector<Point> stops = {{0.0, 0.0}};
  ScenarioResult res = generate_scenario(road, oracle, stops, params);
  REQUIRE(!res.requests.empty());
  CHECK(res.qualified < res.participating);
  bool node1_dest = false;
  for (const Request& q : res.requests) {
    CHECK(q.origin != 1);
    node1_dest |= q.destination == 1;
  }
  CHECK(node1_dest);

  // Stops on every corner drain the scenario and leave a warning.
  std::vector<Point> all_stops = {
      {0.0, 0.0}, {5.0, 0.0}, {5.0, 5.0}, {0.0, 5.0}};
  ScenarioResult drained = generate_scenario(road, oracle, all_stops, params);
  CHECK(drained.qualified == 0);
  CHECK(drained.requests.empty());
  CHECK(drained.riders == 0);
  CHECK(drained.drivers == 0);
  CHECK(drained.warning.find("no trips qualify") == 0);

  // A linkless network routes nothing; every sampled trip is dropped before
  // the filter even runs.
  RoadGraph bare = RoadGraph::from_memory(
      {{1, {0.0, 0.0}}, {2, {1.0, 0.0}}}, {});
  TravelTimeOracle bare_oracle(bare);
  ScenarioResult unroutable = generate_scenario(bare, bare_oracle, {}, params);
  CHECK(unroutable.unroutable == params.n_trips);
  CHECK(unroutable.participating == 0);
  CHECK(unroutable.requests.empty());
  CHECK(!unroutable.warning.empty());
}

TEST_CASE("gravity sampling favours busy junctions") {
  RoadGraph road = star_road();
  TravelTimeOracle oracle(road);

  ScenarioParams params;
  params.n_trips = 300;
  params.seed = 11;
  params.exact_roles = false;  // per-trip role draws on this run

  auto hub_endpoints = [](const ScenarioResult& res) {
    std::size_t n = 0;
    for (const Request& q : res.requests) {
      n += (q.origin == 1) + (q.destination == 1);
    }
    return n;
  };

  params.sampling = OdSampling::Uniform;
  ScenarioResult uniform = generate_scenario(road, oracle, {}, params);
  params.sampling = OdSampling::Gravity;
  ScenarioResult gravity = generate_scenario(road, oracle, {}, params);
  REQUIRE(!uniform.requests.empty());
  REQUIRE(!gravity.requests.empty());

  // The hub holds half the arc endpoints, so gravity sends roughly half of
  // all trip ends there; uniform sampling spreads them over six nodes.
  double uniform_share =
      double(hub_endpoints(uniform)) / double(2 * uniform.requests.size());
  double gravity_share =
      double(hub_endpoints(gravity)) / double(2 * gravity.requests.size());
  CHECK(gravity_share > uniform_share + 0.15);

  // Bernoulli role draws still cover both sides of the market.
  CHECK(gravity.riders > 0);
  CHECK(gravity.drivers > 0);
  CHECK(gravity.riders + gravity.drivers == gravity.requests.size());
}

TEST_CASE("scenario parameters are validated up front") {
  RoadGraph road = square_road();
  TravelTimeOracle oracle(road);
  ScenarioParams ok;

  RoadGraph tiny = RoadGraph::from_memory({{1, {0.0, 0.0}}}, {});
  TravelTimeOracle tiny_oracle(tiny);
  CHECK_THROWS_WITH_AS(generate_scenario(tiny, tiny_oracle, {}, ok),
                       "road network too small to sample trips", InputError);

  ScenarioParams bad = ok;
  bad.participation_rate = 0.0;
  CHECK_THROWS_WITH_AS(generate_scenario(road, oracle, {}, bad),
                       "participation rate must be in (0, 1]", InputError);
  bad.participation_rate = 1.5;
  CHECK_THROWS_WITH_AS(generate_scenario(road, oracle, {}, bad),
                       "participation rate must be in (0, 1]", InputError);

  bad = ok;
  bad.driver_rider_ratio = 0.0;
  CHECK_THROWS_WITH_AS(generate_scenario(road, oracle, {}, bad),
                       "driver-rider ratio must be positive", InputError);

  bad = ok;
  bad.rider_flex = -0.1;
  CHECK_THROWS_WITH_AS(generate_scenario(road, oracle, {}, bad),
                       "time flexibility must be nonnegative", InputError);

  bad = ok;
  bad.window_start = 9 * 3600;
  bad.window_end = 6 * 3600;
  CHECK_THROWS_WITH_AS(generate_scenario(road, oracle, {}, bad),
                       "departure window ends before it starts", InputError);

  bad = ok;
  bad.depart_jitter = -1;
  CHECK_THROWS_WITH_AS(generate_scenario(road, oracle, {}, bad),
                       "scenario time parameters must be nonnegative",
                       InputError);

  // Gravity weights need at least one arc to normalize over.
  RoadGraph bare = RoadGraph::from_memory(
      {{1, {0.0, 0.0}}, {2, {1.0, 0.0}}}, {});
  TravelTimeOracle bare_oracle(bare);
  ScenarioParams grav = ok;
  grav.sampling = OdSampling::Gravity;
  CHECK_THROWS_WITH_AS(generate_scenario(bare, bare_oracle, {}, grav),
                       "gravity sampling needs at least one road link",
                       InputError);

  CHECK(parse_od_sampling("uniform") == OdSampling::Uniform);
  CHECK(parse_od_sampling("gravity") == OdSampling::Gravity);
  CHECK_THROWS_WITH_AS(parse_od_sampling("zipf"),
                       "unknown od sampling 'zipf' (uniform|gravity)",
                       InputError);
  CHECK(std::string(to_string(OdSampling::Uniform)) == "uniform");
  CHECK(std::string(to_string(OdSampling::Gravity)) == "gravity");
}
