#pragma once

// In-memory copies of the bundled example networks plus small random-input
// generators shared between the unit suites and the acceptance binary.  The
// numbers here are frozen; the data files under tests/data mirror them.

#include <algorithm>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "trs/request.hpp"
#include "trs/road_graph.hpp"
#include "trs/transit_graph.hpp"

namespace trs::testing {

inline std::string data_path(const std::string& rel) {
#ifdef TRS_TEST_DATA
  return std::string(TRS_TEST_DATA) + "/" + rel;
#else
  return "tests/data/" + rel;
#endif
}

// Seven road nodes: 1 driver origin, 2 rider origin, 3 and 4 candidate
// drop-off corners, 5 driver destination, 6 rider destination (no outgoing
// arcs), 7 outlying transfer-station corner.
inline RoadGraph parkride_road() {
  std::vector<RoadNode> nodes;
  for (NodeId id = 1; id <= 7; ++id) nodes.push_back({id, {double(id), 0.0}});
  std::vector<std::tuple<NodeId, NodeId, Seconds>> links = {
      {1, 2, 600}, {2, 5, 360}, {2, 3, 300}, {2, 4, 360}, {3, 5, 300},
      {4, 5, 420}, {3, 7, 540}, {7, 5, 720}, {7, 6, 180},
  };
  return RoadGraph::from_memory(nodes, links);
}

// Twenty transit vertices: anchors 0..2 mirror road nodes 3, 4 and 6; stop
// vertices 3..7 are s1..s5; 8..19 are boarding/alighting pairs of six
// scheduled runs.  Three alternative runs leave s1; the slowest of them is
// never boardable inside the rider's window.
inline TransitGraph parkride_transit() {
  auto mk = [](std::int64_t id, const char* stop, const char* trip,
               const char* route, int seq, NodeId road, bool anchor) {
    TransitNode n;
    n.id = id;
    n.stop = stop;
    n.trip = trip;
    n.route = route;
    n.seq = seq;
    n.pos = {double(id), 1.0};
    n.road_node = road;
    n.anchor = anchor;
    return n;
  };
  std::vector<TransitNode> nodes = {
      mk(0, "", "", "", 0, 3, true),       mk(1, "", "", "", 0, 4, true),
      mk(2, "", "", "", 0, 6, true),       mk(3, "s1", "", "", 0, 3, false),
      mk(4, "s2", "", "", 0, 4, false),    mk(5, "s3", "", "", 0, 7, false),
      mk(6, "s4", "", "", 0, 6, false),    mk(7, "s5", "", "", 0, 6, false),
      mk(8, "s1", "t1", "L1", 1, 3, false),  mk(9, "s3", "t1", "L1", 2, 7, false),
      mk(10, "s1", "t2", "L2", 1, 3, false), mk(11, "s4", "t2", "L2", 2, 6, false),
      mk(12, "s1", "t3", "L3", 1, 3, false), mk(13, "s4", "t3", "L3", 2, 6, false),
      mk(14, "s2", "t4", "L4", 1, 4, false), mk(15, "s5", "t4", "L4", 2, 6, false),
      mk(16, "s2", "t5", "L5", 1, 4, false), mk(17, "s5", "t5", "L5", 2, 6, false),
      mk(18, "s3", "t6", "L6", 1, 7, false), mk(19, "s4", "t6", "L6", 2, 6, false),
  };
  auto lk = [](std::int64_t id, std::int64_t from, std::int64_t to,
               LinkKind kind, Seconds t) {
    return TransitLink{id, from, to, kind, t};
  };
  std::vector<TransitLink> links = {
      lk(0, 0, 3, LinkKind::Access, 120),
      lk(1, 1, 4, LinkKind::Access, 120),
      lk(2, 3, 8, LinkKind::WaitTransfer, 240),
      lk(3, 3, 10, LinkKind::WaitTransfer, 120),
      lk(4, 3, 12, LinkKind::WaitTransfer, 120),
      lk(5, 4, 14, LinkKind::WaitTransfer, 120),
      lk(6, 4, 16, LinkKind::WaitTransfer, 180),
      lk(7, 8, 9, LinkKind::InVehicle, 180),
      lk(8, 10, 11, LinkKind::InVehicle, 720),
      lk(9, 12, 13, LinkKind::InVehicle, 900),
      lk(10, 14, 15, LinkKind::InVehicle, 720),
      lk(11, 16, 17, LinkKind::InVehicle, 840),
      lk(12, 18, 19, LinkKind::InVehicle, 240),
      lk(13, 9, 5, LinkKind::WalkTransfer, 120),
      lk(14, 5, 18, LinkKind::WaitTransfer, 60),
      lk(15, 19, 6, LinkKind::Egress, 120),
      lk(16, 11, 6, LinkKind::Egress, 240),
      lk(17, 13, 6, LinkKind::Egress, 420),
      lk(18, 15, 7, LinkKind::Egress, 180),
      lk(19, 17, 7, LinkKind::Egress, 240),
      lk(20, 6, 2, LinkKind::Egress, 180),
      lk(21, 7, 2, LinkKind::Egress, 180),
  };
  return TransitGraph(std::move(nodes), std::move(links), CoordFrame::Planar);
}

// Driver departs between 0 and 600 and must arrive by 1200; the rider may be
// picked up between 600 and 1200 and must arrive by 2400.
inline Request parkride_driver() {
  Request d;
  d.id = "d1";
  d.role = Role::Driver;
  d.origin = 1;
  d.destination = 5;
  d.pref_depart = 300;
  d.pref_arrive = 900;
  d.sched_dev = 300;
  d.travel_delay = 900;
  return d;
}

inline Request parkride_rider() {
  Request r;
  r.id = "r1";
  r.role = Role::Rider;
  r.origin = 2;
  r.destination = 6;
  r.pref_depart = 900;
  r.pref_arrive = 2100;
  r.sched_dev = 300;
  r.travel_delay = 1500;
  return r;
}

// Five road nodes: 1 driver origin, 2 rider origin, 3 hand-off corner,
// 4 driver destination, 5 rider destination.
inline RoadGraph handoff_road() {
  std::vector<RoadNode> nodes;
  for (NodeId id = 1; id <= 5; ++id) nodes.push_back({id, {double(id), 0.0}});
  std::vector<std::tuple<NodeId, NodeId, Seconds>> links = {
      {1, 2, 120}, {2, 3, 120}, {3, 4, 180},
      {1, 4, 300}, {2, 5, 360}, {5, 4, 120},
  };
  return RoadGraph::from_memory(nodes, links);
}

// One scheduled run from the hand-off corner (road 3) to the rider's
// destination side (road 5); anchors at both ends.
inline TransitGraph handoff_transit() {
  std::vector<TransitNode> nodes(6);
  const NodeId roads[6] = {3, 5, 3, 3, 5, 5};
  const char* stops[6] = {"", "", "sA", "sA", "sB", "sB"};
  const char* trips[6] = {"", "", "", "tA", "tA", ""};
  for (std::int64_t i = 0; i < 6; ++i) {
    nodes[i].id = i;
    nodes[i].stop = stops[i];
    nodes[i].trip = trips[i];
    nodes[i].route = trips[i][0] ? "LA" : "";
    nodes[i].seq = (i == 3) ? 1 : (i == 4) ? 2 : 0;
    nodes[i].pos = {double(i), 0.0};
    nodes[i].road_node = roads[i];
    nodes[i].anchor = i < 2;
  }
  std::vector<TransitLink> links = {
      {0, 0, 2, LinkKind::Access, 60},
      {1, 2, 3, LinkKind::WaitTransfer, 60},
      {2, 3, 4, LinkKind::InVehicle, 480},
      {3, 4, 5, LinkKind::Egress, 60},
      {4, 5, 1, LinkKind::Egress, 60},
  };
  return TransitGraph(std::move(nodes), std::move(links), CoordFrame::Planar);
}

inline Request handoff_driver() {
  Request d;
  d.id = "d1";
  d.role = Role::Driver;
  d.origin = 1;
  d.destination = 4;
  d.pref_depart = 300;
  d.pref_arrive = 900;
  d.sched_dev = 300;
  d.travel_delay = 600;
  return d;
}

inline Request handoff_rider() {
  Request r;
  r.id = "r1";
  r.role = Role::Rider;
  r.origin = 2;
  r.destination = 5;
  r.pref_depart = 420;
  r.pref_arrive = 900;
  r.sched_dev = 300;
  r.travel_delay = 600;
  return r;
}

// Arc-reversed copy of the park-and-ride road network.  Travel times keep
// their values, so t_rev(a, b) equals the original t(b, a).
inline RoadGraph parkride_mirror_road() {
  std::vector<RoadNode> nodes;
  for (NodeId id = 1; id <= 7; ++id) nodes.push_back({id, {double(id), 0.0}});
  std::vector<std::tuple<NodeId, NodeId, Seconds>> links = {
      {2, 1, 600}, {5, 2, 360}, {3, 2, 300}, {4, 2, 360}, {5, 3, 300},
      {5, 4, 420}, {7, 3, 540}, {5, 7, 720}, {6, 7, 180},
  };
  return RoadGraph::from_memory(nodes, links);
}

// Arc-reversed copy of the park-and-ride transit network: identical vertex
// set, every link flipped, access and egress swapping roles.  With equal
// access and egress weights the backward labels of the original instance
// turn into forward labels here, time values reflected around t = 3000.
inline TransitGraph parkride_mirror_transit() {
  TransitGraph orig = parkride_transit();
  std::vector<TransitNode> nodes;
  for (std::int64_t i = 0; i < std::int64_t(orig.node_count()); ++i)
    nodes.push_back(orig.node(i));
  std::vector<TransitLink> links;
  for (std::int64_t k = 0; k < std::int64_t(orig.link_count()); ++k) {
    TransitLink l = orig.link(k);
    std::swap(l.from, l.to);
    if (l.kind == LinkKind::Access) l.kind = LinkKind::Egress;
    else if (l.kind == LinkKind::Egress) l.kind = LinkKind::Access;
    links.push_back(l);
  }
  return TransitGraph(std::move(nodes), std::move(links), orig.frame());
}

inline Request parkride_mirror_rider() {
  Request r;
  r.id = "r1m";
  r.role = Role::Rider;
  r.origin = 6;
  r.destination = 2;
  r.pref_depart = 900;
  r.pref_arrive = 2100;
  r.sched_dev = 300;
  r.travel_delay = 1500;
  return r;
}

inline Request parkride_mirror_driver() {
  Request d;
  d.id = "d1m";
  d.role = Role::Driver;
  d.origin = 5;
  d.destination = 1;
  d.pref_depart = 2100;
  d.pref_arrive = 2700;
  d.sched_dev = 300;
  d.travel_delay = 900;
  return d;
}

// Random transit network whose links all point from higher vertex ids to
// lower ones, so vertex order is a reverse topological order and every
// vertex has some path to vertex 0.  The first `n_anchors` vertices anchor
// distinct road nodes.
inline TransitGraph random_transit_dag(std::mt19937_64& rng, const RoadGraph& road,
                                int n_anchors, int max_nodes) {
  int nr = int(road.node_count());
  std::vector<NodeId> roads;
  for (int i = 0; i < nr; ++i) roads.push_back(road.id_of(std::uint32_t(i)));
  std::shuffle(roads.begin(), roads.end(), rng);

  int n = std::max(n_anchors + 1, 2 + int(rng() % std::uint64_t(max_nodes - 1)));
  std::vector<TransitNode> nodes;
  for (int i = 0; i < n; ++i) {
    TransitNode v;
    v.id = i;
    v.stop = i < n_anchors ? "" : "n" + std::to_string(i);
    v.pos = {double(i), 0.0};
    v.road_node = i < n_anchors ? roads[std::size_t(i)]
                                : roads[rng() % std::uint64_t(nr)];
    v.anchor = i < n_anchors;
    nodes.push_back(v);
  }
  const LinkKind kinds[] = {LinkKind::Access, LinkKind::Egress,
                            LinkKind::InVehicle, LinkKind::WaitTransfer,
                            LinkKind::WalkTransfer};
  std::vector<TransitLink> links;
  for (int j = 1; j < n; ++j) {
    int deg = 1 + int(rng() % 2);
    for (int e = 0; e < deg; ++e) {
      TransitLink l;
      l.id = std::int64_t(links.size());
      l.from = j;
      l.to = std::int64_t(rng() % std::uint64_t(j));
      l.kind = kinds[rng() % 5];
      l.traverse_time = Seconds(10 + rng() % 591);
      links.push_back(l);
    }
  }
  return TransitGraph(std::move(nodes), std::move(links), CoordFrame::Planar);
}

// Connected random digraph: a random spanning arborescence in both
// directions plus extra arcs, integer times in [lo, hi].
inline RoadGraph random_road_graph(std::mt19937_64& rng, int max_nodes,
                                   Seconds lo = 10, Seconds hi = 600) {
  int n = 2 + int(rng() % std::uint64_t(max_nodes - 1));
  std::vector<RoadNode> nodes;
  for (int i = 0; i < n; ++i)
    nodes.push_back({NodeId(i + 1), {double(i), double(i % 5)}});
  auto tt = [&] { return Seconds(lo + Seconds(rng() % std::uint64_t(hi - lo + 1))); };
  std::vector<std::tuple<NodeId, NodeId, Seconds>> links;
  for (int i = 2; i <= n; ++i) {
    NodeId parent = 1 + NodeId(rng() % std::uint64_t(i - 1));
    links.emplace_back(parent, i, tt());
    links.emplace_back(i, parent, tt());
  }
  int extra = int(rng() % std::uint64_t(2 * n + 1));
  for (int e = 0; e < extra; ++e) {
    NodeId a = 1 + NodeId(rng() % std::uint64_t(n));
    NodeId b = 1 + NodeId(rng() % std::uint64_t(n));
    if (a != b) links.emplace_back(a, b, tt());
  }
  return RoadGraph::from_memory(nodes, links);
}

}  // namespace trs::testing
