#include "trs/network_builder.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace trs {

std::size_t BuildReport::total_links() const {
  std::size_t n = 0;
  for (auto c : links) n += c;
  return n;
}

std::string BuildReport::summary() const {
  std::ostringstream out;
  out << "stop-time nodes      " << stop_time_nodes << "\n"
      << "anchor nodes         " << anchor_nodes << "\n"
      << "trips used/skipped   " << trips_used << "/" << trips_skipped << "\n"
      << "in-vehicle links     " << links[std::size_t(LinkKind::InVehicle)] << "\n"
      << "waiting transfers    " << links[std::size_t(LinkKind::WaitTransfer)] << "\n"
      << "walking transfers    " << links[std::size_t(LinkKind::WalkTransfer)] << "\n"
      << "access links         " << links[std::size_t(LinkKind::Access)] << "\n"
      << "egress links         " << links[std::size_t(LinkKind::Egress)] << "\n"
      << "total links          " << total_links() << "\n"
      << "build seconds        " << wall_seconds << "\n";
  return out.str();
}

namespace {

void check_params(const BuildParams& p) {
  if (p.max_access_walk_mi <= 0 || p.max_transfer_walk_mi <= 0 ||
      p.walk_speed_mph <= 0)
    throw InputError("network build: walk limits and speed must be positive");
  if (p.schedule_slack < 0 || p.service_time < 0)
    throw InputError("network build: times must be nonnegative");
}

}  // namespace

TransitGraph build_network(const GtfsFeed& feed, const RoadGraph& road,
                           const BuildParams& params, const AnchorSet& anchors,
                           CoordFrame frame, BuildReport* report) {
  check_params(params);
  if (road.node_count() == 0)
    throw InputError("network build: empty road graph");
  auto t0 = std::chrono::steady_clock::now();
  BuildReport rep;

  // Active trips, ordered by id for reproducible vertex numbering.
  std::vector<std::string> active = feed.active_trips(params.service_date);
  std::sort(active.begin(), active.end());
  rep.trips_skipped = feed.trips.size() - active.size();
  std::unordered_map<std::string, const GtfsTrip*> trip_by_id;
  for (const auto& t : feed.trips) trip_by_id.emplace(t.id, &t);
  std::unordered_map<std::string, std::vector<const GtfsStopTime*>> times_by_trip;
  for (const auto& st : feed.stop_times)
    times_by_trip[st.trip_id].push_back(&st);  // already (trip, seq) sorted

  std::unordered_map<std::string, const GtfsStop*> stop_by_id;
  for (const auto& s : feed.stops) stop_by_id.emplace(s.id, &s);

  // Road-node index for the handoff map.
  std::vector<Point> road_pts;
  std::vector<std::int64_t> road_ids;
  road_pts.reserve(road.node_count());
  for (const auto& n : road.nodes()) {
    road_pts.push_back(n.pos);
    road_ids.push_back(n.id);
  }
  SpatialGrid road_grid(road_pts, road_ids, frame);

  std::vector<TransitNode> nodes;
  // Per trip: [first_node_id, count]; per stop: its node ids sorted by time.
  struct TripSpan {
    std::int64_t first = 0;
    int count = 0;
  };
  std::unordered_map<std::string, TripSpan> spans;
  std::unordered_map<std::string, std::vector<std::int64_t>> nodes_at_stop;

  for (const auto& trip_id : active) {
    auto it = times_by_trip.find(trip_id);
    if (it == times_by_trip.end() || it->second.size() < 2) {
      rep.trips_skipped++;
      continue;
    }
    const GtfsTrip* trip = trip_by_id.at(trip_id);
    TripSpan span{std::int64_t(nodes.size()), int(it->second.size())};
    int pos = 0;
    for (const GtfsStopTime* st : it->second) {
      const GtfsStop* stop = stop_by_id.at(st->stop_id);
      TransitNode n;
      n.id = std::int64_t(nodes.size());
      n.stop = st->stop_id;
      n.trip = trip_id;
      n.route = trip->route_id;
      n.sched_time = st->departure;
      n.seq = ++pos;
      n.pos = stop->pos;
      std::size_t nearest = road_grid.nearest(stop->pos);
      n.road_node = road_ids[nearest];
      nodes.push_back(std::move(n));
      nodes_at_stop[st->stop_id].push_back(nodes.back().id);
    }
    spans.emplace(trip_id, span);
    rep.trips_used++;
  }
  rep.stop_time_nodes = nodes.size();

  // Anchor vertices, one per distinct road node, ordered by road id.
  std::set<NodeId> anchor_roads(anchors.origins.begin(), anchors.origins.end());
  anchor_roads.insert(anchors.destinations.begin(), anchors.destinations.end());
  std::set<NodeId> origin_set(anchors.origins.begin(), anchors.origins.end());
  std::set<NodeId> dest_set(anchors.destinations.begin(),
                            anchors.destinations.end());
  std::unordered_map<NodeId, std::int64_t> anchor_node;
  for (NodeId r : anchor_roads) {
    const RoadNode& rn = road.node(road.index_of(r));
    TransitNode n;
    n.id = std::int64_t(nodes.size());
    n.road_node = r;
    n.anchor = true;
    n.pos = rn.pos;
    anchor_node.emplace(r, n.id);
    nodes.push_back(std::move(n));
  }
  rep.anchor_nodes = anchor_roads.size();

  // Per-stop vertex lists sorted by (departure, id) for windowed scans.
  for (auto& [stop, ids] : nodes_at_stop) {
    std::sort(ids.begin(), ids.end(), [&](std::int64_t a, std::int64_t b) {
      if (nodes[a].sched_time != nodes[b].sched_time)
        return nodes[a].sched_time < nodes[b].sched_time;
      return a < b;
    });
  }

  // Stop index for walking queries.
  std::vector<Point> stop_pts;
  std::vector<std::int64_t> stop_seq_ids;
  std::vector<const std::string*> stop_ids_in_grid;
  for (const auto& s : feed.stops) {
    if (!nodes_at_stop.count(s.id)) continue;  // unused stop
    stop_seq_ids.push_back(std::int64_t(stop_pts.size()));
    stop_pts.push_back(s.pos);
    stop_ids_in_grid.push_back(&s.id);
  }
  SpatialGrid stop_grid(stop_pts, stop_seq_ids, frame);

  std::vector<TransitLink> links;
  auto add_link = [&](std::int64_t from, std::int64_t to, LinkKind kind,
                      Seconds t) {
    links.push_back({std::int64_t(links.size()), from, to, kind, t});
  };

  // In-vehicle links along each trip.
  for (const auto& trip_id : active) {
    auto it = spans.find(trip_id);
    if (it == spans.end()) continue;
    const TripSpan& sp = it->second;
    for (int k = 0; k + 1 < sp.count; ++k) {
      std::int64_t a = sp.first + k, b = sp.first + k + 1;
      add_link(a, b, LinkKind::InVehicle,
               nodes[b].sched_time - nodes[a].sched_time);
    }
  }

  // Transfer links.  For vertex i (not the first visit of its trip), find
  // vertices j of other routes at stops within walking range whose departure
  // leaves a wait in [0, slack] after the walk; j must not be the last visit
  // of its trip.  Zero walking distance makes the link a pure wait.
  for (std::size_t gi = 0; gi < stop_pts.size(); ++gi) {
    const std::string& from_stop = *stop_ids_in_grid[gi];
    auto near = stop_grid.within(stop_pts[gi], params.max_transfer_walk_mi);
    for (std::int64_t i : nodes_at_stop.at(from_stop)) {
      const TransitNode& ni = nodes[i];
      if (ni.seq == 1) continue;  // cannot alight before riding
      for (std::size_t gj : near) {
        const std::string& to_stop = *stop_ids_in_grid[gj];
        double walk_mi = distance_miles(stop_pts[gi], stop_pts[gj], frame);
        Seconds walk = walk_seconds(walk_mi, params.walk_speed_mph);
        Seconds lo = ni.sched_time + walk;
        Seconds hi = lo + params.schedule_slack;
        const auto& cand = nodes_at_stop.at(to_stop);
        auto first = std::lower_bound(cand.begin(), cand.end(), lo,
                                      [&](std::int64_t id, Seconds t) {
                                        return nodes[id].sched_time < t;
                                      });
        for (auto itj = first; itj != cand.end(); ++itj) {
          const TransitNode& nj = nodes[*itj];
          if (nj.sched_time > hi) break;
          if (nj.route == ni.route) continue;
          if (nj.seq == spans.at(nj.trip).count) continue;  // last visit
          LinkKind kind =
              walk_mi > 0.0 ? LinkKind::WalkTransfer : LinkKind::WaitTransfer;
          add_link(i, *itj, kind, nj.sched_time - ni.sched_time);
        }
      }
    }
  }

  // Access and egress links between anchors and walk-range stop visits.
  for (NodeId r : anchor_roads) {
    std::int64_t a = anchor_node.at(r);
    const Point& apos = nodes[std::size_t(a)].pos;
    auto near = stop_grid.within(apos, params.max_access_walk_mi);
    for (std::size_t gj : near) {
      const std::string& stop = *stop_ids_in_grid[gj];
      Seconds walk = walk_seconds(distance_miles(apos, stop_pts[gj], frame),
                                  params.walk_speed_mph);
      for (std::int64_t j : nodes_at_stop.at(stop)) {
        if (origin_set.count(r))
          add_link(a, j, LinkKind::Access, walk + params.service_time);
        if (dest_set.count(r)) add_link(j, a, LinkKind::Egress, walk);
      }
    }
  }

  for (const auto& l : links) rep.links[std::size_t(l.kind)]++;
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (report) *report = rep;
  return TransitGraph(std::move(nodes), std::move(links), frame);
}

}  // namespace trs
