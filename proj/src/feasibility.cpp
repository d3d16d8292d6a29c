#include "trs/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace trs {

namespace {
constexpr double kInfCost = std::numeric_limits<double>::infinity();
constexpr double kCostTol = 1e-9;
}  // namespace

const char* to_string(MatchVariant v) {
  switch (v) {
    case MatchVariant::FirstMile: return "first-mile";
    case MatchVariant::LastMile: return "last-mile";
    case MatchVariant::PureRideshare: return "rideshare";
  }
  return "?";
}

PotentialMatchSearch::PotentialMatchSearch(const TransitGraph& tg,
                                           const RoadGraph& road,
                                           const TravelTimeOracle& oracle,
                                           SearchParams params)
    : tg_(tg), road_(road), oracle_(oracle), params_(params) {
  handoff_idx_.reserve(tg_.node_count());
  for (const auto& n : tg_.nodes())
    handoff_idx_.push_back(road_.index_of(n.road_node));
}

struct PotentialMatchSearch::ScanResult {
  LabelSet labels;
};

// Label-setting scan over the transit graph.  Backward mode walks incoming
// links from the destination anchor and keeps, per vertex, the latest
// feasible departure time alongside the minimal generalized cost; forward
// mode mirrors it from the origin anchor with earliest arrivals.  One label
// per vertex: when cost and time disagree about the better path, cost wins,
// which replicates the reference scheme and can discard time-feasible
// alternatives under non-uniform weights.
PotentialMatchSearch::ScanResult PotentialMatchSearch::scan(
    const Participant& rider, bool forward) const {
  const std::size_t n = tg_.node_count();
  ScanResult res;
  LabelSet& ls = res.labels;
  ls.gc.assign(n, kInfCost);
  ls.time.assign(n, 0);
  ls.pred.assign(n, -1);
  ls.reached.assign(n, 0);

  NodeId seed_road = forward ? rider.req.origin : rider.req.destination;
  std::int64_t seed = tg_.anchor_for_road(seed_road);
  ls.seed = seed;
  if (seed < 0) return res;  // no anchor: nothing to label, not an error

  // Road-time bound used by the pruning rule.  Backward scans bound the
  // rider's earliest possible presence at a vertex by the direct drive from
  // the origin; forward scans bound the remaining drive to the destination.
  std::shared_ptr<const SpTree> bound_tree =
      forward ? oracle_.backward_tree(rider.req.destination)
              : oracle_.forward_tree(rider.req.origin);

  ls.gc[seed] = 0.0;
  ls.time[seed] =
      forward ? rider.win.earliest_depart : rider.win.latest_arrive;
  ls.reached[seed] = 1;

  using Entry = std::pair<double, std::int64_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> sel;
  std::vector<char> settled(n, 0);
  sel.push({0.0, seed});

  while (!sel.empty()) {
    auto [gc_i, i] = sel.top();
    sel.pop();
    if (settled[i]) continue;
    if (gc_i != ls.gc[i]) continue;  // superseded entry
    settled[i] = 1;
    const auto& star = forward ? tg_.forward_star(i) : tg_.backward_star(i);
    for (std::int64_t lid : star) {
      const TransitLink& l = tg_.link(lid);
      std::int64_t j = forward ? l.to : l.from;
      if (settled[j]) continue;
      double gc_new = gc_i + params_.weights.factor(l.kind) *
                                 double(l.traverse_time);
      if (gc_new >= ls.gc[j]) continue;
      Seconds time_new = forward ? ls.time[i] + l.traverse_time
                                 : ls.time[i] - l.traverse_time;
      Seconds road_leg = bound_tree->dist[handoff_idx_[j]];
      if (is_reachable(road_leg)) {
        if (forward) {
          // The remaining drive must still meet the latest arrival.
          if (time_new + road_leg > rider.win.latest_arrive) continue;
        } else {
          // Even the direct drive plus handoff must beat j's deadline.
          if (rider.win.earliest_depart + road_leg + params_.service_time >=
              time_new)
            continue;
        }
      }
      ls.gc[j] = gc_new;
      ls.time[j] = time_new;
      ls.pred[j] = lid;
      ls.reached[j] = 1;
      sel.push({gc_new, j});
    }
  }
  return res;
}

Itinerary PotentialMatchSearch::chain_from(const LabelSet& ls,
                                           std::int64_t node,
                                           bool forward) const {
  Itinerary out;
  std::int64_t cur = node;
  while (cur != ls.seed) {
    std::int64_t lid = ls.pred[cur];
    if (lid < 0) throw InvariantError("broken predecessor chain");
    out.push_back(lid);
    const TransitLink& l = tg_.link(lid);
    cur = forward ? l.from : l.to;
  }
  if (forward) std::reverse(out.begin(), out.end());
  return out;
}

FeasibleMatch PotentialMatchSearch::make_match(const Participant& rider,
                                               const Participant& driver,
                                               MatchVariant variant,
                                               std::int64_t handoff_node,
                                               const Itinerary& itinerary) const {
  FeasibleMatch m;
  m.rider = rider.req.id;
  m.driver = driver.req.id;
  m.variant = variant;
  m.handoff_node = handoff_node;
  m.itinerary = itinerary;

  for (std::int64_t lid : itinerary) {
    const TransitLink& l = tg_.link(lid);
    double w = params_.weights.factor(l.kind);
    m.gen_cost += w * double(l.traverse_time);
    switch (l.kind) {
      case LinkKind::InVehicle: m.t_transit += l.traverse_time; break;
      case LinkKind::WaitTransfer: m.t_wait += l.traverse_time; break;
      case LinkKind::WalkTransfer:
        m.t_walk += l.traverse_time;
        m.n_transfers += 1;
        break;
      case LinkKind::Access:
      case LinkKind::Egress: m.t_walk += l.traverse_time; break;
    }
  }

  Seconds itin_total = 0;
  for (std::int64_t lid : itinerary) itin_total += tg_.link(lid).traverse_time;

  m.depart_time = driver.win.earliest_depart;
  if (variant == MatchVariant::FirstMile) {
    m.handoff_road = tg_.node(handoff_node).road_node;
    m.dropoff_road = m.handoff_road;
    Seconds to_rider = oracle_.travel_time(driver.req.origin, rider.req.origin);
    Seconds to_handoff = oracle_.travel_time(rider.req.origin, m.handoff_road);
    Seconds onward = oracle_.travel_time(m.handoff_road, driver.req.destination);
    m.pickup_time = m.depart_time + to_rider;
    m.dropoff_time = m.pickup_time + to_handoff;
    m.arrive_time = m.dropoff_time + params_.service_time + itin_total;
    m.driver_arrive = m.dropoff_time + params_.service_time + onward;
    m.t_drive = to_rider + to_handoff + onward;
  } else if (variant == MatchVariant::LastMile) {
    m.handoff_road = tg_.node(handoff_node).road_node;
    m.dropoff_road = rider.req.destination;
    Seconds to_handoff = oracle_.travel_time(driver.req.origin, m.handoff_road);
    Seconds to_dest = oracle_.travel_time(m.handoff_road, rider.req.destination);
    Seconds onward =
        oracle_.travel_time(rider.req.destination, driver.req.destination);
    m.pickup_time = rider.win.earliest_depart + itin_total;
    m.dropoff_time = m.pickup_time + to_dest;
    m.arrive_time = m.dropoff_time;
    m.driver_arrive = m.arrive_time + onward;
    m.t_drive = to_handoff + to_dest + onward;
  } else {
    m.handoff_road = rider.req.destination;
    m.dropoff_road = rider.req.destination;
    Seconds to_rider = oracle_.travel_time(driver.req.origin, rider.req.origin);
    Seconds direct = oracle_.travel_time(rider.req.origin, rider.req.destination);
    Seconds onward =
        oracle_.travel_time(rider.req.destination, driver.req.destination);
    m.pickup_time = m.depart_time + to_rider;
    m.dropoff_time = m.pickup_time + direct;
    m.arrive_time = m.dropoff_time;
    m.driver_arrive = m.arrive_time + onward;
    m.t_drive = to_rider + direct + onward;
  }

  Seconds rider_solo = oracle_.travel_time(rider.req.origin, rider.req.destination);
  Seconds driver_solo =
      oracle_.travel_time(driver.req.origin, driver.req.destination);
  m.t_vhrs = rider_solo + driver_solo - m.t_drive;
  return m;
}

std::vector<FeasibleMatch> PotentialMatchSearch::rider_driver_potential_match(
    const Participant& rider, const std::vector<Participant>& drivers,
    LabelSet* labels_out) const {
  ScanResult res = scan(rider, /*forward=*/false);
  if (labels_out) *labels_out = res.labels;
  std::vector<FeasibleMatch> out;
  if (res.labels.seed < 0) return out;

  // Per-driver constants: pickup moment and the tree toward the driver's
  // destination.  Drivers whose pickup misses the rider's departure window
  // are finished here.
  struct DriverCtx {
    const Participant* d;
    Seconds pickup;
    std::shared_ptr<const SpTree> to_dest;
  };
  std::vector<DriverCtx> ctx;
  for (const auto& d : drivers) {
    Seconds leg = oracle_.travel_time(d.req.origin, rider.req.origin);
    if (!is_reachable(leg)) continue;
    Seconds pickup = d.win.earliest_depart + leg;
    if (pickup < rider.win.earliest_depart || pickup > rider.win.latest_depart)
      continue;
    ctx.push_back({&d, pickup, oracle_.backward_tree(d.req.destination)});
  }
  if (ctx.empty()) return out;

  std::shared_ptr<const SpTree> from_origin =
      oracle_.forward_tree(rider.req.origin);
  for (std::int64_t j = 0; j < std::int64_t(tg_.node_count()); ++j) {
    if (!res.labels.reached[j] || j == res.labels.seed) continue;
    Seconds drive_leg = from_origin->dist[handoff_idx_[j]];
    if (!is_reachable(drive_leg)) continue;
    for (const auto& c : ctx) {
      Seconds at_handoff = c.pickup + drive_leg + params_.service_time;
      if (at_handoff > res.labels.time[j]) continue;
      Seconds onward = c.to_dest->dist[handoff_idx_[j]];
      if (!is_reachable(onward)) continue;
      if (at_handoff + onward > c.d->win.latest_arrive) continue;
      out.push_back(make_match(rider, *c.d, MatchVariant::FirstMile, j,
                               chain_from(res.labels, j, /*forward=*/false)));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const FeasibleMatch& a, const FeasibleMatch& b) {
              if (a.driver != b.driver) return a.driver < b.driver;
              return a.handoff_node < b.handoff_node;
            });
  return out;
}

std::vector<FeasibleMatch> PotentialMatchSearch::last_mile_potential_match(
    const Participant& rider, const std::vector<Participant>& drivers,
    LabelSet* labels_out) const {
  ScanResult res = scan(rider, /*forward=*/true);
  if (labels_out) *labels_out = res.labels;
  std::vector<FeasibleMatch> out;
  if (res.labels.seed < 0) return out;

  struct DriverCtx {
    const Participant* d;
    std::shared_ptr<const SpTree> from_origin;   // t(origin(d), *)
    Seconds dest_leg;                            // t(dest(r), dest(d))
  };
  std::vector<DriverCtx> ctx;
  for (const auto& d : drivers) {
    Seconds dest_leg =
        oracle_.travel_time(rider.req.destination, d.req.destination);
    if (!is_reachable(dest_leg)) continue;
    ctx.push_back({&d, oracle_.forward_tree(d.req.origin), dest_leg});
  }
  if (ctx.empty()) return out;

  std::shared_ptr<const SpTree> to_dest =
      oracle_.backward_tree(rider.req.destination);
  for (std::int64_t j = 0; j < std::int64_t(tg_.node_count()); ++j) {
    if (!res.labels.reached[j] || j == res.labels.seed) continue;
    Seconds final_leg = to_dest->dist[handoff_idx_[j]];
    if (!is_reachable(final_leg)) continue;
    Seconds rider_at = res.labels.time[j];
    if (rider_at + final_leg > rider.win.latest_arrive) continue;
    for (const auto& c : ctx) {
      Seconds car_at = c.from_origin->dist[handoff_idx_[j]];
      if (!is_reachable(car_at)) continue;
      if (c.d->win.earliest_depart + car_at > rider_at) continue;
      if (rider_at + final_leg + c.dest_leg > c.d->win.latest_arrive) continue;
      out.push_back(make_match(rider, *c.d, MatchVariant::LastMile, j,
                               chain_from(res.labels, j, /*forward=*/true)));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const FeasibleMatch& a, const FeasibleMatch& b) {
              if (a.driver != b.driver) return a.driver < b.driver;
              return a.handoff_node < b.handoff_node;
            });
  return out;
}

std::vector<FeasibleMatch> PotentialMatchSearch::standalone_rs_match(
    const std::vector<Participant>& riders,
    const std::vector<Participant>& drivers) const {
  std::vector<FeasibleMatch> out;
  for (const auto& r : riders) {
    for (const auto& d : drivers) {
      Seconds to_rider = oracle_.travel_time(d.req.origin, r.req.origin);
      if (!is_reachable(to_rider)) continue;
      Seconds pickup = d.win.earliest_depart + to_rider;
      if (pickup < r.win.earliest_depart || pickup > r.win.latest_depart)
        continue;
      Seconds direct = oracle_.travel_time(r.req.origin, r.req.destination);
      if (!is_reachable(direct)) continue;
      Seconds dropoff = pickup + direct;
      if (dropoff > r.win.latest_arrive) continue;
      Seconds onward =
          oracle_.travel_time(r.req.destination, d.req.destination);
      if (!is_reachable(onward)) continue;
      if (dropoff + onward > d.win.latest_arrive) continue;
      out.push_back(
          make_match(r, d, MatchVariant::PureRideshare, -1, Itinerary{}));
    }
  }
  return out;
}

ValidationResult PotentialMatchSearch::validate(const FeasibleMatch& m,
                                                const Participant& rider,
                                                const Participant& driver,
                                                bool check_optimality) const {
  auto fail = [](std::string why) { return ValidationResult{false, std::move(why)}; };
  if (m.rider != rider.req.id || m.driver != driver.req.id)
    return fail("participant ids do not match");

  // Itinerary integrity first; the metric recomputation below trusts it.
  if (m.variant == MatchVariant::PureRideshare) {
    if (!m.itinerary.empty()) return fail("rideshare match with an itinerary");
    if (m.handoff_node != -1) return fail("rideshare match with handoff vertex");
    if (m.handoff_road != rider.req.destination)
      return fail("rideshare drop-off is not the rider destination");
  } else {
    if (m.itinerary.empty()) return fail("transit match without an itinerary");
    if (m.handoff_node < 0 ||
        std::size_t(m.handoff_node) >= tg_.node_count())
      return fail("handoff vertex out of range");
    for (std::size_t k = 0; k + 1 < m.itinerary.size(); ++k) {
      if (tg_.link(m.itinerary[k]).to != tg_.link(m.itinerary[k + 1]).from)
        return fail("itinerary links do not chain");
    }
    std::int64_t first = tg_.link(m.itinerary.front()).from;
    std::int64_t last = tg_.link(m.itinerary.back()).to;
    if (m.variant == MatchVariant::FirstMile) {
      if (first != m.handoff_node) return fail("itinerary does not start at handoff");
      std::int64_t dest_anchor = tg_.anchor_for_road(rider.req.destination);
      if (last != dest_anchor) return fail("itinerary does not end at destination");
    } else {
      std::int64_t origin_anchor = tg_.anchor_for_road(rider.req.origin);
      if (first != origin_anchor) return fail("itinerary does not start at origin");
      if (last != m.handoff_node) return fail("itinerary does not end at handoff");
    }
    if (tg_.node(m.handoff_node).road_node != m.handoff_road)
      return fail("handoff road node mismatch");
  }

  FeasibleMatch ref =
      make_match(rider, driver, m.variant, m.handoff_node, m.itinerary);
  if (ref.depart_time != m.depart_time || ref.pickup_time != m.pickup_time ||
      ref.dropoff_time != m.dropoff_time || ref.arrive_time != m.arrive_time ||
      ref.driver_arrive != m.driver_arrive || ref.t_drive != m.t_drive ||
      ref.t_transit != m.t_transit || ref.t_walk != m.t_walk ||
      ref.t_wait != m.t_wait || ref.n_transfers != m.n_transfers ||
      ref.t_vhrs != m.t_vhrs || ref.dropoff_road != m.dropoff_road ||
      std::fabs(ref.gen_cost - m.gen_cost) > kCostTol)
    return fail("stored metrics disagree with recomputation");

  // The five match conditions.
  if (m.depart_time < driver.win.earliest_depart)
    return fail("driver departs before earliest departure");
  if (m.variant == MatchVariant::LastMile) {
    Seconds car_at =
        oracle_.travel_time(driver.req.origin, m.handoff_road);
    if (!is_reachable(car_at) ||
        driver.win.earliest_depart + car_at > m.pickup_time)
      return fail("driver cannot reach the pickup in time");
  } else {
    if (m.pickup_time < rider.win.earliest_depart)
      return fail("pickup before the rider's earliest departure");
    if (m.pickup_time > rider.win.latest_depart)
      return fail("pickup after the rider's latest departure");
  }
  if (m.arrive_time > rider.win.latest_arrive)
    return fail("rider arrives after the latest arrival");
  if (m.driver_arrive > driver.win.latest_arrive)
    return fail("driver arrives after the latest arrival");

  if (check_optimality && m.variant != MatchVariant::PureRideshare) {
    ScanResult res = scan(rider, m.variant == MatchVariant::LastMile);
    std::int64_t j = m.handoff_node;
    if (!res.labels.reached[j])
      return fail("handoff vertex unreachable in a fresh scan");
    if (std::fabs(res.labels.gc[j] - m.gen_cost) > kCostTol)
      return fail("itinerary cost is not optimal for the handoff vertex");
  }
  return ValidationResult{};
}

}  // namespace trs
