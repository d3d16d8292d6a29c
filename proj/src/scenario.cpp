#include "trs/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace trs {

const char* to_string(OdSampling s) {
  return s == OdSampling::Uniform ? "uniform" : "gravity";
}

OdSampling parse_od_sampling(const std::string& s) {
  if (s == "uniform") return OdSampling::Uniform;
  if (s == "gravity") return OdSampling::Gravity;
  throw InputError("unknown od sampling '" + s + "' (uniform|gravity)");
}

std::vector<std::size_t> fmlm_filter(const std::vector<Point>& origins,
                                     const std::vector<Point>& stops,
                                     double buffer_mi, CoordFrame frame) {
  std::vector<std::size_t> out;
  if (stops.empty()) {
    out.resize(origins.size());
    for (std::size_t i = 0; i < origins.size(); ++i) out[i] = i;
    return out;
  }
  std::vector<std::int64_t> ids(stops.size());
  for (std::size_t i = 0; i < stops.size(); ++i) ids[i] = std::int64_t(i);
  SpatialGrid grid(stops, ids, frame);
  for (std::size_t i = 0; i < origins.size(); ++i) {
    if (grid.within(origins[i], buffer_mi).empty()) out.push_back(i);
  }
  return out;
}

namespace {

// Bounded draws go through the raw engine so the byte stream, and with it
// every generated file, is identical across standard library versions.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t n) {
  return n <= 1 ? 0 : rng() % n;
}

Seconds draw_seconds(std::mt19937_64& rng, Seconds lo, Seconds hi) {
  return lo + Seconds(draw_below(rng, std::uint64_t(hi - lo) + 1));
}

// True with probability p, from one draw mapped into [0, 1).
bool draw_bernoulli(std::mt19937_64& rng, double p) {
  if (p >= 1.0) return true;
  return double(rng() >> 11) * 0x1.0p-53 < p;
}

struct Trip {
  std::uint32_t origin = 0;  // dense road indices
  std::uint32_t dest = 0;
  Seconds depart = 0;
  Seconds direct = 0;
};

}  // namespace

ScenarioResult generate_scenario(const RoadGraph& road,
                                 const TravelTimeOracle& oracle,
                                 const std::vector<Point>& stops,
                                 const ScenarioParams& p) {
  if (road.node_count() < 2) throw InputError("road network too small to sample trips");
  if (p.participation_rate <= 0.0 || p.participation_rate > 1.0) {
    throw InputError("participation rate must be in (0, 1]");
  }
  if (p.driver_rider_ratio <= 0.0) throw InputError("driver-rider ratio must be positive");
  if (p.rider_flex < 0.0 || p.driver_flex < 0.0) throw InputError("time flexibility must be nonnegative");
  if (p.window_end < p.window_start) throw InputError("departure window ends before it starts");
  if (p.depart_jitter < 0 || p.announce_back < 0 || p.sched_dev < 0) {
    throw InputError("scenario time parameters must be nonnegative");
  }

  std::mt19937_64 rng(p.seed);
  std::size_t n = road.node_count();

  // Sampling weights: uniform, or proportional to arc degree so busier
  // junctions attract more demand.
  std::vector<std::uint64_t> cum;
  std::uint64_t total_w = 0;
  if (p.sampling == OdSampling::Gravity) {
    cum.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      total_w += road.out(std::uint32_t(i)).size() + road.in(std::uint32_t(i)).size();
      cum[i] = total_w;
    }
    if (total_w == 0) throw InputError("gravity sampling needs at least one road link");
  }
  auto draw_node = [&]() -> std::uint32_t {
    if (p.sampling == OdSampling::Uniform) {
      return std::uint32_t(draw_below(rng, n));
    }
    std::uint64_t t = draw_below(rng, total_w);
    return std::uint32_t(std::upper_bound(cum.begin(), cum.end(), t) - cum.begin());
  };

  ScenarioResult result;
  result.sampled = p.n_trips;

  std::vector<Trip> trips;
  for (std::size_t i = 0; i < p.n_trips; ++i) {
    Trip t;
    bool routable = false;
    for (int attempt = 0; attempt < 200 && !routable; ++attempt) {
      t.origin = draw_node();
      t.dest = draw_node();
      if (t.origin == t.dest) continue;
      t.direct = oracle.travel_time(road.id_of(t.origin), road.id_of(t.dest));
      routable = is_reachable(t.direct);
    }
    if (!routable) {
      ++result.unroutable;
      continue;
    }
    t.depart = draw_seconds(rng, p.window_start, p.window_end) +
               draw_seconds(rng, 0, p.depart_jitter);
    if (draw_bernoulli(rng, p.participation_rate)) trips.push_back(t);
  }
  result.participating = trips.size();

  // First/last-mile condition on trip origins.
  std::vector<Point> origins(trips.size());
  for (std::size_t i = 0; i < trips.size(); ++i) {
    origins[i] = road.node(trips[i].origin).pos;
  }
  std::vector<std::size_t> keep =
      fmlm_filter(origins, stops, p.fmlm_buffer_mi, p.frame);
  std::vector<Trip> qualified;
  for (std::size_t i : keep) qualified.push_back(trips[i]);
  result.qualified = qualified.size();

  if (qualified.empty()) {
    result.warning = "no trips qualify: every sampled origin has a stop within " +
                     std::to_string(p.fmlm_buffer_mi) + " mi";
    return result;
  }

  // Role split.  Exact mode shuffles once and cuts at the ratio's driver
  // count; otherwise each trip draws its role independently.
  std::size_t m = qualified.size();
  std::vector<char> is_driver(m, 0);
  double driver_share = p.driver_rider_ratio / (1.0 + p.driver_rider_ratio);
  if (p.exact_roles) {
    std::vector<std::size_t> perm(m);
    for (std::size_t i = 0; i < m; ++i) perm[i] = i;
    for (std::size_t i = m; i > 1; --i) {
      std::size_t j = std::size_t(draw_below(rng, i));
      std::swap(perm[i - 1], perm[j]);
    }
    auto n_drivers = std::size_t(std::llround(driver_share * double(m)));
    for (std::size_t i = 0; i < n_drivers; ++i) is_driver[perm[i]] = 1;
  } else {
    for (std::size_t i = 0; i < m; ++i) {
      is_driver[i] = draw_bernoulli(rng, driver_share) ? 1 : 0;
    }
  }

  std::size_t next_rider = 0, next_driver = 0;
  char buf[32];
  for (std::size_t i = 0; i < m; ++i) {
    const Trip& t = qualified[i];
    Request r;
    r.role = is_driver[i] ? Role::Driver : Role::Rider;
    if (is_driver[i]) {
      std::snprintf(buf, sizeof buf, "d%04zu", ++next_driver);
    } else {
      std::snprintf(buf, sizeof buf, "r%04zu", ++next_rider);
    }
    r.id = buf;
    r.origin = road.id_of(t.origin);
    r.destination = road.id_of(t.dest);
    double flex = is_driver[i] ? p.driver_flex : p.rider_flex;
    r.sched_dev = p.sched_dev;
    r.travel_delay = Seconds(std::llround(flex * double(t.direct)));
    // depart is the earliest departure; preferences sit sched_dev inside the
    // derived windows so derive_windows recovers these bounds exactly.
    r.pref_depart = t.depart + r.sched_dev;
    r.pref_arrive = t.depart + t.direct + r.travel_delay - r.sched_dev;
    r.announce_time = std::max<Seconds>(0, t.depart - draw_seconds(rng, 0, p.announce_back));
    result.requests.push_back(std::move(r));
  }
  result.riders = next_rider;
  result.drivers = next_driver;
  if (result.requests.empty()) result.warning = "scenario came out empty";
  return result;
}

}  // namespace trs
