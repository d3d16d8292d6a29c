#include "trs/cli_ops.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "trs/csv.hpp"
#include "trs/gtfs.hpp"
#include "trs/network_builder.hpp"

namespace trs {

namespace {

namespace fs = std::filesystem;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw InputError("cannot write " + p.string());
  return out;
}

fs::path out_path(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.paths.out_dir);
  return fs::path(cfg.paths.out_dir) / name;
}

RoadGraph load_road(const RunConfig& cfg) {
  if (cfg.paths.road_nodes.empty() || cfg.paths.road_links.empty())
    throw InputError("paths.road_nodes and paths.road_links are required");
  return RoadGraph::load(cfg.paths.road_nodes, cfg.paths.road_links);
}

// Stop coordinates for the scenario's access-distance filter: the GTFS feed
// when available, otherwise the stop vertices of a prebuilt network.
std::vector<Point> scenario_stops(const RunConfig& cfg) {
  std::vector<Point> stops;
  if (!cfg.paths.gtfs.empty()) {
    GtfsFeed feed = load_gtfs(cfg.paths.gtfs);
    stops.reserve(feed.stops.size());
    for (const auto& s : feed.stops) stops.push_back(s.pos);
    return stops;
  }
  if (!cfg.paths.network.empty() && fs::exists(cfg.paths.network)) {
    TransitGraph tg = TransitGraph::load(cfg.paths.network);
    std::unordered_set<std::string> seen;
    for (const auto& n : tg.nodes()) {
      if (n.anchor || n.stop.empty()) continue;
      if (seen.insert(n.stop).second) stops.push_back(n.pos);
    }
  }
  return stops;
}

void write_scenario_manifest(const RunConfig& cfg, const ScenarioResult& r,
                             const fs::path& where) {
  std::ofstream out = open_out(where);
  out << "# " << provenance_line(cfg) << "\n";
  const ScenarioParams& p = cfg.scenario;
  out << "seed = " << p.seed << "\n"
      << "trips = " << p.n_trips << "\n"
      << "participation = " << p.participation_rate << "\n"
      << "ratio = " << p.driver_rider_ratio << "\n"
      << "rider_flex = " << p.rider_flex << "\n"
      << "driver_flex = " << p.driver_flex << "\n"
      << "sampling = " << to_string(p.sampling) << "\n"
      << "fmlm_buffer_mi = " << p.fmlm_buffer_mi << "\n"
      << "sampled = " << r.sampled << "\n"
      << "unroutable = " << r.unroutable << "\n"
      << "participating = " << r.participating << "\n"
      << "qualified = " << r.qualified << "\n"
      << "riders = " << r.riders << "\n"
      << "drivers = " << r.drivers << "\n";
}

// Request set per config: a file when given, otherwise a generated scenario
// written next to the other outputs so the run can be replayed from disk.
std::vector<Request> obtain_requests(const RunConfig& cfg,
                                     const RoadGraph& road,
                                     const TravelTimeOracle& oracle,
                                     std::ostream& out) {
  if (!cfg.paths.requests.empty()) return load_requests(cfg.paths.requests);

  ScenarioParams params = cfg.scenario;
  params.frame = cfg.frame;
  ScenarioResult scen =
      generate_scenario(road, oracle, scenario_stops(cfg), params);
  if (!scen.warning.empty()) out << "warning: " << scen.warning << "\n";
  save_requests(scen.requests, out_path(cfg, "requests.csv").string(),
                provenance_line(cfg));
  write_scenario_manifest(cfg, scen, out_path(cfg, "scenario_manifest.txt"));
  out << "scenario: " << scen.riders << " riders, " << scen.drivers
      << " drivers (of " << scen.sampled << " sampled trips, "
      << scen.qualified << " qualified)\n";
  return scen.requests;
}

struct ParticipantSets {
  std::vector<Participant> all;  // input order
  std::vector<Participant> riders;
  std::vector<Participant> drivers;
};

ParticipantSets derive_participants(const std::vector<Request>& reqs,
                                    const TravelTimeOracle& oracle) {
  ParticipantSets s;
  for (const auto& r : reqs) {
    Participant p{r, derive_windows(r, oracle)};
    (r.role == Role::Rider ? s.riders : s.drivers).push_back(p);
    s.all.push_back(std::move(p));
  }
  return s;
}

AnchorSet anchors_for(const std::vector<Participant>& riders) {
  AnchorSet a;
  for (const auto& r : riders) {
    a.origins.push_back(r.req.origin);
    a.destinations.push_back(r.req.destination);
  }
  return a;
}

// Transit graph per config: load a prebuilt file, build from GTFS anchored
// at the riders, or an empty graph for rideshare-only runs.
TransitGraph obtain_network(const RunConfig& cfg, const RoadGraph& road,
                            const std::vector<Participant>& riders,
                            std::ostream& out) {
  if (!cfg.paths.network.empty() && fs::exists(cfg.paths.network)) {
    TransitGraph tg = TransitGraph::load(cfg.paths.network);
    if (tg.frame() != cfg.frame)
      throw InputError("network " + cfg.paths.network + " uses frame " +
                       to_string(tg.frame()) + " but the config says " +
                       to_string(cfg.frame));
    return tg;
  }
  if (!cfg.paths.gtfs.empty()) {
    GtfsFeed feed = load_gtfs(cfg.paths.gtfs);
    BuildReport report;
    TransitGraph tg = build_network(feed, road, cfg.build, anchors_for(riders),
                                    cfg.frame, &report);
    out << report.summary();
    if (!cfg.paths.network.empty()) tg.save(cfg.paths.network);
    return tg;
  }
  if (cfg.match.mode == RunMode::StaticRs) return TransitGraph{};
  throw InputError("no transit network: set paths.network or paths.gtfs");
}

std::string fmt_minutes(double seconds) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", seconds / 60.0);
  return buf;
}

// Average over the selected matches of the Table-style trip components.
struct SelectedStats {
  std::size_t count = 0;
  std::int64_t savings = 0;
  double detour = 0.0;   // driver time spent beyond the direct drive
  double shared = 0.0;   // rider's in-car leg
  double transit = 0.0;
  double walk = 0.0;
  double wait = 0.0;
};

SelectedStats selected_stats(const std::vector<FeasibleMatch>& matches,
                             const std::vector<std::size_t>& selected,
                             const TravelTimeOracle& oracle,
                             const ParticipantSets& ps) {
  std::unordered_map<std::string, const Participant*> driver_at;
  for (const auto& d : ps.drivers) driver_at[d.req.id] = &d;
  SelectedStats st;
  st.count = selected.size();
  if (selected.empty()) return st;
  for (std::size_t k : selected) {
    const FeasibleMatch& m = matches[k];
    const Participant& d = *driver_at.at(m.driver);
    Seconds direct = oracle.travel_time(d.req.origin, d.req.destination);
    st.savings += m.t_vhrs;
    st.detour += double((m.driver_arrive - m.depart_time) - direct);
    st.shared += double(m.dropoff_time - m.pickup_time);
    st.transit += double(m.t_transit);
    st.walk += double(m.t_walk);
    st.wait += double(m.t_wait);
  }
  double n = double(st.count);
  st.detour /= n;
  st.shared /= n;
  st.transit /= n;
  st.walk /= n;
  st.wait /= n;
  return st;
}

void write_summary_kv(const fs::path& p, const std::string& provenance,
                      const std::vector<std::pair<std::string, std::string>>& kv) {
  std::ofstream out = open_out(p);
  out << "# " << provenance << "\nkey,value\n";
  for (const auto& [k, v] : kv) out << k << ',' << v << '\n';
}

std::string real_str(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Feasible-match generation for one static mode.
std::vector<FeasibleMatch> static_matches(const RunConfig& cfg,
                                          const PotentialMatchSearch& search,
                                          const ParticipantSets& ps) {
  std::vector<FeasibleMatch> matches;
  if (cfg.match.mode != RunMode::StaticRs) {
    matches = search_rider_block(search, ps.riders, ps.drivers,
                                 cfg.match.variant, cfg.match.threads);
  }
  if (cfg.match.mode == RunMode::StaticRs ||
      cfg.match.mode == RunMode::StaticCombined) {
    auto rs = search.standalone_rs_match(ps.riders, ps.drivers);
    matches.insert(matches.end(), rs.begin(), rs.end());
  }
  return matches;
}

}  // namespace

int cmd_build_network(const RunConfig& cfg, std::ostream& out) {
  if (cfg.paths.gtfs.empty()) throw InputError("paths.gtfs is required");
  if (cfg.paths.network.empty())
    throw InputError("paths.network names the output graph and is required");

  RoadGraph road = load_road(cfg);
  TravelTimeOracle oracle(road);
  std::vector<Request> requests = obtain_requests(cfg, road, oracle, out);
  ParticipantSets ps = derive_participants(requests, oracle);

  GtfsFeed feed = load_gtfs(cfg.paths.gtfs);
  BuildReport report;
  TransitGraph tg = build_network(feed, road, cfg.build, anchors_for(ps.riders),
                                  cfg.frame, &report);
  if (report.stop_time_nodes == 0)
    throw InputError("feed " + cfg.paths.gtfs +
                     " produced no scheduled stop visits");
  tg.save(cfg.paths.network);

  auto counts = tg.link_counts();
  std::vector<std::pair<std::string, std::string>> kv = {
      {"nodes", std::to_string(tg.node_count())},
      {"stop_time_nodes", std::to_string(report.stop_time_nodes)},
      {"anchor_nodes", std::to_string(report.anchor_nodes)},
      {"trips_used", std::to_string(report.trips_used)},
      {"trips_skipped", std::to_string(report.trips_skipped)},
      {"in_vehicle_links", std::to_string(counts[int(LinkKind::InVehicle)])},
      {"wait_transfer_links", std::to_string(counts[int(LinkKind::WaitTransfer)])},
      {"walk_transfer_links", std::to_string(counts[int(LinkKind::WalkTransfer)])},
      {"access_links", std::to_string(counts[int(LinkKind::Access)])},
      {"egress_links", std::to_string(counts[int(LinkKind::Egress)])},
      {"total_links", std::to_string(tg.link_count())},
  };
  write_summary_kv(out_path(cfg, "network_manifest.csv"), provenance_line(cfg),
                   kv);
  out << report.summary();
  out << "network written to " << cfg.paths.network << "\n";
  return 0;
}

int cmd_match(const RunConfig& cfg, std::ostream& out) {
  if (cfg.match.mode == RunMode::Dynamic)
    throw InputError("mode dynamic belongs to the simulate command");

  RoadGraph road = load_road(cfg);
  TravelTimeOracle oracle(road);
  std::vector<Request> requests = obtain_requests(cfg, road, oracle, out);
  ParticipantSets ps = derive_participants(requests, oracle);
  TransitGraph tg = obtain_network(cfg, road, ps.riders, out);
  PotentialMatchSearch search(tg, road, oracle,
                              SearchParams{cfg.weights, cfg.build.service_time});

  auto t0 = std::chrono::steady_clock::now();
  std::vector<FeasibleMatch> matches = static_matches(cfg, search, ps);
  double feas_s = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  MatchingProblem problem = build_problem(matches);
  Assignment assign = solve_assignment(problem, cfg.match.objective);
  RelaxationReport relax = verify_integral(problem, cfg.match.objective);
  double solve_s = seconds_since(t0);
  if (!relax.integral) {
    std::string ids;
    for (std::size_t e : relax.fractional) ids += " " + std::to_string(e);
    throw InvariantError("relaxation came back fractional at edges" + ids);
  }

  MatchTable table;
  table.matches = matches;
  table.selected.assign(matches.size(), 0);
  for (std::size_t k : assign.selected) table.selected[k] = 1;
  save_matches(table, out_path(cfg, "matches.csv").string(),
               provenance_line(cfg));

  {
    std::ofstream a = open_out(out_path(cfg, "assignment.csv"));
    a << "# " << provenance_line(cfg) << "\nedge,rider,driver,t_vhrs\n";
    for (std::size_t k : assign.selected) {
      a << k << ',' << matches[k].rider << ',' << matches[k].driver << ','
        << matches[k].t_vhrs << '\n';
    }
  }

  SelectedStats st = selected_stats(matches, assign.selected, oracle, ps);
  std::size_t n_riders = ps.riders.size(), n_drivers = ps.drivers.size();
  std::vector<std::pair<std::string, std::string>> kv = {
      {"mode", to_string(cfg.match.mode)},
      {"objective", to_string(cfg.match.objective)},
      {"riders", std::to_string(n_riders)},
      {"drivers", std::to_string(n_drivers)},
      {"feasible_matches", std::to_string(matches.size())},
      {"optimal_matches", std::to_string(assign.selected.size())},
      {"objective_value", std::to_string(assign.value)},
      {"total_savings_s", std::to_string(st.savings)},
      {"avg_detour_s", real_str(st.detour)},
      {"avg_shared_s", real_str(st.shared)},
      {"avg_transit_s", real_str(st.transit)},
      {"avg_walk_s", real_str(st.walk)},
      {"avg_wait_s", real_str(st.wait)},
  };
  write_summary_kv(out_path(cfg, "match_summary.csv"), provenance_line(cfg), kv);

  char savings_line[64];
  std::snprintf(savings_line, sizeof savings_line, "%.1f veh-hrs",
                double(st.savings) / 3600.0);
  out << "mode " << to_string(cfg.match.mode) << ", objective "
      << to_string(cfg.match.objective) << "\n"
      << n_riders << " riders, " << n_drivers << " drivers\n"
      << "feasible matches:  " << matches.size() << "\n"
      << "optimal matches:   " << assign.selected.size() << "\n"
      << "veh-hrs savings:   " << savings_line << "\n"
      << "avg detour:        " << fmt_minutes(st.detour) << " min\n"
      << "avg shared ride:   " << fmt_minutes(st.shared) << " min\n"
      << "avg transit time:  " << fmt_minutes(st.transit) << " min\n"
      << "avg walk time:     " << fmt_minutes(st.walk) << " min\n"
      << "avg wait time:     " << fmt_minutes(st.wait) << " min\n";
  char timing[96];
  std::snprintf(timing, sizeof timing,
                "feasibility %.3f s, optimization %.3f s\n", feas_s, solve_s);
  out << timing;
  return 0;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  RoadGraph road = load_road(cfg);
  TravelTimeOracle oracle(road);
  std::vector<Request> requests = obtain_requests(cfg, road, oracle, out);
  ParticipantSets ps = derive_participants(requests, oracle);
  TransitGraph tg = obtain_network(cfg, road, ps.riders, out);
  PotentialMatchSearch search(tg, road, oracle,
                              SearchParams{cfg.weights, cfg.build.service_time});

  SimConfig sim = cfg.sim;
  sim.objective = cfg.match.objective;
  sim.transit_variant = cfg.match.variant;
  sim.include_pure_rideshare = cfg.match.include_rideshare ||
                               cfg.match.mode == RunMode::StaticRs ||
                               cfg.match.mode == RunMode::StaticCombined;
  RollingHorizonSim runner(search, sim);
  SimResult result = runner.run(ps.all);

  {
    std::ofstream s = open_out(out_path(cfg, "steps.csv"));
    s << "# " << provenance_line(cfg) << "\n";
    s << "clock,admitted_riders,admitted_drivers,pairs_evaluated,"
         "matches_added,open_matches,optimal_matches,finalized,expired\n";
    for (const auto& st : result.steps) {
      s << st.clock << ',' << st.admitted_riders << ',' << st.admitted_drivers
        << ',' << st.pairs_evaluated << ',' << st.matches_added << ','
        << st.open_matches << ',' << st.optimal_matches << ',' << st.finalized
        << ',' << st.expired << '\n';
    }
  }

  MatchTable table;
  table.matches = result.finalized;
  table.selected.assign(result.finalized.size(), 1);
  save_matches(table, out_path(cfg, "finalized.csv").string(),
               provenance_line(cfg));

  std::vector<std::pair<std::string, std::string>> kv = {
      {"riders", std::to_string(result.total_riders)},
      {"drivers", std::to_string(result.total_drivers)},
      {"steps", std::to_string(result.steps.size())},
      {"finalized", std::to_string(result.finalized.size())},
      {"expired", std::to_string(result.expired.size())},
      {"matching_rate", real_str(result.matching_rate)},
      {"total_savings_s", std::to_string(result.total_savings)},
  };
  write_summary_kv(out_path(cfg, "sim_summary.csv"), provenance_line(cfg), kv);

  char line[128];
  out << result.total_riders << " riders, " << result.total_drivers
      << " drivers over " << result.steps.size() << " steps\n"
      << "finalized matches: " << result.finalized.size() << "\n"
      << "expired unmatched: " << result.expired.size() << "\n";
  std::snprintf(line, sizeof line, "matching rate:     %.1f%%\n",
                result.matching_rate * 100.0);
  out << line;
  std::snprintf(line, sizeof line, "veh-hrs savings:   %.1f veh-hrs\n",
                double(result.total_savings) / 3600.0);
  out << line;
  std::snprintf(line, sizeof line, "wall time:         %.3f s\n",
                result.wall_seconds);
  out << line;
  return 0;
}

int cmd_sweep(const RunConfig& cfg, const std::string& dimension,
              const std::vector<double>& values, std::ostream& out) {
  if (values.empty()) throw InputError("sweep needs at least one value");
  if (!cfg.paths.requests.empty())
    throw InputError("sweep regenerates its scenario; unset paths.requests");
  if (cfg.match.mode == RunMode::Dynamic)
    throw InputError("sweep runs the static pipeline; pick a static mode");
  bool needs_transit = cfg.match.mode != RunMode::StaticRs;
  if (needs_transit && cfg.paths.gtfs.empty())
    throw InputError("sweep rebuilds the network per value; set paths.gtfs");

  RoadGraph road = load_road(cfg);
  TravelTimeOracle oracle(road);
  GtfsFeed feed;
  std::vector<Point> stops;
  if (!cfg.paths.gtfs.empty()) {
    feed = load_gtfs(cfg.paths.gtfs);
    for (const auto& s : feed.stops) stops.push_back(s.pos);
  }

  std::ofstream sweep = open_out(out_path(cfg, "sweep.csv"));
  sweep << "# " << provenance_line(cfg) << "\n";
  sweep << "dimension,value,riders,drivers,feasible,matches_max_matches,"
           "savings_s_max_matches,matches_max_savings,savings_s_max_savings,"
           "runtime_s\n";
  out << dimension << " sweep (" << to_string(cfg.match.mode) << ")\n";

  for (double v : values) {
    RunConfig c = cfg;
    if (dimension == "rider_flex") {
      c.scenario.rider_flex = v;
    } else if (dimension == "driver_flex") {
      c.scenario.driver_flex = v;
    } else if (dimension == "participation") {
      c.scenario.participation_rate = v;
    } else if (dimension == "ratio") {
      c.scenario.driver_rider_ratio = v;
    } else {
      throw InputError("unknown sweep dimension '" + dimension +
                       "' (rider_flex|driver_flex|participation|ratio)");
    }

    ScenarioParams params = c.scenario;
    params.frame = c.frame;
    ScenarioResult scen = generate_scenario(road, oracle, stops, params);
    ParticipantSets ps = derive_participants(scen.requests, oracle);

    auto t0 = std::chrono::steady_clock::now();
    TransitGraph tg;
    if (needs_transit) {
      tg = build_network(feed, road, c.build, anchors_for(ps.riders), c.frame,
                         nullptr);
    }
    PotentialMatchSearch search(tg, road, oracle,
                                SearchParams{c.weights, c.build.service_time});
    std::vector<FeasibleMatch> matches = static_matches(c, search, ps);
    MatchingProblem problem = build_problem(matches);
    Assignment z1 = solve_assignment(problem, Objective::MaxMatches);
    Assignment z2 = solve_assignment(problem, Objective::MaxSavings);
    double run_s = seconds_since(t0);

    auto savings_of = [&](const Assignment& a) {
      std::int64_t s = 0;
      for (std::size_t k : a.selected) s += matches[k].t_vhrs;
      return s;
    };
    std::int64_t s1 = savings_of(z1), s2 = savings_of(z2);

    char v_str[40], run_str[32];
    std::snprintf(v_str, sizeof v_str, "%.17g", v);
    std::snprintf(run_str, sizeof run_str, "%.3f", run_s);
    sweep << dimension << ',' << v_str << ',' << ps.riders.size() << ','
          << ps.drivers.size() << ',' << matches.size() << ','
          << z1.selected.size() << ',' << s1 << ',' << z2.selected.size()
          << ',' << s2 << ',' << run_str << '\n';

    char human[160];
    std::snprintf(human, sizeof human,
                  "  %-12g %5zu riders %5zu drivers %6zu feasible "
                  "%5zu/%5zu optimal %8.1f/%8.1f veh-hrs %8.3f s\n",
                  v, ps.riders.size(), ps.drivers.size(), matches.size(),
                  z1.selected.size(), z2.selected.size(), double(s1) / 3600.0,
                  double(s2) / 3600.0, run_s);
    out << human;
  }
  out << "sweep table written to "
      << (fs::path(cfg.paths.out_dir) / "sweep.csv").string() << "\n";
  return 0;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  if (cfg.paths.matches.empty()) throw InputError("paths.matches is required");
  if (cfg.paths.requests.empty()) throw InputError("paths.requests is required");

  RoadGraph road = load_road(cfg);
  TravelTimeOracle oracle(road);
  std::vector<Request> requests = load_requests(cfg.paths.requests);
  ParticipantSets ps = derive_participants(requests, oracle);
  TransitGraph tg;
  if (!cfg.paths.network.empty()) {
    tg = TransitGraph::load(cfg.paths.network);
    if (tg.frame() != cfg.frame)
      throw InputError("network frame disagrees with the config frame");
  }
  PotentialMatchSearch search(tg, road, oracle,
                              SearchParams{cfg.weights, cfg.build.service_time});

  std::unordered_map<std::string, const Participant*> by_id;
  for (const auto& p : ps.all) by_id[p.req.id] = &p;

  MatchTable table = load_matches(cfg.paths.matches);
  std::size_t failures = 0;
  for (std::size_t i = 0; i < table.matches.size(); ++i) {
    const FeasibleMatch& m = table.matches[i];
    std::string problem;
    auto r = by_id.find(m.rider);
    auto d = by_id.find(m.driver);
    if (r == by_id.end()) {
      problem = "unknown rider '" + m.rider + "'";
    } else if (d == by_id.end()) {
      problem = "unknown driver '" + m.driver + "'";
    } else {
      ValidationResult res = search.validate(m, *r->second, *d->second);
      if (!res.ok) problem = res.problem;
    }
    if (!problem.empty()) {
      ++failures;
      out << "row " << (i + 1) << " (" << m.rider << ", " << m.driver
          << "): " << problem << "\n";
    }
  }
  out << table.matches.size() << " matches checked, " << failures
      << " failures\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace trs
