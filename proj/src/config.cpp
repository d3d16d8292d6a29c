#include "trs/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "trs/csv.hpp"

namespace trs {

const char* to_string(RunMode m) {
  switch (m) {
    case RunMode::StaticTrs: return "static-trs";
    case RunMode::StaticRs: return "static-rs";
    case RunMode::StaticCombined: return "static-combined";
    case RunMode::Dynamic: return "dynamic";
  }
  return "?";
}

RunMode parse_run_mode(const std::string& s) {
  if (s == "static-trs") return RunMode::StaticTrs;
  if (s == "static-rs") return RunMode::StaticRs;
  if (s == "static-combined") return RunMode::StaticCombined;
  if (s == "dynamic") return RunMode::Dynamic;
  throw InputError("unknown mode '" + s +
                   "' (static-trs|static-rs|static-combined|dynamic)");
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v, const std::string& ctx) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw InputError(ctx + ": bad boolean '" + v + "'");
}

std::int64_t parse_int(const std::string& v, const std::string& ctx) {
  try {
    std::size_t pos = 0;
    std::int64_t r = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw InputError(ctx + ": bad integer '" + v + "'");
  }
}

double parse_real(const std::string& v, const std::string& ctx) {
  try {
    std::size_t pos = 0;
    double r = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw InputError(ctx + ": bad number '" + v + "'");
  }
}

// Single dispatch table shared by the file loader, --set overrides and the
// canonical dump, so a key cannot exist in one place and be missing from
// another.
void set_field(RunConfig& c, const std::string& sec, const std::string& key,
               const std::string& v, const std::string& ctx) {
  auto as_int = [&] { return parse_int(v, ctx); };
  auto as_real = [&] { return parse_real(v, ctx); };
  auto as_bool = [&] { return parse_bool(v, ctx); };

  if (sec == "paths") {
    if (key == "road_nodes") { c.paths.road_nodes = v; return; }
    if (key == "road_links") { c.paths.road_links = v; return; }
    if (key == "gtfs") { c.paths.gtfs = v; return; }
    if (key == "network") { c.paths.network = v; return; }
    if (key == "requests") { c.paths.requests = v; return; }
    if (key == "matches") { c.paths.matches = v; return; }
    if (key == "out_dir") { c.paths.out_dir = v; return; }
  } else if (sec == "build") {
    if (key == "max_access_walk_mi") { c.build.max_access_walk_mi = as_real(); return; }
    if (key == "max_transfer_walk_mi") { c.build.max_transfer_walk_mi = as_real(); return; }
    if (key == "schedule_slack") { c.build.schedule_slack = as_int(); return; }
    if (key == "walk_speed_mph") { c.build.walk_speed_mph = as_real(); return; }
    if (key == "service_time") { c.build.service_time = as_int(); return; }
    if (key == "service_date") { c.build.service_date = int(as_int()); return; }
    if (key == "frame") { c.frame = parse_coord_frame(v); return; }
  } else if (sec == "weights") {
    if (key == "access") { c.weights.access = as_real(); return; }
    if (key == "wait") { c.weights.wait = as_real(); return; }
    if (key == "in_vehicle") { c.weights.in_vehicle = as_real(); return; }
    if (key == "walk_transfer") { c.weights.walk_transfer = as_real(); return; }
  } else if (sec == "match") {
    if (key == "objective") { c.match.objective = parse_objective(v); return; }
    if (key == "mode") { c.match.mode = parse_run_mode(v); return; }
    if (key == "variant") {
      if (v == "first-mile") { c.match.variant = MatchVariant::FirstMile; return; }
      if (v == "last-mile") { c.match.variant = MatchVariant::LastMile; return; }
      throw InputError(ctx + ": unknown variant '" + v + "' (first-mile|last-mile)");
    }
    if (key == "threads") { c.match.threads = unsigned(as_int()); return; }
    if (key == "include_rideshare") { c.match.include_rideshare = as_bool(); return; }
    if (key == "multi_label") {
      // Reserved for a dominance-keeping label extension; the single-label
      // search is the only implemented behavior.
      if (as_bool()) throw InputError(ctx + ": multi_label is reserved and must stay false");
      c.match.multi_label = false;
      return;
    }
  } else if (sec == "sim") {
    if (key == "step") { c.sim.step = as_int(); return; }
    if (key == "lead") { c.sim.lead = as_int(); return; }
    if (key == "horizon_start") { c.sim.horizon_start = as_int(); return; }
    if (key == "horizon_end") { c.sim.horizon_end = as_int(); return; }
  } else if (sec == "scenario") {
    if (key == "trips") { c.scenario.n_trips = std::size_t(as_int()); return; }
    if (key == "participation") { c.scenario.participation_rate = as_real(); return; }
    if (key == "ratio") { c.scenario.driver_rider_ratio = as_real(); return; }
    if (key == "rider_flex") { c.scenario.rider_flex = as_real(); return; }
    if (key == "driver_flex") { c.scenario.driver_flex = as_real(); return; }
    if (key == "announce_back") { c.scenario.announce_back = as_int(); return; }
    if (key == "seed") { c.scenario.seed = std::uint64_t(as_int()); return; }
    if (key == "fmlm_buffer_mi") { c.scenario.fmlm_buffer_mi = as_real(); return; }
    if (key == "sampling") { c.scenario.sampling = parse_od_sampling(v); return; }
    if (key == "window_start") { c.scenario.window_start = as_int(); return; }
    if (key == "window_end") { c.scenario.window_end = as_int(); return; }
    if (key == "depart_jitter") { c.scenario.depart_jitter = as_int(); return; }
    if (key == "sched_dev") { c.scenario.sched_dev = as_int(); return; }
    if (key == "exact_roles") { c.scenario.exact_roles = as_bool(); return; }
  } else {
    throw InputError(ctx + ": unknown section [" + sec + "]");
  }
  throw InputError(ctx + ": unknown key '" + key + "' in section [" + sec + "]");
}

}  // namespace

void apply_override(RunConfig& cfg, const std::string& assignment,
                    const std::string& context) {
  std::size_t eq = assignment.find('=');
  std::size_t dot = assignment.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
    throw InputError(context + ": override must look like section.key=value, got '" +
                     assignment + "'");
  }
  std::string sec = trim(assignment.substr(0, dot));
  std::string key = trim(assignment.substr(dot + 1, eq - dot - 1));
  std::string val = trim(assignment.substr(eq + 1));
  set_field(cfg, sec, key, val, context + " '" + assignment + "'");
}

RunConfig load_config(const std::string& path,
                      const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config " + path);
  RunConfig cfg;
  std::string line, section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    std::string ctx = path + " line " + std::to_string(lineno);
    if (s.front() == '[') {
      if (s.back() != ']') throw InputError(ctx + ": unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      continue;
    }
    std::size_t eq = s.find('=');
    if (eq == std::string::npos) throw InputError(ctx + ": expected key = value");
    if (section.empty()) throw InputError(ctx + ": key outside any section");
    set_field(cfg, section, trim(s.substr(0, eq)), trim(s.substr(eq + 1)), ctx);
  }
  for (const auto& o : overrides) apply_override(cfg, o, "--set");
  return cfg;
}

RunConfig config_from_overrides(const std::vector<std::string>& overrides) {
  RunConfig cfg;
  for (const auto& o : overrides) apply_override(cfg, o, "--set");
  return cfg;
}

std::string canonical_config(const RunConfig& c) {
  char buf[64];
  auto real = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  std::ostringstream o;
  o << "build.frame = " << to_string(c.frame) << '\n'
    << "build.max_access_walk_mi = " << real(c.build.max_access_walk_mi) << '\n'
    << "build.max_transfer_walk_mi = " << real(c.build.max_transfer_walk_mi) << '\n'
    << "build.schedule_slack = " << c.build.schedule_slack << '\n'
    << "build.service_date = " << c.build.service_date << '\n'
    << "build.service_time = " << c.build.service_time << '\n'
    << "build.walk_speed_mph = " << real(c.build.walk_speed_mph) << '\n'
    << "match.include_rideshare = " << (c.match.include_rideshare ? "true" : "false") << '\n'
    << "match.mode = " << to_string(c.match.mode) << '\n'
    << "match.multi_label = false\n"
    << "match.objective = " << to_string(c.match.objective) << '\n'
    << "match.threads = " << c.match.threads << '\n'
    << "match.variant = " << to_string(c.match.variant) << '\n'
    << "paths.gtfs = " << c.paths.gtfs << '\n'
    << "paths.matches = " << c.paths.matches << '\n'
    << "paths.network = " << c.paths.network << '\n'
    << "paths.out_dir = " << c.paths.out_dir << '\n'
    << "paths.requests = " << c.paths.requests << '\n'
    << "paths.road_links = " << c.paths.road_links << '\n'
    << "paths.road_nodes = " << c.paths.road_nodes << '\n'
    << "scenario.announce_back = " << c.scenario.announce_back << '\n'
    << "scenario.depart_jitter = " << c.scenario.depart_jitter << '\n'
    << "scenario.driver_flex = " << real(c.scenario.driver_flex) << '\n'
    << "scenario.exact_roles = " << (c.scenario.exact_roles ? "true" : "false") << '\n'
    << "scenario.fmlm_buffer_mi = " << real(c.scenario.fmlm_buffer_mi) << '\n'
    << "scenario.participation = " << real(c.scenario.participation_rate) << '\n'
    << "scenario.ratio = " << real(c.scenario.driver_rider_ratio) << '\n'
    << "scenario.rider_flex = " << real(c.scenario.rider_flex) << '\n'
    << "scenario.sampling = " << to_string(c.scenario.sampling) << '\n'
    << "scenario.sched_dev = " << c.scenario.sched_dev << '\n'
    << "scenario.seed = " << c.scenario.seed << '\n'
    << "scenario.trips = " << c.scenario.n_trips << '\n'
    << "scenario.window_end = " << c.scenario.window_end << '\n'
    << "scenario.window_start = " << c.scenario.window_start << '\n'
    << "sim.horizon_end = " << c.sim.horizon_end << '\n'
    << "sim.horizon_start = " << c.sim.horizon_start << '\n'
    << "sim.lead = " << c.sim.lead << '\n'
    << "sim.step = " << c.sim.step << '\n'
    << "weights.access = " << real(c.weights.access) << '\n'
    << "weights.in_vehicle = " << real(c.weights.in_vehicle) << '\n'
    << "weights.wait = " << real(c.weights.wait) << '\n'
    << "weights.walk_transfer = " << real(c.weights.walk_transfer) << '\n';
  return o.str();
}

std::string config_hash(const RunConfig& cfg) {
  std::string dump = canonical_config(cfg);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : dump) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

std::string provenance_line(const RunConfig& cfg) {
  std::ostringstream o;
  o << kEngineName << ' ' << kEngineVersion << " config=" << config_hash(cfg)
    << " seed=" << cfg.scenario.seed;
  return o.str();
}

}  // namespace trs
