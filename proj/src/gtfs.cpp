#include "trs/gtfs.hpp"

#include <algorithm>
#include <unordered_set>

#include "trs/csv.hpp"

namespace trs {

namespace {

// Day of week for a YYYYMMDD date, 0 = Monday.  Sakamoto's method.
int day_of_week(int date) {
  int y = date / 10000, m = (date / 100) % 100, d = date % 100;
  static const int off[] = {0, 3, 2, 5, 0, 3, 5, 1, 4, 6, 2, 4};
  if (m < 3) y -= 1;
  int dow_sun0 = (y + y / 4 - y / 100 + y / 400 + off[m - 1] + d) % 7;
  return (dow_sun0 + 6) % 7;
}

}  // namespace

bool service_runs_on(const GtfsService& s, int date) {
  if (date < s.start_date || date > s.end_date) return false;
  return s.weekday[day_of_week(date)];
}

const GtfsStop* GtfsFeed::find_stop(const std::string& id) const {
  for (const auto& s : stops)
    if (s.id == id) return &s;
  return nullptr;
}

std::vector<std::string> GtfsFeed::active_trips(int date) const {
  std::vector<std::string> out;
  for (const auto& t : trips) {
    auto it = services.find(t.service_id);
    if (it == services.end()) continue;
    if (date == 0 || service_runs_on(it->second, date)) out.push_back(t.id);
  }
  return out;
}

GtfsFeed load_gtfs(const std::string& dir) {
  GtfsFeed feed;

  CsvTable stops = CsvTable::read_file(dir + "/stops.txt");
  std::unordered_set<std::string> stop_ids;
  for (std::size_t r = 0; r < stops.row_count(); ++r) {
    GtfsStop s;
    s.id = stops.cell(r, "stop_id");
    s.pos.x = stops.cell_double(r, "stop_lon");
    s.pos.y = stops.cell_double(r, "stop_lat");
    if (!stop_ids.insert(s.id).second)
      throw InputError(dir + "/stops.txt line " +
                       std::to_string(stops.file_line(r)) +
                       ": duplicate stop_id '" + s.id + "'");
    feed.stops.push_back(std::move(s));
  }

  CsvTable routes = CsvTable::read_file(dir + "/routes.txt");
  std::unordered_set<std::string> route_ids;
  for (std::size_t r = 0; r < routes.row_count(); ++r) {
    std::string id = routes.cell(r, "route_id");
    if (!route_ids.insert(id).second)
      throw InputError(dir + "/routes.txt line " +
                       std::to_string(routes.file_line(r)) +
                       ": duplicate route_id '" + id + "'");
    feed.routes.push_back(std::move(id));
  }

  CsvTable trips = CsvTable::read_file(dir + "/trips.txt");
  std::unordered_set<std::string> trip_ids;
  for (std::size_t r = 0; r < trips.row_count(); ++r) {
    GtfsTrip t;
    t.id = trips.cell(r, "trip_id");
    t.route_id = trips.cell(r, "route_id");
    t.service_id = trips.cell(r, "service_id");
    if (!route_ids.count(t.route_id))
      throw InputError(dir + "/trips.txt line " +
                       std::to_string(trips.file_line(r)) +
                       ": unknown route_id '" + t.route_id + "'");
    if (!trip_ids.insert(t.id).second)
      throw InputError(dir + "/trips.txt line " +
                       std::to_string(trips.file_line(r)) +
                       ": duplicate trip_id '" + t.id + "'");
    feed.trips.push_back(std::move(t));
  }

  CsvTable st = CsvTable::read_file(dir + "/stop_times.txt");
  for (std::size_t r = 0; r < st.row_count(); ++r) {
    GtfsStopTime s;
    s.trip_id = st.cell(r, "trip_id");
    std::string where = dir + "/stop_times.txt line " +
                        std::to_string(st.file_line(r));
    s.arrival = parse_hms(st.cell(r, "arrival_time"), where);
    s.departure = parse_hms(st.cell(r, "departure_time"), where);
    s.stop_id = st.cell(r, "stop_id");
    s.seq = static_cast<int>(st.cell_int(r, "stop_sequence"));
    if (!trip_ids.count(s.trip_id))
      throw InputError(where + ": unknown trip_id '" + s.trip_id + "'");
    if (!stop_ids.count(s.stop_id))
      throw InputError(where + ": unknown stop_id '" + s.stop_id + "'");
    if (s.departure < s.arrival)
      throw InputError(where + ": departure before arrival");
    feed.stop_times.push_back(std::move(s));
  }
  std::stable_sort(feed.stop_times.begin(), feed.stop_times.end(),
                   [](const GtfsStopTime& a, const GtfsStopTime& b) {
                     if (a.trip_id != b.trip_id) return a.trip_id < b.trip_id;
                     return a.seq < b.seq;
                   });
  for (std::size_t i = 1; i < feed.stop_times.size(); ++i) {
    const auto& prev = feed.stop_times[i - 1];
    const auto& cur = feed.stop_times[i];
    if (prev.trip_id != cur.trip_id) continue;
    if (cur.seq == prev.seq)
      throw InputError(dir + "/stop_times.txt: trip '" + cur.trip_id +
                       "' repeats stop_sequence " + std::to_string(cur.seq));
    if (cur.arrival < prev.departure)
      throw InputError(dir + "/stop_times.txt: trip '" + cur.trip_id +
                       "' times decrease at stop_sequence " +
                       std::to_string(cur.seq));
  }

  CsvTable cal = CsvTable::read_file(dir + "/calendar.txt");
  static const char* kDays[7] = {"monday", "tuesday",  "wednesday", "thursday",
                                 "friday", "saturday", "sunday"};
  for (std::size_t r = 0; r < cal.row_count(); ++r) {
    GtfsService s;
    s.id = cal.cell(r, "service_id");
    for (int d = 0; d < 7; ++d) s.weekday[d] = cal.cell_int(r, kDays[d]) != 0;
    s.start_date = static_cast<int>(cal.cell_int(r, "start_date"));
    s.end_date = static_cast<int>(cal.cell_int(r, "end_date"));
    feed.services.emplace(s.id, std::move(s));
  }

  return feed;
}

}  // namespace trs
