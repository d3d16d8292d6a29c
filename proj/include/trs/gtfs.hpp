#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "trs/geo.hpp"
#include "trs/types.hpp"

namespace trs {

struct GtfsStop {
  std::string id;
  Point pos;  // x = lon, y = lat for geodetic feeds
};

struct GtfsTrip {
  std::string id;
  std::string route_id;
  std::string service_id;
};

struct GtfsStopTime {
  std::string trip_id;
  Seconds arrival = 0;
  Seconds departure = 0;
  std::string stop_id;
  int seq = 0;
};

struct GtfsService {
  std::string id;
  bool weekday[7] = {false, false, false, false, false, false, false};  // Mon..Sun
  int start_date = 0;  // YYYYMMDD
  int end_date = 0;
};

struct GtfsFeed {
  std::vector<GtfsStop> stops;
  std::vector<std::string> routes;
  std::vector<GtfsTrip> trips;
  std::vector<GtfsStopTime> stop_times;  // sorted by (trip_id, seq)
  std::unordered_map<std::string, GtfsService> services;

  const GtfsStop* find_stop(const std::string& id) const;

  // Trip ids whose service runs on the given date (YYYYMMDD).  A date of 0
  // keeps every trip.  Trips with an unknown service id are dropped.
  std::vector<std::string> active_trips(int date) const;
};

// Reads stops.txt, routes.txt, trips.txt, stop_times.txt and calendar.txt
// from a directory.  Cross-references are checked; stop_times must have
// nondecreasing times along each trip.  Violations raise InputError naming
// the file and row.
GtfsFeed load_gtfs(const std::string& dir);

// True when `date` (YYYYMMDD) falls in the service's range on an active
// weekday.  Exposed for tests.
bool service_runs_on(const GtfsService& s, int date);

}  // namespace trs
