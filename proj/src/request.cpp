#include "trs/request.hpp"

#include <fstream>
#include <unordered_set>

#include "trs/csv.hpp"

namespace trs {

TimeWindows derive_windows(const Request& r, const TravelTimeOracle& oracle) {
  Seconds direct = oracle.travel_time(r.origin, r.destination);
  if (!is_reachable(direct))
    throw InputError("disconnected request " + r.id + ": node " +
                     std::to_string(r.destination) + " unreachable from " +
                     std::to_string(r.origin));
  TimeWindows w;
  w.earliest_depart = r.pref_depart - r.sched_dev;
  w.latest_depart = r.pref_depart + r.sched_dev;
  w.earliest_arrive = r.pref_arrive - r.sched_dev;
  w.latest_arrive = r.pref_arrive + r.sched_dev;
  w.max_ride = direct + r.travel_delay;
  return w;
}

std::string request_problem(const Request& r) {
  if (r.id.empty()) return "empty id";
  if (r.sched_dev < 0) return "negative schedule deviation";
  if (r.travel_delay < 0) return "negative travel delay";
  if (r.origin == r.destination) return "origin equals destination";
  if (r.announce_time > r.pref_depart - r.sched_dev)
    return "announced after earliest departure";
  return "";
}

std::vector<Request> load_requests(const std::string& path) {
  CsvTable t = CsvTable::read_file(path);
  std::vector<Request> out;
  std::unordered_set<std::string> seen;
  for (std::size_t row = 0; row < t.row_count(); ++row) {
    Request r;
    r.id = t.cell(row, "id");
    const std::string& role = t.cell(row, "role");
    if (role == "rider") {
      r.role = Role::Rider;
    } else if (role == "driver") {
      r.role = Role::Driver;
    } else {
      throw InputError(path + " line " + std::to_string(t.file_line(row)) +
                       ": bad role '" + role + "'");
    }
    r.origin = t.cell_int(row, "origin_node");
    r.destination = t.cell_int(row, "dest_node");
    r.announce_time = t.cell_int(row, "announce_time");
    r.pref_depart = t.cell_int(row, "pref_depart");
    r.pref_arrive = t.cell_int(row, "pref_arrive");
    r.sched_dev = t.cell_int(row, "sched_dev");
    r.travel_delay = t.cell_int(row, "travel_delay");
    if (!seen.insert(r.id).second)
      throw InputError(path + " line " + std::to_string(t.file_line(row)) +
                       ": duplicate request id '" + r.id + "'");
    std::string problem = request_problem(r);
    if (!problem.empty())
      throw InputError(path + " line " + std::to_string(t.file_line(row)) +
                       ": " + problem);
    out.push_back(std::move(r));
  }
  return out;
}

void save_requests(const std::vector<Request>& reqs, const std::string& path,
                   const std::string& provenance) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  if (!provenance.empty()) out << "# " << provenance << "\n";
  out << "id,role,origin_node,dest_node,announce_time,pref_depart,"
         "pref_arrive,sched_dev,travel_delay\n";
  for (const auto& r : reqs) {
    out << r.id << ',' << to_string(r.role) << ',' << r.origin << ','
        << r.destination << ',' << r.announce_time << ',' << r.pref_depart
        << ',' << r.pref_arrive << ',' << r.sched_dev << ',' << r.travel_delay
        << '\n';
  }
}

}  // namespace trs
