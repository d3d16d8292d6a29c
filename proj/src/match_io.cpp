#include <cstdio>
#include <fstream>

#include "trs/csv.hpp"
#include "trs/feasibility.hpp"

namespace trs {

MatchVariant parse_match_variant(const std::string& s) {
  if (s == "first-mile") return MatchVariant::FirstMile;
  if (s == "last-mile") return MatchVariant::LastMile;
  if (s == "rideshare") return MatchVariant::PureRideshare;
  throw InputError("unknown match variant '" + s +
                   "' (first-mile|last-mile|rideshare)");
}

void save_matches(const MatchTable& table, const std::string& path,
                  const std::string& provenance) {
  if (table.selected.size() != table.matches.size())
    throw InvariantError("match table selection flags out of step");
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  if (!provenance.empty()) out << "# " << provenance << "\n";
  out << "rider,driver,dropoff_node,depart_time,arrive_time,t_drive,"
         "t_transit,t_walk,t_wait,n_transfers,t_vhrs,itinerary,variant,"
         "handoff_node,handoff_road,pickup_time,dropoff_time,driver_arrive,"
         "gen_cost,selected\n";
  char cost[40];
  for (std::size_t i = 0; i < table.matches.size(); ++i) {
    const FeasibleMatch& m = table.matches[i];
    std::string itin;
    for (std::size_t k = 0; k < m.itinerary.size(); ++k) {
      if (k) itin += ';';
      itin += std::to_string(m.itinerary[k]);
    }
    std::snprintf(cost, sizeof cost, "%.17g", m.gen_cost);
    out << m.rider << ',' << m.driver << ',' << m.dropoff_road << ','
        << m.depart_time << ',' << m.arrive_time << ',' << m.t_drive << ','
        << m.t_transit << ',' << m.t_walk << ',' << m.t_wait << ','
        << m.n_transfers << ',' << m.t_vhrs << ',' << itin << ','
        << to_string(m.variant) << ',' << m.handoff_node << ','
        << m.handoff_road << ',' << m.pickup_time << ',' << m.dropoff_time
        << ',' << m.driver_arrive << ',' << cost << ','
        << (table.selected[i] ? 1 : 0) << '\n';
  }
  if (!out) throw InputError("write to " + path + " failed");
}

MatchTable load_matches(const std::string& path) {
  CsvTable t = CsvTable::read_file(path);
  MatchTable table;
  for (std::size_t row = 0; row < t.row_count(); ++row) {
    FeasibleMatch m;
    m.rider = t.cell(row, "rider");
    m.driver = t.cell(row, "driver");
    m.dropoff_road = t.cell_int(row, "dropoff_node");
    m.depart_time = t.cell_int(row, "depart_time");
    m.arrive_time = t.cell_int(row, "arrive_time");
    m.t_drive = t.cell_int(row, "t_drive");
    m.t_transit = t.cell_int(row, "t_transit");
    m.t_walk = t.cell_int(row, "t_walk");
    m.t_wait = t.cell_int(row, "t_wait");
    m.n_transfers = int(t.cell_int(row, "n_transfers"));
    m.t_vhrs = t.cell_int(row, "t_vhrs");
    const std::string& itin = t.cell(row, "itinerary");
    if (!itin.empty()) {
      for (const std::string& part : split_delimited(itin, ';')) {
        try {
          m.itinerary.push_back(std::stoll(part));
        } catch (const std::exception&) {
          throw InputError(path + " line " + std::to_string(t.file_line(row)) +
                           ": bad itinerary entry '" + part + "'");
        }
      }
    }
    m.variant = parse_match_variant(t.cell(row, "variant"));
    m.handoff_node = t.cell_int(row, "handoff_node");
    m.handoff_road = t.cell_int(row, "handoff_road");
    m.pickup_time = t.cell_int(row, "pickup_time");
    m.dropoff_time = t.cell_int(row, "dropoff_time");
    m.driver_arrive = t.cell_int(row, "driver_arrive");
    m.gen_cost = t.cell_double(row, "gen_cost");
    table.matches.push_back(std::move(m));
    table.selected.push_back(t.cell_int(row, "selected") != 0 ? 1 : 0);
  }
  return table;
}

}  // namespace trs
