#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trs/types.hpp"

namespace trs {

// Coordinate interpretation for walking-distance computations.  Planar
// coordinates are in miles; geodetic coordinates are (x = longitude,
// y = latitude) in degrees and distances use the great-circle formula.
enum class CoordFrame { Planar, Geodetic };

CoordFrame parse_coord_frame(const std::string& s);
const char* to_string(CoordFrame f);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Distance in miles under the given frame.
double distance_miles(const Point& a, const Point& b, CoordFrame frame);

// Walking time, rounded up to whole seconds so that a nonzero distance never
// becomes a free link.
Seconds walk_seconds(double miles, double walk_speed_mph);

// Uniform-cell spatial index over a fixed point set.  Lookups are exact: the
// grid only narrows the candidate set, every survivor is distance-checked.
class SpatialGrid {
 public:
  // `ids` supplies the tie-breaking identity for nearest(); entries with the
  // same coordinates are resolved toward the smallest id.
  SpatialGrid(std::vector<Point> points, std::vector<std::int64_t> ids,
              CoordFrame frame);

  // Indices (positions in the input vector) of all points within `radius_mi`.
  // Results are sorted by input index.
  std::vector<std::size_t> within(const Point& q, double radius_mi) const;

  // Input index of the nearest point; ties broken toward the smallest id.
  // Returns npos for an empty point set.
  std::size_t nearest(const Point& q) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  struct Cell {
    std::vector<std::uint32_t> members;
  };
  std::int64_t cell_x(double x) const;
  std::int64_t cell_y(double y) const;
  const Cell* find_cell(std::int64_t cx, std::int64_t cy) const;

  std::vector<Point> pts_;
  std::vector<std::int64_t> ids_;
  CoordFrame frame_;
  double cell_mi_ = 0.25;
  double deg_per_mile_x_ = 0.0;  // geodetic only
  double deg_per_mile_y_ = 0.0;
  std::vector<std::pair<std::int64_t, Cell>> cells_;  // sorted by key
  std::vector<std::int64_t> keys_;
};

}  // namespace trs
