#include "trs/geo.hpp"

#include <algorithm>
#include <cmath>

namespace trs {

namespace {

constexpr double kEarthRadiusMiles = 3958.7613;
constexpr double kPi = 3.14159265358979323846;

double deg2rad(double d) { return d * kPi / 180.0; }

}  // namespace

CoordFrame parse_coord_frame(const std::string& s) {
  if (s == "planar") return CoordFrame::Planar;
  if (s == "geodetic") return CoordFrame::Geodetic;
  throw InputError("unknown coordinate frame '" + s +
                   "' (want planar or geodetic)");
}

const char* to_string(CoordFrame f) {
  return f == CoordFrame::Planar ? "planar" : "geodetic";
}

double distance_miles(const Point& a, const Point& b, CoordFrame frame) {
  if (frame == CoordFrame::Planar) {
    return std::hypot(a.x - b.x, a.y - b.y);
  }
  // Haversine on (lon, lat) degrees.
  double lat1 = deg2rad(a.y), lat2 = deg2rad(b.y);
  double dlat = lat2 - lat1;
  double dlon = deg2rad(b.x - a.x);
  double h = std::sin(dlat / 2) * std::sin(dlat / 2) +
             std::cos(lat1) * std::cos(lat2) * std::sin(dlon / 2) *
                 std::sin(dlon / 2);
  return 2.0 * kEarthRadiusMiles * std::asin(std::min(1.0, std::sqrt(h)));
}

Seconds walk_seconds(double miles, double walk_speed_mph) {
  if (miles <= 0.0) return 0;
  return static_cast<Seconds>(std::ceil(miles / walk_speed_mph * 3600.0));
}

SpatialGrid::SpatialGrid(std::vector<Point> points, std::vector<std::int64_t> ids,
                         CoordFrame frame)
    : pts_(std::move(points)), ids_(std::move(ids)), frame_(frame) {
  if (ids_.size() != pts_.size())
    throw InvariantError("SpatialGrid: point/id size mismatch");
  if (frame_ == CoordFrame::Geodetic) {
    // Degrees-per-mile conversion anchored at the point-set centroid latitude.
    double lat_sum = 0.0;
    for (const auto& p : pts_) lat_sum += p.y;
    double lat = pts_.empty() ? 0.0 : lat_sum / double(pts_.size());
    deg_per_mile_y_ = 360.0 / (2.0 * kPi * kEarthRadiusMiles);
    double cosl = std::max(0.05, std::cos(deg2rad(lat)));
    deg_per_mile_x_ = deg_per_mile_y_ / cosl;
  }
  std::vector<std::pair<std::int64_t, std::uint32_t>> entries;
  entries.reserve(pts_.size());
  for (std::size_t i = 0; i < pts_.size(); ++i) {
    std::int64_t key = cell_x(pts_[i].x) * 0x100000 + cell_y(pts_[i].y);
    entries.emplace_back(key, static_cast<std::uint32_t>(i));
  }
  std::sort(entries.begin(), entries.end());
  for (const auto& [key, idx] : entries) {
    if (cells_.empty() || cells_.back().first != key) {
      cells_.push_back({key, {}});
      keys_.push_back(key);
    }
    cells_.back().second.members.push_back(idx);
  }
}

std::int64_t SpatialGrid::cell_x(double x) const {
  double unit = frame_ == CoordFrame::Planar ? cell_mi_ : cell_mi_ * deg_per_mile_x_;
  return static_cast<std::int64_t>(std::floor(x / unit));
}

std::int64_t SpatialGrid::cell_y(double y) const {
  double unit = frame_ == CoordFrame::Planar ? cell_mi_ : cell_mi_ * deg_per_mile_y_;
  return static_cast<std::int64_t>(std::floor(y / unit));
}

const SpatialGrid::Cell* SpatialGrid::find_cell(std::int64_t cx,
                                                std::int64_t cy) const {
  std::int64_t key = cx * 0x100000 + cy;
  auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key) return nullptr;
  return &cells_[std::size_t(it - keys_.begin())].second;
}

std::vector<std::size_t> SpatialGrid::within(const Point& q,
                                             double radius_mi) const {
  std::vector<std::size_t> out;
  if (pts_.empty() || radius_mi < 0.0) return out;
  std::int64_t span = static_cast<std::int64_t>(std::ceil(radius_mi / cell_mi_)) + 1;
  std::int64_t qx = cell_x(q.x), qy = cell_y(q.y);
  for (std::int64_t cx = qx - span; cx <= qx + span; ++cx) {
    for (std::int64_t cy = qy - span; cy <= qy + span; ++cy) {
      const Cell* c = find_cell(cx, cy);
      if (!c) continue;
      for (std::uint32_t i : c->members) {
        if (distance_miles(q, pts_[i], frame_) <= radius_mi) out.push_back(i);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t SpatialGrid::nearest(const Point& q) const {
  if (pts_.empty()) return npos;
  // Expanding ring search.  A point stored in a cell at Chebyshev ring
  // distance k lies at least (k - 1) cell widths away, so once a candidate
  // at distance d is known, rings beyond d / cell + 2 cannot improve on it
  // (the extra ring absorbs geodetic cell-width skew).
  std::int64_t qx = cell_x(q.x), qy = cell_y(q.y);
  std::size_t best = npos;
  double best_d = 0.0;
  auto consider = [&](std::uint32_t i) {
    double d = distance_miles(q, pts_[i], frame_);
    if (best == npos || d < best_d || (d == best_d && ids_[i] < ids_[best])) {
      best = i;
      best_d = d;
    }
  };
  for (std::int64_t ring = 0;; ++ring) {
    for (std::int64_t cx = qx - ring; cx <= qx + ring; ++cx) {
      for (std::int64_t cy = qy - ring; cy <= qy + ring; ++cy) {
        if (std::max(std::llabs(cx - qx), std::llabs(cy - qy)) != ring) continue;
        const Cell* c = find_cell(cx, cy);
        if (!c) continue;
        for (std::uint32_t i : c->members) consider(i);
      }
    }
    if (best != npos) {
      std::int64_t safe =
          static_cast<std::int64_t>(std::ceil(best_d / cell_mi_)) + 2;
      if (ring >= safe) break;
    }
    if (ring > (std::int64_t(1) << 22)) break;  // degenerate coordinates guard
  }
  return best;
}

}  // namespace trs
