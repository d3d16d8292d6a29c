#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "trs/geo.hpp"
#include "trs/types.hpp"

namespace trs {

enum class LinkKind : std::uint8_t {
  Access = 0,       // road anchor -> boarding node, walk (plus mode change)
  Egress = 1,       // alighting node -> road anchor or stop-side walk
  InVehicle = 2,    // consecutive stop events of one trip
  WaitTransfer = 3, // same place, later vehicle: pure waiting
  WalkTransfer = 4, // different stop within walking range, walk plus wait
};

constexpr int kLinkKindCount = 5;
const char* to_string(LinkKind k);
LinkKind parse_link_kind(const std::string& s);

// One vertex of the schedule-expanded transit graph.  Scheduled vehicle
// visits carry their trip/route identity; plain places (road anchors, and
// stop vertices in hand-built fixtures) leave those fields empty.
struct TransitNode {
  std::int64_t id = 0;        // dense, equals position in the node vector
  std::string stop;           // source stop id, empty for road anchors
  std::string trip;           // empty for non-vehicle vertices
  std::string route;
  Seconds sched_time = 0;     // scheduled departure at this vertex
  int seq = 0;                // position along the trip, 1-based
  Point pos;
  NodeId road_node = 0;       // nearest road node (the drop-off handoff point)
  bool anchor = false;        // true when this vertex mirrors a road node
};

struct TransitLink {
  std::int64_t id = 0;  // dense, equals position in the link vector
  std::int64_t from = 0;
  std::int64_t to = 0;
  LinkKind kind = LinkKind::Access;
  Seconds traverse_time = 0;  // door-to-door duration of taking this link
};

// Immutable after construction.  Adjacency is exposed as link-id lists in
// both directions, each sorted by the neighbouring node id so scans are
// reproducible.
class TransitGraph {
 public:
  TransitGraph() = default;
  TransitGraph(std::vector<TransitNode> nodes, std::vector<TransitLink> links,
               CoordFrame frame);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t link_count() const { return links_.size(); }
  CoordFrame frame() const { return frame_; }

  const TransitNode& node(std::int64_t id) const { return nodes_.at(std::size_t(id)); }
  const TransitLink& link(std::int64_t id) const { return links_.at(std::size_t(id)); }
  const std::vector<TransitNode>& nodes() const { return nodes_; }
  const std::vector<TransitLink>& links() const { return links_; }

  // Link ids leaving / entering the node, sorted by the far endpoint's id.
  const std::vector<std::int64_t>& forward_star(std::int64_t node) const {
    return fwd_.at(std::size_t(node));
  }
  const std::vector<std::int64_t>& backward_star(std::int64_t node) const {
    return bwd_.at(std::size_t(node));
  }

  // Transit vertex mirroring the given road node, or -1 when the road node
  // was not an anchor at build time.
  std::int64_t anchor_for_road(NodeId road) const;

  std::array<std::size_t, kLinkKindCount> link_counts() const;

  // Versioned text dump; load() rejects unknown versions.  Writing the same
  // graph twice yields identical bytes.
  void save(const std::string& path) const;
  static TransitGraph load(const std::string& path);

 private:
  void build_stars();

  std::vector<TransitNode> nodes_;
  std::vector<TransitLink> links_;
  std::vector<std::vector<std::int64_t>> fwd_;
  std::vector<std::vector<std::int64_t>> bwd_;
  std::unordered_map<NodeId, std::int64_t> anchor_index_;
  CoordFrame frame_ = CoordFrame::Planar;
};

}  // namespace trs
