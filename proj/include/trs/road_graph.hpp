#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "trs/geo.hpp"
#include "trs/types.hpp"

namespace trs {

struct RoadNode {
  NodeId id = 0;
  Point pos;
};

struct RoadArc {
  std::uint32_t from = 0;  // dense index
  std::uint32_t to = 0;
  Seconds travel_time = 0;
};

// Directed road network with nonnegative integer travel times.  Node ids are
// arbitrary nonnegative integers from the input; internally everything runs
// on dense indices.
class RoadGraph {
 public:
  static RoadGraph load(const std::string& nodes_path,
                        const std::string& links_path);
  static RoadGraph from_memory(const std::vector<RoadNode>& nodes,
                               const std::vector<std::tuple<NodeId, NodeId, Seconds>>& links);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t arc_count() const { return arcs_.size(); }

  bool has_node(NodeId id) const { return index_.count(id) > 0; }
  // Throws InputError for unknown ids.
  std::uint32_t index_of(NodeId id) const;
  NodeId id_of(std::uint32_t idx) const { return nodes_[idx].id; }
  const RoadNode& node(std::uint32_t idx) const { return nodes_[idx]; }
  const std::vector<RoadNode>& nodes() const { return nodes_; }

  // Outgoing (or incoming, for the reverse view) arcs of a node, ordered by
  // target index for deterministic scans.
  const std::vector<std::pair<std::uint32_t, Seconds>>& out(std::uint32_t i) const {
    return fwd_[i];
  }
  const std::vector<std::pair<std::uint32_t, Seconds>>& in(std::uint32_t i) const {
    return bwd_[i];
  }

 private:
  void finalize();

  std::vector<RoadNode> nodes_;
  std::vector<RoadArc> arcs_;
  std::unordered_map<NodeId, std::uint32_t> index_;
  std::vector<std::vector<std::pair<std::uint32_t, Seconds>>> fwd_;
  std::vector<std::vector<std::pair<std::uint32_t, Seconds>>> bwd_;
};

// Single-source shortest-path tree (times in seconds, kUnreachable where no
// path exists).  `pred` holds the dense index of the parent, or UINT32_MAX.
struct SpTree {
  std::vector<Seconds> dist;
  std::vector<std::uint32_t> pred;
};

// Shortest-travel-time oracle over a RoadGraph.  Per-source trees are built
// lazily with Dijkstra and cached; the cache is internally synchronized so
// concurrent feasibility searches can share one oracle.  Ties in the
// priority queue break toward the smaller node index, which pins the
// shortest-path tree shape for deterministic reruns.
class TravelTimeOracle {
 public:
  explicit TravelTimeOracle(const RoadGraph& g) : g_(g) {}

  // Travel time i -> j in seconds; kUnreachable when no path exists.
  // Throws InputError when either id is not in the graph.
  Seconds travel_time(NodeId from, NodeId to) const;

  // Whole-tree handles for hot loops.  Forward trees give t(source, *);
  // backward trees give t(*, target) over reversed arcs.
  std::shared_ptr<const SpTree> forward_tree(NodeId source) const;
  std::shared_ptr<const SpTree> backward_tree(NodeId target) const;

  const RoadGraph& graph() const { return g_; }
  std::size_t cached_tree_count() const;

 private:
  std::shared_ptr<const SpTree> tree(std::uint32_t src, bool backward) const;

  const RoadGraph& g_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::uint32_t, std::shared_ptr<const SpTree>> fwd_cache_;
  mutable std::unordered_map<std::uint32_t, std::shared_ptr<const SpTree>> bwd_cache_;
};

// Dijkstra from `src` over the forward (or reversed) arc lists.  Exposed for
// direct use by tests; the oracle is the cached front door.
SpTree dijkstra(const RoadGraph& g, std::uint32_t src, bool backward);

}  // namespace trs
