#include "trs/road_graph.hpp"

#include <algorithm>
#include <queue>

#include "trs/csv.hpp"

namespace trs {

RoadGraph RoadGraph::load(const std::string& nodes_path,
                          const std::string& links_path) {
  RoadGraph g;
  CsvTable nodes = CsvTable::read_file(nodes_path);
  for (std::size_t r = 0; r < nodes.row_count(); ++r) {
    RoadNode n;
    n.id = nodes.cell_int(r, "id");
    n.pos.x = nodes.cell_double(r, "x");
    n.pos.y = nodes.cell_double(r, "y");
    if (g.index_.count(n.id))
      throw InputError(nodes_path + " line " + std::to_string(nodes.file_line(r)) +
                       ": duplicate node id " + std::to_string(n.id));
    g.index_.emplace(n.id, static_cast<std::uint32_t>(g.nodes_.size()));
    g.nodes_.push_back(n);
  }
  CsvTable links = CsvTable::read_file(links_path);
  for (std::size_t r = 0; r < links.row_count(); ++r) {
    NodeId from = links.cell_int(r, "from");
    NodeId to = links.cell_int(r, "to");
    Seconds t = links.cell_int(r, "travel_time_seconds");
    auto fi = g.index_.find(from);
    auto ti = g.index_.find(to);
    if (fi == g.index_.end() || ti == g.index_.end())
      throw InputError(links_path + " line " + std::to_string(links.file_line(r)) +
                       ": link references unknown node");
    if (t < 0)
      throw InputError(links_path + " line " + std::to_string(links.file_line(r)) +
                       ": negative travel time");
    g.arcs_.push_back({fi->second, ti->second, t});
  }
  g.finalize();
  return g;
}

RoadGraph RoadGraph::from_memory(
    const std::vector<RoadNode>& nodes,
    const std::vector<std::tuple<NodeId, NodeId, Seconds>>& links) {
  RoadGraph g;
  for (const auto& n : nodes) {
    if (g.index_.count(n.id))
      throw InputError("duplicate node id " + std::to_string(n.id));
    g.index_.emplace(n.id, static_cast<std::uint32_t>(g.nodes_.size()));
    g.nodes_.push_back(n);
  }
  for (const auto& [from, to, t] : links) {
    if (t < 0) throw InputError("negative travel time");
    g.arcs_.push_back({g.index_of(from), g.index_of(to), t});
  }
  g.finalize();
  return g;
}

void RoadGraph::finalize() {
  fwd_.assign(nodes_.size(), {});
  bwd_.assign(nodes_.size(), {});
  for (const auto& a : arcs_) {
    fwd_[a.from].emplace_back(a.to, a.travel_time);
    bwd_[a.to].emplace_back(a.from, a.travel_time);
  }
  for (auto& adj : fwd_) std::sort(adj.begin(), adj.end());
  for (auto& adj : bwd_) std::sort(adj.begin(), adj.end());
}

std::uint32_t RoadGraph::index_of(NodeId id) const {
  auto it = index_.find(id);
  if (it == index_.end())
    throw InputError("unknown road node " + std::to_string(id));
  return it->second;
}

SpTree dijkstra(const RoadGraph& g, std::uint32_t src, bool backward) {
  const std::size_t n = g.node_count();
  SpTree t;
  t.dist.assign(n, kUnreachable);
  t.pred.assign(n, UINT32_MAX);
  // Keyed (distance, node index); the index component breaks ties so scans
  // settle in a reproducible order.
  using Entry = std::pair<Seconds, std::uint32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
  t.dist[src] = 0;
  pq.push({0, src});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d != t.dist[u]) continue;  // stale entry
    const auto& adj = backward ? g.in(u) : g.out(u);
    for (const auto& [v, w] : adj) {
      Seconds nd = d + w;
      if (nd < t.dist[v] || (nd == t.dist[v] && u < t.pred[v])) {
        t.dist[v] = nd;
        t.pred[v] = u;
        pq.push({nd, v});
      }
    }
  }
  return t;
}

Seconds TravelTimeOracle::travel_time(NodeId from, NodeId to) const {
  auto tree = forward_tree(from);
  return tree->dist[g_.index_of(to)];
}

std::shared_ptr<const SpTree> TravelTimeOracle::forward_tree(NodeId source) const {
  return tree(g_.index_of(source), false);
}

std::shared_ptr<const SpTree> TravelTimeOracle::backward_tree(NodeId target) const {
  return tree(g_.index_of(target), true);
}

std::shared_ptr<const SpTree> TravelTimeOracle::tree(std::uint32_t src,
                                                     bool backward) const {
  auto& cache = backward ? bwd_cache_ : fwd_cache_;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache.find(src);
    if (it != cache.end()) return it->second;
  }
  // Built outside the lock; a racing duplicate build is harmless because the
  // result is identical and the first insert wins.
  auto built = std::make_shared<const SpTree>(dijkstra(g_, src, backward));
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = cache.emplace(src, built);
  return it->second;
}

std::size_t TravelTimeOracle::cached_tree_count() const {
  std::lock_guard<std::mutex> lock(mu_);
  return fwd_cache_.size() + bwd_cache_.size();
}

}  // namespace trs
