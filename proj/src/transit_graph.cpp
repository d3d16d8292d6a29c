#include "trs/transit_graph.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "trs/csv.hpp"

namespace trs {

namespace {
constexpr const char* kMagic = "TRSNET";
constexpr int kVersion = 1;
}  // namespace

const char* to_string(LinkKind k) {
  switch (k) {
    case LinkKind::Access: return "access";
    case LinkKind::Egress: return "egress";
    case LinkKind::InVehicle: return "invehicle";
    case LinkKind::WaitTransfer: return "waittransfer";
    case LinkKind::WalkTransfer: return "walktransfer";
  }
  return "?";
}

LinkKind parse_link_kind(const std::string& s) {
  if (s == "access") return LinkKind::Access;
  if (s == "egress") return LinkKind::Egress;
  if (s == "invehicle") return LinkKind::InVehicle;
  if (s == "waittransfer") return LinkKind::WaitTransfer;
  if (s == "walktransfer") return LinkKind::WalkTransfer;
  throw InputError("unknown link kind '" + s + "'");
}

TransitGraph::TransitGraph(std::vector<TransitNode> nodes,
                           std::vector<TransitLink> links, CoordFrame frame)
    : nodes_(std::move(nodes)), links_(std::move(links)), frame_(frame) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].id != std::int64_t(i))
      throw InvariantError("transit node ids must be dense and ordered");
    if (nodes_[i].anchor) anchor_index_.emplace(nodes_[i].road_node, nodes_[i].id);
  }
  for (std::size_t i = 0; i < links_.size(); ++i) {
    const auto& l = links_[i];
    if (l.id != std::int64_t(i))
      throw InvariantError("transit link ids must be dense and ordered");
    if (l.from < 0 || std::size_t(l.from) >= nodes_.size() || l.to < 0 ||
        std::size_t(l.to) >= nodes_.size())
      throw InvariantError("transit link endpoint out of range");
    if (l.traverse_time < 0)
      throw InvariantError("negative transit link traverse time");
  }
  build_stars();
}

void TransitGraph::build_stars() {
  fwd_.assign(nodes_.size(), {});
  bwd_.assign(nodes_.size(), {});
  for (const auto& l : links_) {
    fwd_[std::size_t(l.from)].push_back(l.id);
    bwd_[std::size_t(l.to)].push_back(l.id);
  }
  for (auto& star : fwd_) {
    std::sort(star.begin(), star.end(), [this](std::int64_t a, std::int64_t b) {
      if (links_[a].to != links_[b].to) return links_[a].to < links_[b].to;
      return a < b;
    });
  }
  for (auto& star : bwd_) {
    std::sort(star.begin(), star.end(), [this](std::int64_t a, std::int64_t b) {
      if (links_[a].from != links_[b].from) return links_[a].from < links_[b].from;
      return a < b;
    });
  }
}

std::int64_t TransitGraph::anchor_for_road(NodeId road) const {
  auto it = anchor_index_.find(road);
  return it == anchor_index_.end() ? -1 : it->second;
}

std::array<std::size_t, kLinkKindCount> TransitGraph::link_counts() const {
  std::array<std::size_t, kLinkKindCount> c{};
  for (const auto& l : links_) c[std::size_t(l.kind)]++;
  return c;
}

void TransitGraph::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << kMagic << ' ' << kVersion << '\n';
  out << "frame " << to_string(frame_) << '\n';
  out << "nodes " << nodes_.size() << '\n';
  out << "# id,stop,trip,route,sched_time,seq,x,y,road_node,anchor\n";
  char buf[64];
  for (const auto& n : nodes_) {
    std::snprintf(buf, sizeof buf, "%.9g,%.9g", n.pos.x, n.pos.y);
    out << n.id << ',' << n.stop << ',' << n.trip << ',' << n.route << ','
        << n.sched_time << ',' << n.seq << ',' << buf << ',' << n.road_node
        << ',' << (n.anchor ? 1 : 0) << '\n';
  }
  out << "links " << links_.size() << '\n';
  out << "# id,from,to,kind,traverse_time\n";
  for (const auto& l : links_) {
    out << l.id << ',' << l.from << ',' << l.to << ',' << to_string(l.kind)
        << ',' << l.traverse_time << '\n';
  }
}

TransitGraph TransitGraph::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::string magic;
  int version = 0;
  in >> magic >> version;
  if (magic != kMagic)
    throw InputError(path + ": not a transit network dump");
  if (version != kVersion)
    throw InputError(path + ": unsupported network dump version " +
                     std::to_string(version));
  std::string key;
  std::string frame_word;
  in >> key >> frame_word;
  if (key != "frame") throw InputError(path + ": expected frame line");
  CoordFrame frame = parse_coord_frame(frame_word);

  std::size_t n_nodes = 0;
  in >> key >> n_nodes;
  if (key != "nodes") throw InputError(path + ": expected nodes line");
  std::string line;
  std::getline(in, line);  // finish the count line
  auto next_row = [&](const char* what) {
    while (std::getline(in, line)) {
      if (!line.empty() && line[0] != '#') return;
    }
    throw InputError(path + ": truncated " + std::string(what) + " section");
  };
  std::vector<TransitNode> nodes;
  nodes.reserve(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    next_row("node");
    auto f = split_delimited(line, ',');
    if (f.size() != 10)
      throw InputError(path + ": bad node row '" + line + "'");
    TransitNode n;
    n.id = std::stoll(f[0]);
    n.stop = f[1];
    n.trip = f[2];
    n.route = f[3];
    n.sched_time = std::stoll(f[4]);
    n.seq = std::stoi(f[5]);
    n.pos.x = std::stod(f[6]);
    n.pos.y = std::stod(f[7]);
    n.road_node = std::stoll(f[8]);
    n.anchor = f[9] == "1";
    nodes.push_back(std::move(n));
  }

  std::size_t n_links = 0;
  in >> key >> n_links;
  if (key != "links") throw InputError(path + ": expected links line");
  std::getline(in, line);
  std::vector<TransitLink> links;
  links.reserve(n_links);
  for (std::size_t i = 0; i < n_links; ++i) {
    next_row("link");
    auto f = split_delimited(line, ',');
    if (f.size() != 5)
      throw InputError(path + ": bad link row '" + line + "'");
    TransitLink l;
    l.id = std::stoll(f[0]);
    l.from = std::stoll(f[1]);
    l.to = std::stoll(f[2]);
    l.kind = parse_link_kind(f[3]);
    l.traverse_time = std::stoll(f[4]);
    links.push_back(l);
  }
  return TransitGraph(std::move(nodes), std::move(links), frame);
}

}  // namespace trs
