#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "trs/csv.hpp"
#include "trs/geo.hpp"
#include "trs/road_graph.hpp"

using namespace trs;

namespace {

namespace fs = std::filesystem;

fs::path temp_file(const std::string& name, const std::string& content) {
  fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p);
  out << content;
  return p;
}

// Reference all-pairs times by Bellman-Ford relaxation sweeps.
std::vector<std::vector<Seconds>> all_pairs_reference(
    std::size_t n, const std::vector<std::tuple<NodeId, NodeId, Seconds>>& links) {
  std::vector<std::vector<Seconds>> dist(n, std::vector<Seconds>(n, kUnreachable));
  for (std::size_t s = 0; s < n; ++s) {
    dist[s][s] = 0;
    for (std::size_t round = 0; round + 1 < n; ++round) {
      bool changed = false;
      for (const auto& [u, v, w] : links) {
        Seconds du = dist[s][std::size_t(u)];
        if (!is_reachable(du)) continue;
        if (du + w < dist[s][std::size_t(v)]) {
          dist[s][std::size_t(v)] = du + w;
          changed = true;
        }
      }
      if (!changed) break;
    }
  }
  return dist;
}

}  // namespace

TEST_CASE("csv parses headers, quoting and comment lines") {
  CsvTable t = CsvTable::from_string(
      "# provenance line\n"
      "id,name,note\n"
      "1,\"a,b\",plain\n"
      "\n"
      "2,c,\"he said \"\"hi\"\"\"\n",
      "mem.csv");
  REQUIRE(t.row_count() == 2);
  CHECK(t.cell(0, "name") == "a,b");
  CHECK(t.cell(1, "note") == "he said \"hi\"");
  CHECK(t.cell_int(1, "id") == 2);
  CHECK(t.file_line(1) == 5);
  CHECK_THROWS_AS(t.cell(0, "missing"), InputError);
  CHECK_THROWS_AS(t.cell_int(0, "name"), InputError);
}

TEST_CASE("hms parsing accepts service times past midnight") {
  CHECK(parse_hms("00:00:00", "t") == 0);
  CHECK(parse_hms("06:30:15", "t") == 6 * 3600 + 30 * 60 + 15);
  CHECK(parse_hms("25:01:02", "t") == 25 * 3600 + 62);
  CHECK_THROWS_AS(parse_hms("6:30", "t"), InputError);
  CHECK_THROWS_AS(parse_hms("aa:bb:cc", "t"), InputError);
}

TEST_CASE("walking time rounds up and never comes out free") {
  CHECK(walk_seconds(0.0, 3.0) == 0);
  CHECK(walk_seconds(1.0, 3.0) == 1200);
  CHECK(walk_seconds(0.001, 3.0) == 2);  // 1.2 s of walking
  CHECK(walk_seconds(0.25, 3.0) == 300);
}

TEST_CASE("distances respect the coordinate frame") {
  Point a{0.0, 0.0}, b{3.0, 4.0};
  CHECK(distance_miles(a, b, CoordFrame::Planar) == doctest::Approx(5.0));
  // One degree of latitude is about 69 miles.
  Point lo{-93.0, 44.0}, hi{-93.0, 45.0};
  CHECK(distance_miles(lo, hi, CoordFrame::Geodetic) ==
        doctest::Approx(69.0).epsilon(0.01));
}

TEST_CASE("spatial grid finds neighbours and breaks ties by id") {
  std::vector<Point> pts = {{0, 0}, {1, 0}, {1.05, 0}, {5, 5}, {1, 0}};
  std::vector<std::int64_t> ids = {10, 7, 12, 3, 4};
  SpatialGrid grid(pts, ids, CoordFrame::Planar);

  auto near = grid.within({1, 0}, 0.1);
  CHECK(near == std::vector<std::size_t>{1, 2, 4});

  // Points 1 and 4 are equidistant (identical); the smaller id wins.
  CHECK(grid.nearest({1.01, 0}) == 4);
  CHECK(grid.nearest({5.2, 5.2}) == 3);
  CHECK(grid.nearest({-40, -40}) == 0);
}

TEST_CASE("road graph loads, validates, and rejects malformed tables") {
  auto nodes = temp_file("trs_nodes.csv", "id,x,y\n1,0,0\n2,1,0\n3,2,0\n");
  auto links = temp_file("trs_links.csv",
                         "from,to,travel_time_seconds\n1,2,60\n2,3,120\n");
  RoadGraph g = RoadGraph::load(nodes.string(), links.string());
  CHECK(g.node_count() == 3);
  CHECK(g.arc_count() == 2);
  TravelTimeOracle oracle(g);
  CHECK(oracle.travel_time(1, 3) == 180);
  CHECK(!is_reachable(oracle.travel_time(3, 1)));

  auto dup = temp_file("trs_nodes_dup.csv", "id,x,y\n1,0,0\n1,1,0\n");
  CHECK_THROWS_AS(RoadGraph::load(dup.string(), links.string()), InputError);

  auto bad_ref = temp_file("trs_links_ref.csv",
                           "from,to,travel_time_seconds\n1,9,60\n");
  CHECK_THROWS_AS(RoadGraph::load(nodes.string(), bad_ref.string()), InputError);

  auto negative = temp_file("trs_links_neg.csv",
                            "from,to,travel_time_seconds\n1,2,-5\n");
  CHECK_THROWS_AS(RoadGraph::load(nodes.string(), negative.string()), InputError);
}

TEST_CASE("oracle agrees with relaxation sweeps on random graphs") {
  std::mt19937_64 rng(20240817);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 2 + rng() % 49;
    std::vector<RoadNode> nodes(n);
    for (std::size_t i = 0; i < n; ++i) {
      nodes[i] = {NodeId(i), {double(rng() % 100), double(rng() % 100)}};
    }
    std::vector<std::tuple<NodeId, NodeId, Seconds>> links;
    std::size_t m = n + rng() % (3 * n);
    for (std::size_t k = 0; k < m; ++k) {
      NodeId u = NodeId(rng() % n), v = NodeId(rng() % n);
      if (u == v) continue;
      links.emplace_back(u, v, Seconds(rng() % 1000));
    }
    RoadGraph g = RoadGraph::from_memory(nodes, links);
    TravelTimeOracle oracle(g);
    auto want = all_pairs_reference(n, links);
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t t = 0; t < n; ++t) {
        CAPTURE(trial);
        CAPTURE(s);
        CAPTURE(t);
        REQUIRE(oracle.travel_time(NodeId(s), NodeId(t)) == want[s][t]);
      }
    }
  }
}

TEST_CASE("oracle caches one tree per source and reuses it") {
  std::vector<RoadNode> nodes = {{0, {0, 0}}, {1, {1, 0}}, {2, {2, 0}}};
  std::vector<std::tuple<NodeId, NodeId, Seconds>> links = {
      {0, 1, 10}, {1, 2, 10}, {0, 2, 30}};
  RoadGraph g = RoadGraph::from_memory(nodes, links);
  TravelTimeOracle oracle(g);
  auto a = oracle.forward_tree(0);
  auto b = oracle.forward_tree(0);
  CHECK(a.get() == b.get());
  CHECK(oracle.cached_tree_count() == 1);
  CHECK(a->dist[g.index_of(2)] == 20);

  auto back = oracle.backward_tree(2);
  CHECK(back->dist[g.index_of(0)] == 20);
  CHECK(oracle.cached_tree_count() == 2);
}

TEST_CASE("equal-cost paths settle on the smaller predecessor") {
  // Two parallel two-hop routes 0->1->3 and 0->2->3 with equal times; the
  // tree must pick the route through node index 1 every run.
  std::vector<RoadNode> nodes = {{0, {0, 0}}, {1, {1, 1}}, {2, {1, -1}}, {3, {2, 0}}};
  std::vector<std::tuple<NodeId, NodeId, Seconds>> links = {
      {0, 1, 50}, {0, 2, 50}, {1, 3, 50}, {2, 3, 50}};
  RoadGraph g = RoadGraph::from_memory(nodes, links);
  SpTree tree = dijkstra(g, g.index_of(0), false);
  CHECK(tree.dist[g.index_of(3)] == 100);
  CHECK(tree.pred[g.index_of(3)] == g.index_of(1));
}
