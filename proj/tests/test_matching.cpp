#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "trs/matching.hpp"

using namespace trs;

namespace {

MatchingProblem make_problem(
    int n_riders, int n_drivers,
    const std::vector<std::tuple<int, int, std::int64_t>>& edges) {
  MatchingProblem p;
  for (int r = 0; r < n_riders; ++r) p.riders.push_back("r" + std::to_string(r));
  for (int d = 0; d < n_drivers; ++d) p.drivers.push_back("d" + std::to_string(d));
  for (const auto& [r, d, w] : edges)
    p.edges.push_back({std::uint32_t(r), std::uint32_t(d), w});
  return p;
}

struct OracleBest {
  bool seen = false;
  std::int64_t value = 0;
  std::vector<std::size_t> ids;
};

// Exhaustive assignment oracle: walks every subset of edges that respects
// the at-most-one constraints and keeps the best value; among equal values
// the lexicographically smallest ascending id sequence wins, which is the
// solver's documented tie-break.
void enumerate_matchings(const MatchingProblem& p, Objective obj,
                         std::size_t k, std::vector<char>& rider_used,
                         std::vector<char>& driver_used, std::int64_t value,
                         std::vector<std::size_t>& ids, OracleBest& best) {
  if (k == p.edges.size()) {
    if (!best.seen || value > best.value ||
        (value == best.value && ids < best.ids)) {
      best.seen = true;
      best.value = value;
      best.ids = ids;
    }
    return;
  }
  const auto& e = p.edges[k];
  if (!rider_used[e.rider] && !driver_used[e.driver]) {
    rider_used[e.rider] = driver_used[e.driver] = 1;
    ids.push_back(k);
    std::int64_t w = obj == Objective::MaxMatches ? 1 : e.savings;
    enumerate_matchings(p, obj, k + 1, rider_used, driver_used, value + w,
                        ids, best);
    ids.pop_back();
    rider_used[e.rider] = driver_used[e.driver] = 0;
  }
  enumerate_matchings(p, obj, k + 1, rider_used, driver_used, value, ids, best);
}

OracleBest oracle_solve(const MatchingProblem& p, Objective obj) {
  OracleBest best;
  std::vector<char> ru(p.riders.size(), 0), du(p.drivers.size(), 0);
  std::vector<std::size_t> ids;
  enumerate_matchings(p, obj, 0, ru, du, 0, ids, best);
  return best;
}

std::int64_t selected_savings(const MatchingProblem& p, const Assignment& a) {
  std::int64_t s = 0;
  for (std::size_t k : a.selected) s += p.edges[k].savings;
  return s;
}

MatchingProblem random_problem(std::mt19937_64& rng, int max_edges,
                               std::int64_t lo, std::int64_t hi) {
  int nr = 1 + int(rng() % 6);
  int nd = 1 + int(rng() % 6);
  int ne = 1 + int(rng() % std::uint64_t(max_edges));
  std::vector<std::tuple<int, int, std::int64_t>> edges;
  for (int k = 0; k < ne; ++k)
    edges.emplace_back(int(rng() % std::uint64_t(nr)),
                       int(rng() % std::uint64_t(nd)),
                       lo + std::int64_t(rng() % std::uint64_t(hi - lo + 1)));
  return make_problem(nr, nd, edges);
}

}  // namespace

TEST_CASE("build_problem maps matches to edges in order") {
  auto mk = [](const char* r, const char* d, Seconds vhrs) {
    FeasibleMatch m;
    m.rider = r;
    m.driver = d;
    m.t_vhrs = vhrs;
    return m;
  };
  std::vector<FeasibleMatch> matches = {
      mk("rb", "dx", 300), mk("ra", "dx", -60), mk("rb", "dy", 0),
      mk("ra", "dy", 120), mk("rb", "dx", 45),
  };
  MatchingProblem p = build_problem(matches);
  CHECK(p.riders == (std::vector<std::string>{"rb", "ra"}));
  CHECK(p.drivers == (std::vector<std::string>{"dx", "dy"}));
  REQUIRE(p.edges.size() == 5);
  CHECK(p.edges[0].rider == 0);
  CHECK(p.edges[0].driver == 0);
  CHECK(p.edges[0].savings == 300);
  CHECK(p.edges[1].rider == 1);
  CHECK(p.edges[1].savings == -60);
  CHECK(p.edges[2].driver == 1);
  CHECK(p.edges[2].savings == 0);
  CHECK(p.edges[4].rider == 0);
  CHECK(p.edges[4].driver == 0);
  CHECK(p.edges[4].savings == 45);
}

TEST_CASE("hand instances pin the selection conventions") {
  SUBCASE("empty problem") {
    MatchingProblem p = build_problem({});
    for (Objective obj : {Objective::MaxMatches, Objective::MaxSavings}) {
      Assignment a = solve_assignment(p, obj);
      CHECK(a.value == 0);
      CHECK(a.selected.empty());
      CHECK(verify_integral(p, obj).integral);
    }
  }

  SUBCASE("a harmless zero-savings edge is kept for lexicographic order") {
    MatchingProblem p = make_problem(2, 2, {{0, 0, 0}, {1, 1, 5}});
    Assignment a = solve_assignment(p, Objective::MaxSavings);
    CHECK(a.value == 5);
    CHECK(a.selected == (std::vector<std::size_t>{0, 1}));
  }

  SUBCASE("trailing zero-savings edges are not padded in") {
    MatchingProblem p = make_problem(2, 2, {{1, 1, 5}, {0, 0, 0}});
    Assignment a = solve_assignment(p, Objective::MaxSavings);
    CHECK(a.value == 5);
    CHECK(a.selected == (std::vector<std::size_t>{0}));
  }

  SUBCASE("parallel edges for one pair collapse to the better one") {
    MatchingProblem p = make_problem(1, 1, {{0, 0, 3}, {0, 0, 7}});
    Assignment savings = solve_assignment(p, Objective::MaxSavings);
    CHECK(savings.value == 7);
    CHECK(savings.selected == (std::vector<std::size_t>{1}));
    Assignment count = solve_assignment(p, Objective::MaxMatches);
    CHECK(count.value == 1);
    CHECK(count.selected == (std::vector<std::size_t>{0}));
  }

  SUBCASE("the two objectives can disagree") {
    // One lucrative pair versus two modest ones sharing its endpoints.
    MatchingProblem p = make_problem(2, 2, {{0, 0, 10}, {0, 1, 1}, {1, 0, 1}});
    Assignment count = solve_assignment(p, Objective::MaxMatches);
    CHECK(count.value == 2);
    CHECK(count.selected == (std::vector<std::size_t>{1, 2}));
    Assignment savings = solve_assignment(p, Objective::MaxSavings);
    CHECK(savings.value == 10);
    CHECK(savings.selected == (std::vector<std::size_t>{0}));
    CHECK(count.selected.size() >= savings.selected.size());
    CHECK(selected_savings(p, savings) >= selected_savings(p, count));
  }

  SUBCASE("loss-making matches are still counted but never save") {
    MatchingProblem p = make_problem(2, 2, {{0, 0, -300}, {1, 1, -45}});
    Assignment savings = solve_assignment(p, Objective::MaxSavings);
    CHECK(savings.value == 0);
    CHECK(savings.selected.empty());
    Assignment count = solve_assignment(p, Objective::MaxMatches);
    CHECK(count.value == 2);
    CHECK(count.selected == (std::vector<std::size_t>{0, 1}));
  }
}

TEST_CASE("solver agrees with exhaustive enumeration") {
  std::mt19937_64 rng(19052021);
  for (int iter = 0; iter < 200; ++iter) {
    CAPTURE(iter);
    // Mixed-sign savings in a wide range, duplicate pairs allowed.
    MatchingProblem p = random_problem(rng, 20, -600, 3600);
    for (Objective obj : {Objective::MaxMatches, Objective::MaxSavings}) {
      CAPTURE(int(obj));
      OracleBest want = oracle_solve(p, obj);
      Assignment got = solve_assignment(p, obj);
      CHECK(got.value == want.value);
      CHECK(got.selected == want.ids);
      CHECK(assignment_value(p, obj) == want.value);

      RelaxationReport rep = verify_integral(p, obj);
      CHECK(rep.integral);
      CHECK(rep.fractional.empty());
      CHECK(rep.lp_value == doctest::Approx(double(want.value)).epsilon(1e-9));
    }
  }
}

TEST_CASE("objective dominance holds on every instance") {
  std::mt19937_64 rng(30111984);
  for (int iter = 0; iter < 300; ++iter) {
    CAPTURE(iter);
    MatchingProblem p = random_problem(rng, 40, -900, 3600);
    Assignment count = solve_assignment(p, Objective::MaxMatches);
    Assignment savings = solve_assignment(p, Objective::MaxSavings);
    CHECK(count.selected.size() >= savings.selected.size());
    CHECK(selected_savings(p, savings) >= selected_savings(p, count));
    CHECK(std::int64_t(count.selected.size()) == count.value);
    CHECK(selected_savings(p, savings) == savings.value);
  }
}

TEST_CASE("scaling all savings preserves the chosen set") {
  std::mt19937_64 rng(1212);
  for (int iter = 0; iter < 60; ++iter) {
    CAPTURE(iter);
    MatchingProblem p = random_problem(rng, 24, -600, 3600);
    MatchingProblem scaled = p;
    for (auto& e : scaled.edges) e.savings *= 3;
    Assignment a = solve_assignment(p, Objective::MaxSavings);
    Assignment b = solve_assignment(scaled, Objective::MaxSavings);
    CHECK(b.value == 3 * a.value);
    CHECK(b.selected == a.selected);
    // Solving twice yields byte-identical results.
    Assignment again = solve_assignment(p, Objective::MaxSavings);
    CHECK(again.value == a.value);
    CHECK(again.selected == a.selected);
  }
}

TEST_CASE("relaxation stays integral on a wide instance") {
  std::mt19937_64 rng(5150);
  MatchingProblem p;
  int nr = 40, nd = 40;
  for (int r = 0; r < nr; ++r) p.riders.push_back("r" + std::to_string(r));
  for (int d = 0; d < nd; ++d) p.drivers.push_back("d" + std::to_string(d));
  for (int k = 0; k < 120; ++k)
    p.edges.push_back({std::uint32_t(rng() % std::uint64_t(nr)),
                       std::uint32_t(rng() % std::uint64_t(nd)),
                       std::int64_t(rng() % 3600) - 300});
  for (Objective obj : {Objective::MaxMatches, Objective::MaxSavings}) {
    CAPTURE(int(obj));
    RelaxationReport rep = verify_integral(p, obj);
    CHECK(rep.integral);
    CHECK(rep.lp_value ==
          doctest::Approx(double(assignment_value(p, obj))).epsilon(1e-9));
  }
}
