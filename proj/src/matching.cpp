#include "trs/matching.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_map>

#include "trs/lp.hpp"

namespace trs {

const char* to_string(Objective o) {
  return o == Objective::MaxMatches ? "max-matches" : "max-savings";
}

Objective parse_objective(const std::string& s) {
  if (s == "max-matches") return Objective::MaxMatches;
  if (s == "max-savings") return Objective::MaxSavings;
  throw InputError("unknown objective '" + s +
                   "' (want max-matches or max-savings)");
}

MatchingProblem build_problem(const std::vector<FeasibleMatch>& matches) {
  MatchingProblem p;
  std::unordered_map<std::string, std::uint32_t> rid, did;
  for (const auto& m : matches) {
    auto [ri, r_new] = rid.try_emplace(m.rider, std::uint32_t(p.riders.size()));
    if (r_new) p.riders.push_back(m.rider);
    auto [di, d_new] = did.try_emplace(m.driver, std::uint32_t(p.drivers.size()));
    if (d_new) p.drivers.push_back(m.driver);
    p.edges.push_back({ri->second, di->second, m.t_vhrs});
  }
  return p;
}

namespace {

std::int64_t edge_weight(const MatchingProblem::Edge& e, Objective obj) {
  return obj == Objective::MaxMatches ? 1 : e.savings;
}

// One collapsed arc per (rider, driver) pair: parallel feasible matches for
// the same pair can contribute at most one selection, so only the heaviest
// (smallest edge id among equals) can appear in an optimum.
struct Collapsed {
  struct Arc {
    std::uint32_t rider, driver;
    std::int64_t w;
    std::size_t rep;  // representative full-edge id
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<std::uint32_t>> by_rider;  // arc indices
  std::size_t n_riders = 0, n_drivers = 0;
};

Collapsed collapse(const MatchingProblem& p, Objective obj,
                   const std::vector<char>* active,
                   const std::vector<char>* rider_gone,
                   const std::vector<char>* driver_gone) {
  Collapsed c;
  c.n_riders = p.riders.size();
  c.n_drivers = p.drivers.size();
  std::unordered_map<std::uint64_t, std::uint32_t> seen;
  for (std::size_t k = 0; k < p.edges.size(); ++k) {
    if (active && !(*active)[k]) continue;
    const auto& e = p.edges[k];
    if (rider_gone && (*rider_gone)[e.rider]) continue;
    if (driver_gone && (*driver_gone)[e.driver]) continue;
    std::int64_t w = edge_weight(e, obj);
    std::uint64_t key = (std::uint64_t(e.rider) << 32) | e.driver;
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(key, std::uint32_t(c.arcs.size()));
      c.arcs.push_back({e.rider, e.driver, w, k});
    } else if (w > c.arcs[it->second].w) {
      c.arcs[it->second].w = w;
      c.arcs[it->second].rep = k;
    }
  }
  c.by_rider.assign(c.n_riders, {});
  for (std::uint32_t a = 0; a < c.arcs.size(); ++a)
    c.by_rider[c.arcs[a].rider].push_back(a);
  return c;
}

// Maximum-weight matching value by successive shortest augmenting paths over
// the residual graph, with node potentials keeping every reduced cost
// nonnegative so each path search is a Dijkstra run.  Augmentation stops
// when the cheapest source-to-sink path no longer improves the total weight;
// path costs are nondecreasing across iterations, so the cut is exact.
std::int64_t matching_value(const Collapsed& c) {
  const std::size_t nR = c.n_riders, nD = c.n_drivers;
  const std::size_t S = nR + nD, T = S + 1, N = T + 1;
  std::vector<std::int64_t> pot(N, 0);
  std::int64_t max_w = 0;
  for (const auto& a : c.arcs) max_w = std::max(max_w, a.w);
  for (std::size_t r = 0; r < nR; ++r) pot[r] = max_w;
  pot[S] = max_w;

  std::vector<std::int32_t> match_r(nR, -1), match_d(nD, -1);  // arc index
  std::vector<std::int64_t> dist(N);
  std::vector<std::int32_t> prev_node(N), prev_arc(N);
  std::int64_t total = 0;

  for (;;) {
    std::fill(dist.begin(), dist.end(), kUnreachable);
    std::fill(prev_node.begin(), prev_node.end(), -1);
    std::fill(prev_arc.begin(), prev_arc.end(), -1);
    using Entry = std::pair<std::int64_t, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
    dist[S] = 0;
    pq.push({0, S});
    while (!pq.empty()) {
      auto [du, u] = pq.top();
      pq.pop();
      if (du != dist[u]) continue;
      auto relax = [&](std::size_t v, std::int64_t cost, std::int32_t arc) {
        std::int64_t nd = du + cost + pot[u] - pot[v];
        if (nd < dist[v]) {
          dist[v] = nd;
          prev_node[v] = std::int32_t(u);
          prev_arc[v] = arc;
          pq.push({nd, v});
        }
      };
      if (u == S) {
        for (std::size_t r = 0; r < nR; ++r)
          if (match_r[r] < 0) relax(r, 0, -1);
      } else if (u < nR) {
        for (std::uint32_t ai : c.by_rider[u]) {
          const auto& a = c.arcs[ai];
          if (match_r[u] == std::int32_t(ai)) continue;
          relax(nR + a.driver, -a.w, std::int32_t(ai));
        }
      } else if (u < nR + nD) {
        std::size_t d = u - nR;
        if (match_d[d] < 0) {
          relax(T, 0, -1);
        } else {
          const auto& a = c.arcs[std::size_t(match_d[d])];
          relax(a.rider, a.w, match_d[d]);
        }
      }
    }
    if (!is_reachable(dist[T])) break;
    // Real path cost after unwinding the potential telescoping.
    std::int64_t real = dist[T] - pot[S] + pot[T];
    if (real >= 0) break;
    for (std::size_t v = 0; v < N; ++v)
      pot[v] += std::min(dist[v], dist[T]);
    // Flip matched state along the S..T path.
    std::size_t v = T;
    while (prev_node[v] >= 0) {
      std::size_t u = std::size_t(prev_node[v]);
      std::int32_t ai = prev_arc[v];
      if (ai >= 0) {
        const auto& a = c.arcs[std::size_t(ai)];
        if (u < nR) {  // rider -> driver: take the pair
          match_r[a.rider] = ai;
          match_d[a.driver] = ai;
        } else {  // driver -> rider: release the pair
          if (match_r[a.rider] == ai) match_r[a.rider] = -1;
        }
      }
      v = u;
    }
    total -= real;
  }
  return total;
}

}  // namespace

std::int64_t assignment_value(const MatchingProblem& p, Objective obj) {
  return matching_value(collapse(p, obj, nullptr, nullptr, nullptr));
}

Assignment solve_assignment(const MatchingProblem& p, Objective obj) {
  Assignment out;
  out.objective = obj;
  out.value = assignment_value(p, obj);

  // Lexicographic refinement: walk edge ids upward and keep an edge exactly
  // when forcing it (on top of the keeps so far) still allows the optimal
  // value.  Rejected edges stay excluded from later subproblems, which makes
  // the final set the lexicographically smallest among optimal assignments.
  std::vector<char> active(p.edges.size(), 1);
  std::vector<char> rider_gone(p.riders.size(), 0);
  std::vector<char> driver_gone(p.drivers.size(), 0);
  std::int64_t base = 0;
  for (std::size_t k = 0; k < p.edges.size(); ++k) {
    if (base == out.value) break;  // optimum reached; the rest only pads
    const auto& e = p.edges[k];
    if (rider_gone[e.rider] || driver_gone[e.driver]) {
      active[k] = 0;
      continue;
    }
    active[k] = 0;  // k leaves the pool either way: forced in or ruled out
    std::vector<char> rg = rider_gone, dg = driver_gone;
    rg[e.rider] = 1;
    dg[e.driver] = 1;
    std::int64_t rest = matching_value(collapse(p, obj, &active, &rg, &dg));
    if (base + edge_weight(e, obj) + rest == out.value) {
      out.selected.push_back(k);
      base += edge_weight(e, obj);
      rider_gone = std::move(rg);
      driver_gone = std::move(dg);
    }
  }
  if (base != out.value)
    throw InvariantError("assignment refinement lost the optimal value");
  return out;
}

RelaxationReport verify_integral(const MatchingProblem& p, Objective obj,
                                 double tol) {
  RelaxationReport rep;
  const std::size_t n = p.edges.size();
  std::vector<double> c(n);
  for (std::size_t k = 0; k < n; ++k)
    c[k] = double(edge_weight(p.edges[k], obj));
  std::vector<std::vector<double>> rows;
  std::vector<double> b;
  auto add_row = [&]() -> std::vector<double>& {
    rows.emplace_back(n, 0.0);
    b.push_back(1.0);
    return rows.back();
  };
  // One at-most-one row per rider, per driver, plus each edge's upper bound.
  for (std::size_t r = 0; r < p.riders.size(); ++r) {
    auto& row = add_row();
    for (std::size_t k = 0; k < n; ++k)
      if (p.edges[k].rider == r) row[k] = 1.0;
  }
  for (std::size_t d = 0; d < p.drivers.size(); ++d) {
    auto& row = add_row();
    for (std::size_t k = 0; k < n; ++k)
      if (p.edges[k].driver == d) row[k] = 1.0;
  }
  for (std::size_t k = 0; k < n; ++k) add_row()[k] = 1.0;

  LpResult lp = solve_lp_max(c, rows, b);
  if (!lp.optimal)
    throw InvariantError("relaxation solve failed on a bounded program");
  rep.lp_value = lp.value;
  rep.integral = true;
  for (std::size_t k = 0; k < n; ++k) {
    double v = lp.x[k];
    if (std::min(std::fabs(v), std::fabs(v - 1.0)) > tol) {
      rep.integral = false;
      rep.fractional.push_back(k);
    }
  }
  return rep;
}

}  // namespace trs
