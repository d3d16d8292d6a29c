#include "trs/horizon.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <numeric>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace trs {

std::vector<FeasibleMatch> search_rider_block(
    const PotentialMatchSearch& search, const std::vector<Participant>& riders,
    const std::vector<Participant>& drivers, MatchVariant variant,
    unsigned threads) {
  if (variant == MatchVariant::PureRideshare) {
    return search.standalone_rs_match(riders, drivers);
  }
  auto run_one = [&](const Participant& r) {
    return variant == MatchVariant::FirstMile
               ? search.rider_driver_potential_match(r, drivers)
               : search.last_mile_potential_match(r, drivers);
  };

  std::vector<FeasibleMatch> out;
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  if (threads <= 1 || riders.size() <= 1 || drivers.empty()) {
    for (const auto& r : riders) {
      auto ms = run_one(r);
      out.insert(out.end(), ms.begin(), ms.end());
    }
    return out;
  }

  std::size_t chunks = std::min<std::size_t>(threads, riders.size());
  std::size_t per = (riders.size() + chunks - 1) / chunks;
  std::vector<std::future<std::vector<FeasibleMatch>>> parts;
  for (std::size_t lo = 0; lo < riders.size(); lo += per) {
    std::size_t hi = std::min(riders.size(), lo + per);
    parts.push_back(std::async(std::launch::async, [&, lo, hi] {
      std::vector<FeasibleMatch> local;
      for (std::size_t i = lo; i < hi; ++i) {
        auto ms = run_one(riders[i]);
        local.insert(local.end(), ms.begin(), ms.end());
      }
      return local;
    }));
  }
  for (auto& f : parts) {
    auto local = f.get();
    out.insert(out.end(), local.begin(), local.end());
  }
  return out;
}

namespace {

struct ActiveEntry {
  Participant p;
  bool alive = true;
};

struct PoolEdge {
  FeasibleMatch m;
  bool alive = true;
};

}  // namespace

SimResult RollingHorizonSim::run(
    const std::vector<Participant>& requests) const {
  auto t0 = std::chrono::steady_clock::now();
  if (cfg_.step <= 0) throw InputError("simulation step must be positive");
  if (cfg_.lead < 0) throw InputError("commitment lead must be nonnegative");
  if (cfg_.horizon_end < cfg_.horizon_start) {
    throw InputError("simulation horizon ends before it starts");
  }

  // Stream ordered by announce time, stable on input order.
  std::vector<std::size_t> order(requests.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return requests[a].req.announce_time < requests[b].req.announce_time;
  });

  SimResult result;
  std::vector<ActiveEntry> riders, drivers;
  std::unordered_map<std::string, std::size_t> rider_at, driver_at;
  std::vector<PoolEdge> pool;
  std::size_t cursor = 0;

  auto deadline_hit = [&](const Participant& p, Seconds next_clock) {
    return p.win.latest_depart - next_clock <= cfg_.lead;
  };
  auto drop_edges_of = [&](const std::string& id) {
    for (auto& e : pool) {
      if (e.alive && (e.m.rider == id || e.m.driver == id)) e.alive = false;
    }
  };

  for (Seconds clock = cfg_.horizon_start; clock < cfg_.horizon_end;
       clock += cfg_.step) {
    StepReport step;
    step.clock = clock;
    Seconds next_clock = clock + cfg_.step;

    // Admission: everything announced before the end of this round.
    std::vector<Participant> new_riders, new_drivers;
    while (cursor < order.size() &&
           requests[order[cursor]].req.announce_time < next_clock) {
      const Participant& p = requests[order[cursor]];
      ++cursor;
      if (p.req.role == Role::Rider) {
        new_riders.push_back(p);
      } else {
        new_drivers.push_back(p);
      }
    }
    step.admitted_riders = new_riders.size();
    step.admitted_drivers = new_drivers.size();
    result.total_riders += new_riders.size();
    result.total_drivers += new_drivers.size();

    std::vector<Participant> old_riders, old_drivers;
    for (const auto& e : riders) {
      if (e.alive) old_riders.push_back(e.p);
    }
    for (const auto& e : drivers) {
      if (e.alive) old_drivers.push_back(e.p);
    }

    // Search only pair blocks that contain a new participant: new riders
    // meet every driver, old riders meet only the new drivers.
    std::vector<Participant> all_drivers = old_drivers;
    all_drivers.insert(all_drivers.end(), new_drivers.begin(),
                       new_drivers.end());
    auto search_block = [&](const std::vector<Participant>& rs,
                            const std::vector<Participant>& ds) {
      if (rs.empty() || ds.empty()) return;
      step.pairs_evaluated += rs.size() * ds.size();
      if (cfg_.record_pairs) {
        for (const auto& r : rs) {
          for (const auto& d : ds) {
            step.evaluated_pairs.emplace_back(r.req.id, d.req.id);
          }
        }
      }
      auto ms = search_rider_block(search_, rs, ds, cfg_.transit_variant, 1);
      step.matches_added += ms.size();
      for (auto& m : ms) pool.push_back({std::move(m), true});
      if (cfg_.include_pure_rideshare) {
        auto rs_ms = search_.standalone_rs_match(rs, ds);
        step.matches_added += rs_ms.size();
        for (auto& m : rs_ms) pool.push_back({std::move(m), true});
      }
    };
    search_block(new_riders, all_drivers);
    search_block(old_riders, new_drivers);

    for (auto& p : new_riders) {
      rider_at[p.req.id] = riders.size();
      riders.push_back({std::move(p), true});
    }
    for (auto& p : new_drivers) {
      driver_at[p.req.id] = drivers.size();
      drivers.push_back({std::move(p), true});
    }

    // Re-solve the pooled problem.
    std::vector<FeasibleMatch> open;
    std::vector<std::size_t> open_ids;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (pool[i].alive) {
        open.push_back(pool[i].m);
        open_ids.push_back(i);
      }
    }
    step.open_matches = open.size();

    MatchingProblem problem = build_problem(open);
    Assignment assign = solve_assignment(problem, cfg_.objective);
    step.optimal_matches = assign.selected.size();

    std::unordered_set<std::string> covered;
    std::vector<std::size_t> selected_pool_ids;
    for (std::size_t k : assign.selected) {
      selected_pool_ids.push_back(open_ids[k]);
      covered.insert(open[k].rider);
      covered.insert(open[k].driver);
    }

    // Commit matches that reach their lead cutoff this round.
    for (std::size_t pid : selected_pool_ids) {
      const FeasibleMatch& m = pool[pid].m;
      const Participant& r = riders[rider_at.at(m.rider)].p;
      const Participant& d = drivers[driver_at.at(m.driver)].p;
      if (!deadline_hit(r, next_clock) && !deadline_hit(d, next_clock)) {
        continue;
      }
      result.finalized.push_back(m);
      result.finalized_clock.push_back(clock);
      result.total_savings += m.t_vhrs;
      ++step.finalized;
      riders[rider_at.at(m.rider)].alive = false;
      drivers[driver_at.at(m.driver)].alive = false;
      drop_edges_of(m.rider);
      drop_edges_of(m.driver);
    }

    // Drop uncovered participants that can no longer wait for a later round.
    auto expire_side = [&](std::vector<ActiveEntry>& side) {
      for (auto& e : side) {
        if (!e.alive || covered.count(e.p.req.id)) continue;
        if (!deadline_hit(e.p, next_clock)) continue;
        e.alive = false;
        result.expired.push_back(e.p.req.id);
        ++step.expired;
        drop_edges_of(e.p.req.id);
      }
    };
    expire_side(riders);
    expire_side(drivers);

    result.steps.push_back(std::move(step));

    bool anything_left = cursor < order.size();
    if (!anything_left) {
      for (const auto& e : riders) anything_left |= e.alive;
      for (const auto& e : drivers) anything_left |= e.alive;
    }
    if (!anything_left) break;
  }

  // Whatever survives the horizon end counts as unserved.
  for (const auto& e : riders) {
    if (e.alive) result.expired.push_back(e.p.req.id);
  }
  for (const auto& e : drivers) {
    if (e.alive) result.expired.push_back(e.p.req.id);
  }

  double denom = (double(result.total_riders) + double(result.total_drivers)) / 2.0;
  result.matching_rate =
      denom > 0 ? double(result.finalized.size()) / denom : 0.0;
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return result;
}

}  // namespace trs
