#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trs/feasibility.hpp"

namespace trs {

enum class Objective {
  MaxMatches,  // count every selected match as one
  MaxSavings,  // weigh every match by its saved vehicle time
};

const char* to_string(Objective o);
Objective parse_objective(const std::string& s);

// Bipartite view of a feasible-match list.  Edge k corresponds one-to-one to
// the k-th match of the source vector; a rider or driver appearing in many
// matches becomes a single vertex on its side.
struct MatchingProblem {
  std::vector<std::string> riders;   // distinct ids, first-seen order
  std::vector<std::string> drivers;
  struct Edge {
    std::uint32_t rider = 0;   // index into riders
    std::uint32_t driver = 0;  // index into drivers
    std::int64_t savings = 0;  // saved vehicle seconds (may be negative)
  };
  std::vector<Edge> edges;
};

MatchingProblem build_problem(const std::vector<FeasibleMatch>& matches);

struct Assignment {
  Objective objective = Objective::MaxMatches;
  std::int64_t value = 0;              // matches or saved seconds
  std::vector<std::size_t> selected;   // edge ids, ascending
};

// Exact maximum-weight assignment under at-most-one constraints per rider
// and per driver, via successive shortest augmenting paths with potentials
// (integer arithmetic throughout).  Among all optimal assignments the
// selected edge-id set is the lexicographically smallest, which both pins
// ties and makes reruns byte-stable.  Edges with nonpositive gain are never
// forced in: an assignment that already attains the optimum stays as is.
Assignment solve_assignment(const MatchingProblem& p, Objective obj);

// Optimal value only (no tie-breaking pass); used internally and by tests.
std::int64_t assignment_value(const MatchingProblem& p, Objective obj);

// Solves the continuous relaxation (each edge in [0,1], row sums at most 1)
// with a vertex-returning simplex and reports how integral the solution is.
// The relaxation optimum always lands on 0/1 values here because the
// constraint matrix is an interval/incidence structure; a fractional vertex
// would flag a solver defect, so callers assert `integral`.
struct RelaxationReport {
  bool integral = false;
  double lp_value = 0.0;
  std::vector<std::size_t> fractional;  // offending edge ids, if any
};

RelaxationReport verify_integral(const MatchingProblem& p, Objective obj,
                                 double tol = 1e-9);

}  // namespace trs
