#pragma once

#include <cstddef>
#include <vector>

namespace trs {

// Dense primal simplex for small linear programs of the form
//   max c.x  subject to  A.x <= b,  x >= 0
// with Bland's rule for anti-cycling.  b must be nonnegative (the slack
// basis is then feasible).  Returns an optimal *basic* solution, which is a
// vertex of the polytope; integrality checks rely on that.
struct LpResult {
  bool optimal = false;    // false: unbounded or iteration cap hit
  double value = 0.0;
  std::vector<double> x;
};

LpResult solve_lp_max(const std::vector<double>& c,
                      const std::vector<std::vector<double>>& rows,
                      const std::vector<double>& b);

}  // namespace trs
