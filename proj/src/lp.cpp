#include "trs/lp.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace trs {

namespace {
constexpr double kEps = 1e-9;
}

LpResult solve_lp_max(const std::vector<double>& c,
                      const std::vector<std::vector<double>>& rows,
                      const std::vector<double>& b) {
  const std::size_t n = c.size();
  const std::size_t m = rows.size();
  // Tableau columns: n structural + m slack + rhs.
  std::vector<std::vector<double>> t(m + 1, std::vector<double>(n + m + 1, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].size() != n) throw std::invalid_argument("lp row size");
    if (b[i] < 0.0) throw std::invalid_argument("lp rhs must be nonnegative");
    for (std::size_t j = 0; j < n; ++j) t[i][j] = rows[i][j];
    t[i][n + i] = 1.0;
    t[i][n + m] = b[i];
  }
  for (std::size_t j = 0; j < n; ++j) t[m][j] = c[j];  // reduced costs

  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  // Bland's rule terminates in finitely many pivots; the cap is a guard
  // against numerical stalls only.
  const std::uint64_t cap = 50'000 + std::uint64_t(n + m) * (n + m);
  for (std::uint64_t iter = 0; iter < cap; ++iter) {
    std::size_t enter = SIZE_MAX;
    for (std::size_t j = 0; j < n + m; ++j) {
      if (t[m][j] > kEps) {
        enter = j;
        break;
      }
    }
    if (enter == SIZE_MAX) {
      LpResult res;
      res.optimal = true;
      res.x.assign(n, 0.0);
      for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) res.x[basis[i]] = t[i][n + m];
      res.value = 0.0;
      for (std::size_t j = 0; j < n; ++j) res.value += c[j] * res.x[j];
      return res;
    }
    std::size_t leave = SIZE_MAX;
    double best_ratio = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] > kEps) {
        double ratio = t[i][n + m] / t[i][enter];
        if (leave == SIZE_MAX || ratio < best_ratio - kEps ||
            (std::fabs(ratio - best_ratio) <= kEps && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
    }
    if (leave == SIZE_MAX) return LpResult{};  // unbounded

    double piv = t[leave][enter];
    for (double& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      double f = t[i][enter];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= n + m; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  return LpResult{};  // iteration cap
}

}  // namespace trs
