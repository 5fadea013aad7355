#include "diamond/lp.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

namespace diamond::lp {

namespace {
constexpr double kTol = 1e-11;
}

Result maximize(const std::vector<double>& c,
                const std::vector<std::vector<double>>& a,
                const std::vector<double>& b) {
  Result res;
  const std::size_t n = c.size(), m = a.size();
  if (b.size() != m) return res;
  for (const auto& row : a) {
    if (row.size() != n) return res;
  }
  for (double bi : b) {
    if (bi < 0.0) return res;
  }

  // Tableau with slack columns; row 0..m-1 constraints, row m objective.
  const std::size_t cols = n + m + 1;
  std::vector<std::vector<double>> t(m + 1, std::vector<double>(cols, 0.0));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = 1.0;
    t[i][cols - 1] = b[i];
    basis[i] = n + i;
  }
  for (std::size_t j = 0; j < n; ++j) t[m][j] = -c[j];

  const std::size_t max_iter = 50 * (n + m) * (n + m) + 1000;
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    // Bland: entering column = lowest index with negative reduced cost.
    std::size_t pivot_col = cols;
    for (std::size_t j = 0; j + 1 < cols; ++j) {
      if (t[m][j] < -kTol) { pivot_col = j; break; }
    }
    if (pivot_col == cols) break;  // optimal

    std::size_t pivot_row = m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][pivot_col] > kTol) {
        const double ratio = t[i][cols - 1] / t[i][pivot_col];
        if (ratio < best_ratio - kTol ||
            (ratio < best_ratio + kTol &&
             (pivot_row == m || basis[i] < basis[pivot_row]))) {
          best_ratio = ratio;
          pivot_row = i;
        }
      }
    }
    if (pivot_row == m) return res;  // unbounded

    const double piv = t[pivot_row][pivot_col];
    for (std::size_t j = 0; j < cols; ++j) t[pivot_row][j] /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == pivot_row) continue;
      const double f = t[i][pivot_col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) t[i][j] -= f * t[pivot_row][j];
    }
    basis[pivot_row] = pivot_col;
  }

  res.ok = true;
  res.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) res.x[basis[i]] = std::max(0.0, t[i][cols - 1]);
  }
  res.objective = t[m][cols - 1];
  return res;
}

}  // namespace diamond::lp
