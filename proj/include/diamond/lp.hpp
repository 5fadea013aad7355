#ifndef DIAMOND_LP_HPP
#define DIAMOND_LP_HPP

#include <vector>

// Small dense LP solver:  maximize c'x  s.t.  A x <= b,  x >= 0,
// with b >= 0 (so x = 0 is feasible and no phase-1 is needed).
// Primal simplex with Bland's rule: deterministic and cycle-free.

namespace diamond::lp {

struct Result {
  bool ok = false;  // false only for unbounded or invalid input
  double objective = 0.0;
  std::vector<double> x;
};

Result maximize(const std::vector<double>& c,
                const std::vector<std::vector<double>>& a,
                const std::vector<double>& b);

}  // namespace diamond::lp

#endif
