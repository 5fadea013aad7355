#include "diamond/superposition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace diamond::spc {

namespace {
constexpr double kLn2 = 0.6931471805599453;
constexpr double kTieTol = 1e-9;

double residual_fronthaul(Snr p_df, Snr p_total, FronthaulRate c_total) {
  const double x = p_df / (1.0 + p_total - p_df);
  return c_total - 0.5 * rates::r_df(x);
}
}  // namespace

Snr p_df_max(Snr p_total, FronthaulRate c_total) {
  if (p_total < 0.0 || c_total < 0.0) {
    throw std::domain_error("diamond::spc: negative argument");
  }
  // c_cf >= 0  <=>  r_df(p/(1+P-p)) <= 2C  <=>  p <= (1 - 2^(-4C))(1+P).
  const double cap = -std::expm1(-4.0 * c_total * kLn2) * (1.0 + p_total);
  return std::min(p_total, cap);
}

Rate spc_objective(Snr p_df, Snr p_total, FronthaulRate c_total) {
  if (p_df < 0.0 || p_df > p_total) {
    throw std::domain_error("diamond::spc: p_df outside [0, p_total]");
  }
  const double c_cf = residual_fronthaul(p_df, p_total, c_total);
  if (c_cf < -1e-12) {
    throw std::domain_error("diamond::spc: infeasible split, c_cf < 0");
  }
  return rates::r_spc(p_df, p_total - p_df, std::max(0.0, c_cf));
}

double spc_derivative(Snr p_df, Snr p_total, FronthaulRate c_total) {
  if (!(p_df > 0.0) || !(p_df < p_total)) {
    throw std::domain_error("diamond::spc: derivative needs an interior point");
  }
  const double c_cf = residual_fronthaul(p_df, p_total, c_total);
  if (c_cf <= 0.0) {
    throw std::domain_error("diamond::spc: infeasible point");
  }
  const double p_cf = p_total - p_df;
  // d r_df(p_df/(1+P-p_df)) / d p_df collapses to 1/(2 ln2 (1+P-p_df)).
  const double d_df = 1.0 / (2.0 * kLn2 * (1.0 + p_cf));
  return d_df * (1.0 - 0.5 * rates::r_cf_dc(p_cf, c_cf)) -
         rates::r_cf_dp(p_cf, c_cf);
}

FronthaulRate spc_threshold(Snr p_total) {
  return 0.25 * std::log2(1.0 + p_total) + 0.5;
}

SpcSolution spc_optimize(Snr p_total, FronthaulRate c_total) {
  const double p_hi = p_df_max(p_total, c_total);
  const auto f = [&](double p) { return spc_objective(p, p_total, c_total); };

  // Scan + golden refinement; doubles as an independent check that the
  // optimum sits at a corner.
  constexpr int kScan = 2000;
  double best_p = 0.0, best_v = f(0.0);
  for (int i = 1; i <= kScan; ++i) {
    const double p = p_hi * i / kScan;
    const double v = f(p);
    if (v > best_v + 1e-15) { best_v = v; best_p = p; }
  }
  if (best_p > 0.0 && best_p < p_hi) {
    const double step = p_hi / kScan;
    double a = std::max(0.0, best_p - step), b = std::min(p_hi, best_p + step);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    while (b - a > 1e-12 * std::max(1.0, p_hi)) {
      const double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
      if (f(c1) < f(c2)) a = c1; else b = c2;
    }
    best_p = 0.5 * (a + b);
    best_v = f(best_p);
  }

  const double v_cf = f(0.0);
  const double v_df = f(p_hi);
  SpcSolution sol;
  if (std::abs(v_cf - v_df) <= kTieTol &&
      best_v <= std::max(v_cf, v_df) + kTieTol) {
    sol.mode = Mode::Boundary;
    sol.p_df_star = 0.0;
    sol.rate = std::max(v_cf, v_df);
  } else if (v_df >= v_cf && v_df + kTieTol >= best_v) {
    sol.mode = Mode::PureDF;
    sol.p_df_star = p_hi;
    sol.rate = v_df;
  } else if (v_cf > v_df && v_cf + kTieTol >= best_v) {
    sol.mode = Mode::PureCF;
    sol.p_df_star = 0.0;
    sol.rate = v_cf;
  } else {
    // Interior maximum would contradict the corner property; report the
    // scanned optimum honestly.
    sol.mode = v_df >= v_cf ? Mode::PureDF : Mode::PureCF;
    sol.p_df_star = best_p;
    sol.rate = best_v;
  }
  return sol;
}

}  // namespace diamond::spc
