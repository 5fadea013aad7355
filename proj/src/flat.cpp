#include "diamond/flat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace diamond::flat {

namespace {

constexpr double kEps = 1e-12;

// max over t in (0, t_hi] of t * r_cf(p_budget/t, c_budget/t).
// The perspective of a concave function is concave, hence unimodal in t.
struct CfStage {
  double t = 0.0;
  double value = 0.0;
};

CfStage best_cf_stage(double p_budget, double c_budget, double t_hi) {
  CfStage out;
  if (t_hi < kEps || p_budget < kEps || c_budget < kEps) return out;
  const auto g = [&](double t) {
    return t * rates::r_cf(p_budget / t, c_budget / t);
  };
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 1e-9, b = t_hi;
  double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
  double f1 = g(c1), f2 = g(c2);
  while (b - a > 1e-9) {
    if (f1 < f2) {
      a = c1; c1 = c2; f1 = f2;
      c2 = a + gr * (b - a); f2 = g(c2);
    } else {
      b = c2; c2 = c1; f2 = f1;
      c1 = b - gr * (b - a); f1 = g(c1);
    }
  }
  out.t = 0.5 * (a + b);
  out.value = g(out.t);
  // The boundary t = t_hi is a candidate too (golden may stop short).
  if (g(t_hi) >= out.value) { out.t = t_hi; out.value = g(t_hi); }
  return out;
}

struct Candidate {
  bool feasible = false;
  FlatPlan plan;
};

Candidate evaluate(double t_df, double phi, Snr p_total,
                   FronthaulRate c_total) {
  Candidate cand;
  FlatPlan& pl = cand.plan;
  double p_res = p_total, c_res = c_total;
  if (t_df > kEps && phi > kEps) {
    const double p_df = phi * p_total / t_df;
    const double c_df = 0.5 * rates::r_df(p_df);
    if (t_df * c_df > c_total + 1e-15) return cand;  // infeasible
    pl.t_df = t_df;
    pl.p_df = p_df;
    pl.c_df = c_df;
    pl.rate = t_df * rates::r_df(p_df);
    p_res = (1.0 - phi) * p_total;
    c_res = c_total - t_df * c_df;
  }
  const CfStage cf = best_cf_stage(p_res, c_res, 1.0 - pl.t_df);
  if (cf.value > 0.0) {
    pl.t_cf = cf.t;
    pl.p_cf = p_res / cf.t;
    pl.c_cf = c_res / cf.t;
    pl.rate += cf.value;
  }
  cand.feasible = true;
  return cand;
}

}  // namespace

Rate df_only_rate(Snr p_total, FronthaulRate c_total) {
  // t * r_df(P/t) increases in t; the fronthaul cap t * r_df(P/t)/2 <= C
  // therefore clips the rate at exactly 2C.
  return std::min(rates::r_df(p_total), 2.0 * c_total);
}

FlatPlan flat_optimize(Snr p_total, FronthaulRate c_total,
                       int grid_resolution) {
  if (p_total < 0.0 || c_total < 0.0) {
    throw std::domain_error("diamond::flat: negative budget");
  }
  if (grid_resolution < 2) {
    throw std::domain_error("diamond::flat: grid_resolution must be >= 2");
  }
  const int n = grid_resolution;
  FlatPlan best;
  double best_t = 0.0, best_phi = 0.0;

  const auto search = [&](double t_lo, double t_hi, double phi_lo,
                          double phi_hi) {
    for (int i = 0; i <= n; ++i) {
      const double t_df = t_lo + (t_hi - t_lo) * i / n;
      for (int j = 0; j <= n; ++j) {
        const double phi = phi_lo + (phi_hi - phi_lo) * j / n;
        const Candidate cand = evaluate(t_df, phi, p_total, c_total);
        if (cand.feasible && cand.plan.rate > best.rate + 1e-15) {
          best = cand.plan;
          best_t = t_df;
          best_phi = phi;
        }
      }
    }
  };

  search(0.0, 1.0, 0.0, 1.0);
  // One refinement pass: zoom to +-4 cells around the incumbent.
  const double cell = 1.0 / n;
  search(std::max(0.0, best_t - 4.0 * cell), std::min(1.0, best_t + 4.0 * cell),
         std::max(0.0, best_phi - 4.0 * cell),
         std::min(1.0, best_phi + 4.0 * cell));
  return best;
}

std::vector<SweepPoint> flat_sweep_c(Snr p_total,
                                     const std::vector<FronthaulRate>& cs,
                                     int grid_resolution) {
  if (cs.empty()) throw std::domain_error("diamond::flat: empty sweep list");
  std::vector<SweepPoint> out;
  out.reserve(cs.size());
  for (const double c : cs) {
    SweepPoint sp;
    sp.x = c;
    sp.plan = flat_optimize(p_total, c, grid_resolution);
    sp.refs = {rates::r_cf(p_total, c), df_only_rate(p_total, c),
               rates::cutset(p_total, c)};
    out.push_back(sp);
  }
  return out;
}

std::vector<SweepPoint> flat_sweep_p(FronthaulRate c_total,
                                     const std::vector<Snr>& ps,
                                     int grid_resolution) {
  if (ps.empty()) throw std::domain_error("diamond::flat: empty sweep list");
  std::vector<SweepPoint> out;
  out.reserve(ps.size());
  for (const double p : ps) {
    SweepPoint sp;
    sp.x = p;
    sp.plan = flat_optimize(p, c_total, grid_resolution);
    sp.refs = {rates::r_cf(p, c_total), df_only_rate(p, c_total),
               rates::cutset(p, c_total)};
    out.push_back(sp);
  }
  return out;
}

}  // namespace diamond::flat
