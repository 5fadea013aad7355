#include "diamond/freq.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "diamond/atlas.hpp"
#include "diamond/lp.hpp"
#include "diamond/rates.hpp"

namespace diamond::freq {

namespace {

constexpr double kLn2 = 0.6931471805599453;
// Per-use fronthaul cap: beyond this r_cf has saturated in double precision,
// which stands in for the lambda_C -> 0 limit of an unbounded c~.
constexpr double kCtildeCap = 60.0;

// Solve r_cf_dp(p, ct) = alpha for p; the derivative decreases from
// r_cf_dp_at_zero(ct) to 0, so the root is unique when it exists.
bool solve_p(double alpha, double ct, double* p_out) {
  if (rates::r_cf_dp_at_zero(ct) < alpha) return false;
  double lo = 0.0, hi = 1.0;
  while (rates::r_cf_dp(hi, ct) > alpha) {
    hi *= 2.0;
    if (hi > 1e18) return false;
  }
  for (int i = 0; i < 100 && hi - lo > 1e-14 * (1.0 + hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (rates::r_cf_dp(mid, ct) > alpha) lo = mid; else hi = mid;
  }
  *p_out = 0.5 * (lo + hi);
  return true;
}

// Robust upper-branch solve of the CF stationarity system in (p, c~) for
// given alpha = lambda_S/(2h^2) and lambda_C: find the peak of
// psi(c~) = r_cf_dc(p(c~), c~) - lambda_C, then bisect down its upper flank.
bool cf_solve_robust(double alpha, double lc, double* p_out, double* ct_out) {
  if (!(alpha > 0.0) || alpha * kLn2 >= 1.0) return false;
  const double ct_min = -0.5 * std::log2(1.0 - alpha * kLn2);
  if (!(ct_min < kCtildeCap)) return false;

  if (lc < 1e-14) {
    // Free fronthaul: the stationary c~ is unbounded; evaluate at the cap.
    if (!solve_p(alpha, kCtildeCap, p_out)) return false;
    *ct_out = kCtildeCap;
    return true;
  }

  const auto psi = [&](double x) {
    const double ct = std::exp(x);
    double p;
    if (!solve_p(alpha, ct, &p)) return -1e9;
    return rates::r_cf_dc(p, ct) - lc;
  };
  double a = std::log(ct_min * (1.0 + 1e-12)), b = std::log(kCtildeCap);
  // Golden-section maximization of psi.
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
  double f1 = psi(c1), f2 = psi(c2);
  double lo = a, hi = b;
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      lo = c1; c1 = c2; f1 = f2;
      c2 = lo + gr * (hi - lo); f2 = psi(c2);
    } else {
      hi = c2; c2 = c1; f2 = f1;
      c1 = hi - gr * (hi - lo); f1 = psi(c1);
    }
  }
  const double x_peak = 0.5 * (lo + hi);
  if (psi(x_peak) < 0.0) return false;  // no real root: infeasible point
  // Upper root: psi > 0 at the peak, < 0 at the cap.
  double ra = x_peak, rb = std::log(kCtildeCap);
  if (psi(rb) > 0.0) {
    // Root pushed beyond the cap (tiny lambda_C): clamp.
    ra = rb;
  } else {
    for (int i = 0; i < 100 && rb - ra > 1e-13; ++i) {
      const double mid = 0.5 * (ra + rb);
      if (psi(mid) > 0.0) ra = mid; else rb = mid;
    }
  }
  const double ct = std::exp(0.5 * (ra + rb));
  if (!solve_p(alpha, ct, p_out)) return false;
  *ct_out = ct;
  return true;
}

// Damped Newton on F(p,c~) = (r_cf_dp - alpha, r_cf_dc - lambda_C) in log
// coordinates, warm-started; accepts only concave-branch roots (Jacobian of
// F is the r_cf Hessian up to positive scaling: need J11 < 0, det J > 0).
bool cf_solve_newton(double alpha, double lc, double p0, double ct0,
                     double* p_out, double* ct_out) {
  if (!(p0 > 0.0) || !(ct0 > 0.0) || lc < 1e-14) return false;
  double u = std::log(p0), v = std::log(ct0);
  for (int iter = 0; iter < 40; ++iter) {
    const double p = std::exp(u), ct = std::exp(v);
    if (!std::isfinite(p) || !std::isfinite(ct) || ct > 2.0 * kCtildeCap ||
        p > 1e18) {
      return false;
    }
    const double f1 = rates::r_cf_dp(p, ct) - alpha;
    const double f2 = rates::r_cf_dc(p, ct) - lc;
    if (std::abs(f1) < 1e-12 * (1.0 + alpha) &&
        std::abs(f2) < 1e-12 * (1.0 + lc)) {
      // Branch check via the finite-difference Jacobian in (p, c~).
      const double dp = 1e-6 * (1.0 + p), dc = 1e-6 * (1.0 + ct);
      const double j11 = (rates::r_cf_dp(p + dp, ct) - rates::r_cf_dp(p, ct)) / dp;
      const double j12 = (rates::r_cf_dp(p, ct + dc) - rates::r_cf_dp(p, ct)) / dc;
      const double j21 = (rates::r_cf_dc(p + dp, ct) - rates::r_cf_dc(p, ct)) / dp;
      const double j22 = (rates::r_cf_dc(p, ct + dc) - rates::r_cf_dc(p, ct)) / dc;
      if (j11 >= 0.0 || j11 * j22 - j12 * j21 < -1e-12) return false;
      *p_out = p;
      *ct_out = ct;
      return true;
    }
    const double step = 1e-7;
    const double pu = std::exp(u + step), cv = std::exp(v + step);
    const double j11 = (rates::r_cf_dp(pu, ct) - (f1 + alpha)) / step;
    const double j12 = (rates::r_cf_dp(p, cv) - (f1 + alpha)) / step;
    const double j21 = (rates::r_cf_dc(pu, ct) - (f2 + lc)) / step;
    const double j22 = (rates::r_cf_dc(p, cv) - (f2 + lc)) / step;
    const double det = j11 * j22 - j12 * j21;
    if (std::abs(det) < 1e-300) return false;
    double du = -(f1 * j22 - f2 * j12) / det;
    double dv = -(j11 * f2 - j21 * f1) / det;
    const double norm = std::max(std::abs(du), std::abs(dv));
    if (norm > 1.0) { du /= norm; dv /= norm; }
    u += du;
    v += dv;
  }
  return false;
}

ModeAllocation cf_solve(const LagrangePoint& lp, double h,
                        const ModeAllocation* warm) {
  ModeAllocation out;
  const double h2 = h * h;
  if (!(h2 > 0.0) || !(lp.lambda_s > 0.0) || lp.lambda_c < 0.0 ||
      lp.lambda_c > 2.0) {
    return out;
  }
  // Fast reject well above the CF region line (validated against the
  // numerical boundary); points near the line get the full treatment.
  const double line = atlas::cf_region_line(std::min(lp.lambda_c, 2.0), h);
  if (lp.lambda_s > 1.05 * line + 1e-12) return out;

  const double alpha = lp.lambda_s / (2.0 * h2);
  double p = 0.0, ct = 0.0;
  bool ok = false;
  if (warm != nullptr && warm->feasible) {
    ok = cf_solve_newton(alpha, lp.lambda_c, warm->s * h2, 0.5 * warm->c, &p,
                         &ct);
  }
  if (!ok) ok = cf_solve_robust(alpha, lp.lambda_c, &p, &ct);
  if (!ok) return out;
  out.feasible = true;
  out.s = p / h2;
  out.c = 2.0 * ct;
  out.r = rates::r_cf(p, ct);
  return out;
}

void check_nonneg(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw std::domain_error(std::string("diamond::freq: ") + what +
                            " must be finite and nonnegative");
  }
}

}  // namespace

double r_df_freq(double s, double h) {
  check_nonneg(s, "s");
  check_nonneg(h, "h");
  return 0.5 * std::log2(1.0 + s * h * h);
}

double r_cf_freq(double s, double c, double h) {
  check_nonneg(s, "s");
  check_nonneg(c, "c");
  check_nonneg(h, "h");
  return rates::r_cf(s * h * h, 0.5 * c);
}

ModeAllocation df_stationary(const LagrangePoint& lp, double h) {
  ModeAllocation out;
  const double h2 = h * h;
  if (!(h2 > 0.0) || !(lp.lambda_s > 0.0) || lp.lambda_c < 0.0 ||
      lp.lambda_c >= 2.0) {
    return out;
  }
  const double level = (2.0 - lp.lambda_c) / (2.0 * lp.lambda_s * kLn2);
  const double s = level - 1.0 / h2;
  if (!(s > 0.0)) return out;
  out.feasible = true;
  out.s = s;
  out.r = 0.5 * std::log2(h2 * level);  // = r_df_freq(s, h)
  out.c = out.r;                        // DF fronthaul density equals its rate
  return out;
}

ModeAllocation cf_stationary(const LagrangePoint& lp, double h) {
  return cf_solve(lp, h, nullptr);
}

ModeAllocation cf_stationary_warm(const LagrangePoint& lp, double h,
                                  const ModeAllocation& warm) {
  return cf_solve(lp, h, &warm);
}

std::pair<double, std::vector<BandAllocation>> dual_value(
    const LagrangePoint& lp, const ChannelSpec& spec) {
  const double df = spec.band_width();
  std::vector<BandAllocation> cands(spec.gains.size());
  double value = lp.lambda_s * 0.5 * spec.p_total + lp.lambda_c * spec.c_total;
  for (std::size_t i = 0; i < spec.gains.size(); ++i) {
    BandAllocation& b = cands[i];
    b.h = spec.gains[i];
    b.df = df_stationary(lp, b.h);
    b.cf = cf_stationary(lp, b.h);
    double best = 0.0;
    if (b.df.feasible) {
      best = std::max(best, 2.0 * b.df.r - lp.lambda_s * b.df.s -
                                lp.lambda_c * b.df.c);
    }
    if (b.cf.feasible) {
      best = std::max(best, 2.0 * b.cf.r - lp.lambda_s * b.cf.s -
                                lp.lambda_c * b.cf.c);
    }
    value += df * best;
  }
  return {value, std::move(cands)};
}

AllocationPlan lp_time_fractions(const ChannelSpec& spec,
                                 const std::vector<BandAllocation>& cands) {
  const int n = static_cast<int>(cands.size());
  const double df = spec.band_width();
  // Variables: x[0..n-1] = t_df, x[n..2n-1] = t_cf.
  std::vector<double> obj(2 * n, 0.0);
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(2 * n, 0.0);
    row[i] = 1.0;
    row[n + i] = 1.0;
    a.push_back(std::move(row));
    b.push_back(1.0);
  }
  std::vector<double> power_row(2 * n, 0.0), fh_row(2 * n, 0.0);
  for (int i = 0; i < n; ++i) {
    if (cands[i].df.feasible) {
      obj[i] = 2.0 * df * cands[i].df.r;
      power_row[i] = df * cands[i].df.s;
      fh_row[i] = df * cands[i].df.c;
    }
    if (cands[i].cf.feasible) {
      obj[n + i] = 2.0 * df * cands[i].cf.r;
      power_row[n + i] = df * cands[i].cf.s;
      fh_row[n + i] = df * cands[i].cf.c;
    }
  }
  a.push_back(std::move(power_row));
  b.push_back(0.5 * spec.p_total);
  a.push_back(std::move(fh_row));
  b.push_back(spec.c_total);

  const lp::Result sol = lp::maximize(obj, a, b);
  AllocationPlan plan;
  plan.bands = cands;
  if (!sol.ok) return plan;
  for (int i = 0; i < n; ++i) {
    BandAllocation& band = plan.bands[i];
    band.t_df = cands[i].df.feasible ? sol.x[i] : 0.0;
    band.t_cf = cands[i].cf.feasible ? sol.x[n + i] : 0.0;
    plan.power_used +=
        2.0 * df * (band.t_df * band.df.s + band.t_cf * band.cf.s);
    plan.fronthaul_used += df * (band.t_df * band.df.c + band.t_cf * band.cf.c);
    plan.rate += 2.0 * df * (band.t_df * band.df.r + band.t_cf * band.cf.r);
  }
  return plan;
}

OptimizeResult optimize(const ChannelSpec& spec, const GridOptions& opts) {
  if (opts.n_lambda_c < 2 || opts.n_lambda_s < 2) {
    throw std::invalid_argument("diamond::freq: dual grid must be >= 2x2");
  }
  if (spec.bands() < 1 || !(spec.bandwidth > 0.0)) {
    throw std::invalid_argument("diamond::freq: invalid channel spec");
  }
  OptimizeResult best;
  if (!(spec.p_total > 0.0) || !(spec.c_total > 0.0)) {
    best.plan.bands.resize(spec.gains.size());
    for (std::size_t i = 0; i < spec.gains.size(); ++i) {
      best.plan.bands[i].h = spec.gains[i];
    }
    return best;
  }

  double h2_max = 0.0;
  for (double h : spec.gains) h2_max = std::max(h2_max, h * h);
  if (h2_max == 0.0) {
    best.plan.bands.resize(spec.gains.size());
    return best;
  }
  const double ls_max = 2.0 * h2_max / kLn2;

  const auto scan = [&](double lc_lo, double lc_hi, double log_ls_lo,
                        double log_ls_hi) {
    const int nc = opts.n_lambda_c, ns = opts.n_lambda_s;
    for (int j = 0; j < nc; ++j) {
      const double lc = lc_lo + (lc_hi - lc_lo) * j / nc;  // [lo, hi)
      std::vector<ModeAllocation> warm(spec.gains.size());
      for (int i = 0; i < ns; ++i) {
        const double ls =
            std::exp(log_ls_lo + (log_ls_hi - log_ls_lo) * i / (ns - 1));
        const LagrangePoint lp{ls, lc};
        std::vector<BandAllocation> cands(spec.gains.size());
        for (std::size_t k = 0; k < spec.gains.size(); ++k) {
          cands[k].h = spec.gains[k];
          if (opts.modes != ModeFilter::CfOnly) {
            cands[k].df = df_stationary(lp, cands[k].h);
          }
          if (opts.modes != ModeFilter::DfOnly) {
            cands[k].cf = warm[k].feasible
                              ? cf_stationary_warm(lp, cands[k].h, warm[k])
                              : cf_stationary(lp, cands[k].h);
            warm[k] = cands[k].cf;
          }
        }
        AllocationPlan plan = lp_time_fractions(spec, cands);
        if (plan.rate > best.plan.rate * (1.0 + 1e-12) + 1e-15) {
          best.plan = std::move(plan);
          best.lp = lp;
        }
      }
    }
  };

  const double log_lo = std::log(1e-6), log_hi = std::log(ls_max);
  scan(0.0, 2.0, log_lo, log_hi);
  if (opts.refine && best.plan.rate > 0.0) {
    const double dlc = 2.0 / opts.n_lambda_c;
    const double dls = (log_hi - log_lo) / (opts.n_lambda_s - 1);
    const double lls = std::log(std::max(best.lp.lambda_s, 1e-12));
    scan(std::max(0.0, best.lp.lambda_c - 4.0 * dlc),
         std::min(2.0, best.lp.lambda_c + 4.0 * dlc),
         std::max(log_lo, lls - 4.0 * dls), std::min(log_hi, lls + 4.0 * dls));
  }

  best.power_active = best.plan.power_used >= spec.p_total * (1.0 - 1e-3);
  best.fronthaul_active = best.plan.fronthaul_used >= spec.c_total * (1.0 - 1e-3);
  return best;
}

}  // namespace diamond::freq
