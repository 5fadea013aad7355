#include "diamond/atlas.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace diamond::atlas {

namespace {

constexpr double kLn2 = 0.6931471805599453;

double root_term(double lc) { return std::sqrt(2.0 * lc * (lc + 2.0)); }

// h-normalized (h = 1) line values.
double df_norm(double lc) { return (2.0 - lc) / (2.0 * kLn2); }

double cf_norm(double lc) {
  return (3.0 * lc + 2.0 - 2.0 * root_term(lc)) / kLn2;
}

double pw_simple_norm(double lc) { return (2.0 - 3.0 * lc) / (2.0 * kLn2); }

double rr_simple_norm(double lc) {
  const double s3 = std::sqrt(3.0);
  return (3.0 * lc - 2.0 * s3 * lc - 2.0 * s3 + 4.0) / kLn2;
}

// The S_DF = S_CF-on-the-region-line construction line.
double pw_region_norm(double lc) {
  return (2.0 - lc) / (3.0 * kLn2) *
         (2.0 - (2.0 - lc) / (4.0 * lc + 4.0 - 3.0 * root_term(lc)));
}

// The C_DF = C_CF-on-the-region-line construction line.
double rr_region_norm(double lc) {
  const double u = root_term(lc);
  const double x = 3.0 * lc + 2.0 - 2.0 * u;
  const double t1 = (lc * (7.0 * lc * lc + 16.0 * lc + 4.0) -
                     lc * (1.5 * lc + 1.0) * (5.0 * lc + 6.0)) /
                    (kLn2 * (lc + 2.0) * x);
  const double t2 = lc * (5.0 * lc + 6.0) / (2.0 * kLn2 * (lc + 2.0));
  return t1 + t2;
}

// Branch junction: the lambda_C where the construction line meets the CF
// region line; there the in-region equality locus detaches from the border.
double find_junction(double (*construction)(double), double lo, double hi) {
  auto f = [&](double lc) { return construction(lc) - cf_norm(lc); };
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

void check_lc(double lc, double limit) {
  if (!(lc >= 0.0) || lc >= limit || !std::isfinite(lc)) {
    throw std::domain_error("diamond::atlas: lambda_c out of range");
  }
}

}  // namespace

double df_region_line(double lc, double h) {
  check_lc(lc, 2.0);
  return h * h * df_norm(lc);
}

double cf_region_line(double lc, double h) {
  check_lc(lc, 2.0 + 1e-12);
  return h * h * cf_norm(lc);
}

double equal_power_junction() {
  static const double j = find_junction(&pw_region_norm, 0.05, 0.6);
  return j;  // analytically 2/7
}

double equal_relayrate_junction() {
  static const double j = find_junction(&rr_region_norm, 0.5, 1.0);
  return j;
}

double equal_power_line(double lc, double h) {
  check_lc(lc, 2.0);
  // Below the junction the locus has not entered the region: CF power
  // dominates over the whole feasible overlap, so the border is the overlap
  // boundary itself. Past lambda_c = 2/3 the simple line is exhausted and
  // DF power dominates everywhere.
  if (lc < equal_power_junction()) {
    return h * h * std::min(cf_norm(lc), df_norm(lc));
  }
  return h * h * std::max(0.0, pw_simple_norm(lc));
}

double equal_relayrate_line(double lc, double h) {
  check_lc(lc, 2.0);
  if (lc < equal_relayrate_junction()) {
    return h * h * std::min(cf_norm(lc), df_norm(lc));
  }
  return h * h * std::max(0.0, rr_simple_norm(lc));
}

double border_line(BorderKind kind, double lc, double h) {
  switch (kind) {
    case BorderKind::DFRegion: return df_region_line(lc, h);
    case BorderKind::CFRegion: return cf_region_line(lc, h);
    case BorderKind::EqualPower: return equal_power_line(lc, h);
    case BorderKind::EqualRelayRate: return equal_relayrate_line(lc, h);
    case BorderKind::EqualSystemRate: return equal_power_line(lc, h);
  }
  throw std::domain_error("diamond::atlas: unknown border kind");
}

std::pair<double, double> cf_on_region_line(double lc, double h) {
  check_lc(lc, 2.0);
  const double h2 = h * h;
  const double u = root_term(lc);
  const double x = 3.0 * lc + 2.0 - 2.0 * u;
  const double s = (2.0 - lc) / (4.0 * h2 * x) - 1.0 / (4.0 * h2);
  double c = 0.0;
  if (lc > 0.0) {
    const double num = (4.0 - lc * lc) * x;
    const double den = 2.0 * lc *
                       (7.0 * lc * lc + 16.0 * lc + 4.0 -
                        5.0 * lc * u - 6.0 * u);
    c = std::log(num / den) / (2.0 * kLn2);
  }
  return {s, c};
}

RegionLabel classify(const LagrangePoint& lp, double h) {
  if (!(h > 0.0) || lp.lambda_s < 0.0 || lp.lambda_c < 0.0) {
    throw std::domain_error("diamond::atlas: invalid point");
  }
  const double lc = lp.lambda_c, ls = lp.lambda_s;
  const bool cf_ok = lc <= 2.0 && ls <= cf_region_line(std::min(lc, 2.0), h);
  const bool df_ok = lc < 2.0 && ls < df_region_line(std::min(lc, 2.0 - 1e-15), h);
  if (!cf_ok && !df_ok) return RegionLabel::Infeasible;
  if (cf_ok && !df_ok) return RegionLabel::R2_CFOnly;
  if (!cf_ok && df_ok) return RegionLabel::R5_DFOnly;
  const double pw = equal_power_line(lc, h);
  const double rr = equal_relayrate_line(lc, h);
  if (ls < pw) return RegionLabel::R1_BothCFDominant;
  if (ls < rr) return RegionLabel::R3_CFHigherRelayRate;
  return RegionLabel::R4_DFDominant;
}

double h_threshold(const LagrangePoint& lp) {
  if (!(lp.lambda_s > 0.0)) {
    throw std::domain_error("diamond::atlas: h_threshold needs lambda_s > 0");
  }
  const double norm = equal_power_line(lp.lambda_c, 1.0);
  if (!(norm > 0.0)) {
    throw std::domain_error(
        "diamond::atlas: no power threshold exists at this lambda_c");
  }
  return std::sqrt(lp.lambda_s / norm);
}

double lambda_w(const LagrangePoint& lp) {
  if (lp.lambda_c >= 2.0) {
    throw std::domain_error("diamond::atlas: lambda_w needs lambda_c < 2");
  }
  return lp.lambda_s / (1.0 - 0.5 * lp.lambda_c);
}

SwapCheck swap_check(const AllocationPlan& plan, int band1, int band2) {
  const int n = static_cast<int>(plan.bands.size());
  if (band1 < 0 || band2 < 0 || band1 >= n || band2 >= n || band1 == band2) {
    throw std::invalid_argument("diamond::atlas: bad band indices");
  }
  const freq::BandAllocation* lo = &plan.bands[band1];
  const freq::BandAllocation* hi = &plan.bands[band2];
  if (lo->h > hi->h) std::swap(lo, hi);
  if (!(hi->h > lo->h)) {
    throw std::invalid_argument("diamond::atlas: bands have equal gain");
  }
  const double eps = hi->h / lo->h - 1.0;
  const double factor = 2.0 * eps + eps * eps;

  SwapCheck out;
  const auto consider = [&](double t_a, double s_a, double t_b, double s_b) {
    if (t_a <= 0.0 || t_b <= 0.0 || !(s_a > s_b)) return;
    const double residual =
        factor / ((1.0 + eps) * (1.0 + eps)) * s_a - factor * s_b;
    out.residual_power = std::max(out.residual_power, residual);
  };
  // A in the lower-gain band, B in the higher-gain one, all mode pairings.
  consider(lo->t_df, lo->df.s, hi->t_df, hi->df.s);
  consider(lo->t_df, lo->df.s, hi->t_cf, hi->cf.s);
  consider(lo->t_cf, lo->cf.s, hi->t_df, hi->df.s);
  consider(lo->t_cf, lo->cf.s, hi->t_cf, hi->cf.s);
  out.improvable = out.residual_power > 1e-9;
  return out;
}

}  // namespace diamond::atlas
