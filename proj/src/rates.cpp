#include "diamond/rates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace diamond::rates {

namespace {

constexpr double kLn2 = 0.6931471805599453;

// Beyond this fronthaul rate 2^(4c) overflows any useful dynamic range and
// r_cf has saturated to its full-cooperation limit in double precision.
constexpr double kCfSaturation = 120.0;

void check_nonneg(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw std::domain_error(std::string("diamond::rates: ") + name +
                            " must be finite and nonnegative");
  }
}

// Inner argument of the CF logarithm, written so that the subtraction
// 2^(4c)+p-sqrt(...) never cancels:
//   g = 2p (E - 1) / (E + p + sqrt(D)),  E = 2^(4c),  D = p^2 + (1+2p) E.
double cf_log_arg(double p, double c) {
  const double e = std::exp2(4.0 * c);
  const double d = p * p + (1.0 + 2.0 * p) * e;
  return 2.0 * p * (e - 1.0) / (e + p + std::sqrt(d));
}

}  // namespace

Rate r_df(Snr p) {
  check_nonneg(p, "p");
  return 0.5 * std::log2(1.0 + p);
}

FronthaulRate c_df_min(Snr p) { return 0.5 * r_df(p); }

Rate r_cf(Snr p, FronthaulRate c) {
  check_nonneg(p, "p");
  check_nonneg(c, "c");
  if (p == 0.0 || c == 0.0) return 0.0;
  if (c > kCfSaturation) return 0.5 * std::log2(1.0 + 2.0 * p);
  return 0.5 * std::log2(1.0 + cf_log_arg(p, c));
}

Rate r_cf_sigma(Snr p, FronthaulRate c, double sigma2) {
  check_nonneg(p, "p");
  check_nonneg(c, "c");
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
    throw std::domain_error("diamond::rates: sigma2 must be positive");
  }
  const double comp = std::log2(1.0 + 1.0 / sigma2);
  const double cut1 = 0.5 * std::log2(1.0 + 2.0 * p / (1.0 + sigma2));
  const double cut2 = 0.5 * std::log2(1.0 + p / (1.0 + sigma2)) + c - 0.5 * comp;
  const double cut3 = 2.0 * c - comp;
  // A negative min means this distortion level cannot be carried at all.
  return std::max(0.0, std::min({cut1, cut2, cut3}));
}

Rate r_cf_sigma_opt(Snr p, FronthaulRate c) {
  check_nonneg(p, "p");
  check_nonneg(c, "c");
  if (p == 0.0 || c == 0.0) return 0.0;
  // Golden-section on log sigma2; the objective is unimodal (min of smooth
  // terms, one increasing and two decreasing in sigma2). A coarse pre-scan
  // brackets the peak before refinement.
  const auto f = [&](double logs) { return r_cf_sigma(p, c, std::exp(logs)); };
  const double lo0 = std::log(1e-8), hi0 = std::log(1e8);
  double best_x = lo0, best_v = f(lo0);
  constexpr int kScan = 200;
  for (int i = 1; i <= kScan; ++i) {
    const double x = lo0 + (hi0 - lo0) * i / kScan;
    const double v = f(x);
    if (v > best_v) { best_v = v; best_x = x; }
  }
  const double step = (hi0 - lo0) / kScan;
  double a = best_x - step, b = best_x + step;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
  double f1 = f(c1), f2 = f(c2);
  while (b - a > 1e-10) {
    if (f1 < f2) {
      a = c1; c1 = c2; f1 = f2;
      c2 = a + gr * (b - a); f2 = f(c2);
    } else {
      b = c2; c2 = c1; f2 = f1;
      c1 = b - gr * (b - a); f1 = f(c1);
    }
  }
  return f(0.5 * (a + b));
}

Rate r_spc(Snr p_df, Snr p_cf, FronthaulRate c_cf) {
  check_nonneg(p_df, "p_df");
  check_nonneg(p_cf, "p_cf");
  check_nonneg(c_cf, "c_cf");
  return r_df(p_df / (1.0 + p_cf)) + r_cf(p_cf, c_cf);
}

Rate cutset(Snr p, FronthaulRate c) {
  check_nonneg(p, "p");
  check_nonneg(c, "c");
  return std::min({0.5 * std::log2(1.0 + 2.0 * p),
                   0.5 * std::log2(1.0 + p) + c, 2.0 * c});
}

double r_cf_dp(Snr p, FronthaulRate c) {
  check_nonneg(p, "p");
  check_nonneg(c, "c");
  const double cc = std::min(c, kCfSaturation);
  const double e = std::exp2(4.0 * cc);
  const double d = p * p + (1.0 + 2.0 * p) * e;
  const double s = std::sqrt(d);
  const double q = e + p + s;
  const double g = 2.0 * p * (e - 1.0) / q;
  const double dq_dp = 1.0 + (p + e) / s;
  const double dg_dp = 2.0 * (e - 1.0) / q - g / q * dq_dp;
  return dg_dp / (2.0 * kLn2 * (1.0 + g));
}

double r_cf_dc(Snr p, FronthaulRate c) {
  check_nonneg(p, "p");
  check_nonneg(c, "c");
  if (c > kCfSaturation) return 0.0;
  const double e = std::exp2(4.0 * c);
  const double d = p * p + (1.0 + 2.0 * p) * e;
  const double s = std::sqrt(d);
  const double q = e + p + s;
  const double g = 2.0 * p * (e - 1.0) / q;
  const double de_dc = 4.0 * kLn2 * e;
  const double dq_dc = de_dc + (1.0 + 2.0 * p) * de_dc / (2.0 * s);
  const double dg_dc = 2.0 * p * (de_dc / q) - g / q * dq_dc;
  return dg_dc / (2.0 * kLn2 * (1.0 + g));
}

double r_cf_dp_at_zero(FronthaulRate c) {
  check_nonneg(c, "c");
  return -std::expm1(-2.0 * c * kLn2) / kLn2;
}

}  // namespace diamond::rates
