#ifndef DIAMOND_FREQ_HPP
#define DIAMOND_FREQ_HPP

#include <utility>
#include <vector>

// Frequency-selective CF/DF allocation via Lagrangian duality.
//
// Bookkeeping: a band of width df carries 2*df real channel uses per second,
// each with unit noise variance. Per-band quantities are per-use: s is the
// per-use transmit SNR before the filter, c is the fronthaul density in
// bits/(sec*Hz) (= bits per two uses, so the per-use fronthaul is c/2), and
// r is the per-use rate, contributing 2*df*r bits/sec. Consequently the
// power constraint on s integrates against a per-use budget of P/2.

namespace diamond::freq {

struct ChannelSpec {
  double bandwidth = 0.0;             // W, Hz
  std::vector<double> gains;          // |H| at the N uniform band centers
  double p_total = 0.0;               // Watt
  double c_total = 0.0;               // bits/sec
  int bands() const { return static_cast<int>(gains.size()); }
  double band_width() const { return bandwidth / gains.size(); }
};

struct LagrangePoint {
  double lambda_s = 0.0;  // price of power
  double lambda_c = 0.0;  // price of fronthaul
};

struct ModeAllocation {
  double s = 0.0;  // per-use SNR
  double c = 0.0;  // fronthaul density, bits/(sec*Hz)
  double r = 0.0;  // per-use rate
  bool feasible = false;
};

struct BandAllocation {
  double h = 0.0;  // gain of this band
  double t_df = 0.0;
  double t_cf = 0.0;
  ModeAllocation df;
  ModeAllocation cf;
};

struct AllocationPlan {
  std::vector<BandAllocation> bands;
  double power_used = 0.0;      // Watt
  double fronthaul_used = 0.0;  // bits/sec
  double rate = 0.0;            // bits/sec
};

enum class ModeFilter { Both, CfOnly, DfOnly };

struct GridOptions {
  int n_lambda_c = 200;
  int n_lambda_s = 200;
  bool refine = true;
  ModeFilter modes = ModeFilter::Both;
};

struct OptimizeResult {
  AllocationPlan plan;
  LagrangePoint lp;
  bool power_active = false;      // complementary slackness at the optimum
  bool fronthaul_active = false;
};

double r_df_freq(double s, double h);
double r_cf_freq(double s, double c, double h);

// Appendix-style stationary allocations for one band of gain h.
ModeAllocation df_stationary(const LagrangePoint& lp, double h);
ModeAllocation cf_stationary(const LagrangePoint& lp, double h);
// Same, but warm-started from a previous nearby solution.
ModeAllocation cf_stationary_warm(const LagrangePoint& lp, double h,
                                  const ModeAllocation& warm);

// Lagrange dual value and the per-band stationary candidates behind it.
std::pair<double, std::vector<BandAllocation>> dual_value(
    const LagrangePoint& lp, const ChannelSpec& spec);

// Optimal time fractions for fixed per-band (s, c, r) via LP.
AllocationPlan lp_time_fractions(const ChannelSpec& spec,
                                 const std::vector<BandAllocation>& cands);

// Dual grid search (steps 1-5): per grid point compute stationary
// allocations, run the LP at the true budgets, keep the best primal rate.
OptimizeResult optimize(const ChannelSpec& spec, const GridOptions& opts = {});

}  // namespace diamond::freq

#endif
