#ifndef DIAMOND_ATLAS_HPP
#define DIAMOND_ATLAS_HPP

#include <utility>

#include "diamond/freq.hpp"

// Closed-form border lines on the (lambda_C, lambda_S) plane for a band of
// gain h, the region classification they induce, the gain threshold H_TH
// separating CF-heavy from DF-heavy bands, and the two-band power-swap
// exchange check. All lines scale as h^2.

namespace diamond::atlas {

using freq::AllocationPlan;
using freq::LagrangePoint;

enum class RegionLabel {
  R1_BothCFDominant,
  R2_CFOnly,
  R3_CFHigherRelayRate,
  R4_DFDominant,
  R5_DFOnly,
  Infeasible,
};

enum class BorderKind {
  DFRegion,
  CFRegion,
  EqualPower,
  EqualRelayRate,
  EqualSystemRate,  // coincides with EqualPower
};

// lambda_S as a function of lambda_C for each border, gain h.
double df_region_line(double lc, double h);
double cf_region_line(double lc, double h);
double equal_power_line(double lc, double h);
double equal_relayrate_line(double lc, double h);
double border_line(BorderKind kind, double lc, double h);

// Branch junctions (h-independent): the lambda_C where the in-region locus
// expression takes over from the region-line-based expression.
double equal_power_junction();
double equal_relayrate_junction();

// Closed-form (S_CF, C_CF) evaluated on the CF region line, in the same
// units as ModeAllocation (per-use SNR, fronthaul density).
std::pair<double, double> cf_on_region_line(double lc, double h);

RegionLabel classify(const LagrangePoint& lp, double h);

// Gain H_TH with lp exactly on the equal-power line; for h > H_TH the CF
// stationary power exceeds the DF one, and conversely.
double h_threshold(const LagrangePoint& lp);

// lambda_W = lambda_S / (1 - lambda_C/2).
double lambda_w(const LagrangePoint& lp);

struct SwapCheck {
  bool improvable = false;
  double residual_power = 0.0;
};

// Two-band exchange test: for modes A allocated in the lower-gain band1 and
// B in band2 with S_A(f1) > S_B(f2), moving the time portions and rescaling
// powers to preserve the channel output power frees
//   (2e+e^2)/(1+e)^2 * S_A1 - (2e+e^2) * S_B2,   e = h2/h1 - 1 > 0.
// A positive residual means the plan is improvable. Returns the largest
// residual over the qualifying (A, B) mode pairs.
SwapCheck swap_check(const AllocationPlan& plan, int band1, int band2);

}  // namespace diamond::atlas

#endif
