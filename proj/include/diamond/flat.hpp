#ifndef DIAMOND_FLAT_HPP
#define DIAMOND_FLAT_HPP

#include <vector>

#include "diamond/rates.hpp"

// Flat-channel CF/DF time sharing: split the block into a DF phase and a CF
// phase, each with its own power and fronthaul budget. Solved by a
// two-variable grid search (DF time share, DF power share) with an inner 1-D
// search over the CF time share; the DF fronthaul is pinned to r_df/2.

namespace diamond::flat {

using rates::FronthaulRate;
using rates::Rate;
using rates::Snr;

struct FlatPlan {
  double t_df = 0.0;
  double t_cf = 0.0;
  Snr p_df = 0.0;
  Snr p_cf = 0.0;
  FronthaulRate c_df = 0.0;
  FronthaulRate c_cf = 0.0;
  Rate rate = 0.0;
};

struct References {
  Rate cf_only = 0.0;   // r_cf at the full budgets
  Rate df_only = 0.0;   // best feasible pure-DF rate: min(r_df(P), 2C)
  Rate cutset = 0.0;
};

struct SweepPoint {
  double x = 0.0;  // the swept c or p value
  FlatPlan plan;
  References refs;
};

// Best feasible pure-DF time-sharing rate under power P and fronthaul C.
Rate df_only_rate(Snr p_total, FronthaulRate c_total);

FlatPlan flat_optimize(Snr p_total, FronthaulRate c_total,
                       int grid_resolution = 512);

std::vector<SweepPoint> flat_sweep_c(Snr p_total,
                                     const std::vector<FronthaulRate>& cs,
                                     int grid_resolution = 512);
std::vector<SweepPoint> flat_sweep_p(FronthaulRate c_total,
                                     const std::vector<Snr>& ps,
                                     int grid_resolution = 512);

}  // namespace diamond::flat

#endif
