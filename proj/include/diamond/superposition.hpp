#ifndef DIAMOND_SUPERPOSITION_HPP
#define DIAMOND_SUPERPOSITION_HPP

#include "diamond/rates.hpp"

// Superposition coding: a DF-decodable layer is sent on top of a CF layer in
// the same resource. Each relay decodes the DF layer (treating the CF layer
// as noise), forwards half the DF message plus the CF compression index.
// The optimum of the power split is always at a corner (pure CF or pure DF).

namespace diamond::spc {

using rates::FronthaulRate;
using rates::Rate;
using rates::Snr;

enum class Mode { PureDF, PureCF, Boundary };

struct SpcSolution {
  Snr p_df_star = 0.0;
  Rate rate = 0.0;
  Mode mode = Mode::PureCF;
};

// Largest p_df for which the residual CF fronthaul C - r_df(x)/2 stays
// nonnegative, x = p_df/(1+P-p_df); capped at p_total.
Snr p_df_max(Snr p_total, FronthaulRate c_total);

// R_SPC as a function of the DF power share: p_cf = P - p_df and
// c_cf = C - r_df(p_df/(1+p_cf))/2. Throws std::domain_error when the
// implied c_cf is negative (infeasible split).
Rate spc_objective(Snr p_df, Snr p_total, FronthaulRate c_total);

// Analytic d R_SPC / d p_df at an interior feasible point.
double spc_derivative(Snr p_df, Snr p_total, FronthaulRate c_total);

// Fronthaul threshold (1/4)log2(1+P) + 1/2 at which the pure-DF and pure-CF
// corners achieve the same rate; meaningful for results >= 1/2.
FronthaulRate spc_threshold(Snr p_total);

// Maximize over the feasible power split; per the corner property the
// result is a corner (or Boundary when both corners tie within 1e-9).
SpcSolution spc_optimize(Snr p_total, FronthaulRate c_total);

}  // namespace diamond::spc

#endif
