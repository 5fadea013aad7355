#ifndef DIAMOND_RATES_HPP
#define DIAMOND_RATES_HPP

// Single-letter rates and bounds for the symmetric primitive Gaussian
// diamond channel: one source, two non-cooperating relays, each with a
// noiseless fronthaul link of limited rate to the destination.
//
// Units: SNR values are dimensionless (power per unit-variance real AWGN
// channel use), rates are bits per channel use.

namespace diamond::rates {

// SNR of a real AWGN relay channel, >= 0.
using Snr = double;
// Fronthaul link rate, bits per channel use, >= 0.
using FronthaulRate = double;
// System rate, bits per channel use.
using Rate = double;

// Decode-and-forward system rate: (1/2) log2(1 + p).
// Throws std::domain_error for p < 0.
Rate r_df(Snr p);

// Minimal fronthaul rate supporting DF at SNR p; each relay carries half
// the message: r_df(p) / 2.
FronthaulRate c_df_min(Snr p);

// Compress-and-forward rate with distributed (Wyner-Ziv style) compression
// and joint decompression/decoding. Evaluated in a cancellation-free form,
// accurate also for large c.
Rate r_cf(Snr p, FronthaulRate c);

// Sigma-parameterized CF rate: min over the three oblivious cut expressions
// with compression-noise variance sigma2 > 0 at each relay.
Rate r_cf_sigma(Snr p, FronthaulRate c, double sigma2);

// max over sigma2 of r_cf_sigma; equals r_cf(p, c).
Rate r_cf_sigma_opt(Snr p, FronthaulRate c);

// Superposition rate: DF layer decoded against the CF layer as noise,
// r_df(p_df / (1 + p_cf)) + r_cf(p_cf, c_cf).
Rate r_spc(Snr p_df, Snr p_cf, FronthaulRate c_cf);

// Cut-set upper bound: min((1/2)log2(1+2p), (1/2)log2(1+p) + c, 2c).
Rate cutset(Snr p, FronthaulRate c);

// Partial derivatives of r_cf, needed by the superposition analysis and
// the frequency-domain stationarity equations.
double r_cf_dp(Snr p, FronthaulRate c);
double r_cf_dc(Snr p, FronthaulRate c);

// dr_cf/dp at p = 0 for given c: (1 - 2^(-2c)) / ln 2. Upper limit of the
// power derivative along p; used to bracket stationary-point solves.
double r_cf_dp_at_zero(FronthaulRate c);

}  // namespace diamond::rates

#endif
