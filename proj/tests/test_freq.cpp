#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "diamond/freq.hpp"
#include "diamond/rates.hpp"

using namespace diamond;

namespace {
constexpr double kLn2 = 0.6931471805599453;

freq::ChannelSpec constant_spec(double w, int n, double h, double p, double c) {
  freq::ChannelSpec spec;
  spec.bandwidth = w;
  spec.gains.assign(n, h);
  spec.p_total = p;
  spec.c_total = c;
  return spec;
}
}  // namespace

TEST_CASE("per-band rate formulas") {
  CHECK(freq::r_df_freq(3.0, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(freq::r_df_freq(12.0, 0.5) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(freq::r_df_freq(5.0, 0.0) == 0.0);
  CHECK(freq::r_cf_freq(3.0, 2.0, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(freq::r_cf_freq(3.0, 0.0, 1.0) == 0.0);
  CHECK(freq::r_cf_freq(3.0, 2.0, 0.0) == 0.0);
  CHECK_THROWS_AS(freq::r_df_freq(-1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(freq::r_cf_freq(1.0, -1.0, 1.0), std::domain_error);
}

TEST_CASE("DF stationary closed form") {
  const auto m = freq::df_stationary({1.0 / (2.0 * kLn2), 0.0}, 1.0);
  REQUIRE(m.feasible);
  CHECK(m.s == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.c == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m.r == m.c);  // C_DF = R_DF identically
  CHECK(m.r == doctest::Approx(freq::r_df_freq(m.s, 1.0)).epsilon(1e-12));

  // Region boundary: s -> 0.
  const auto edge = freq::df_stationary({1.0 / kLn2, 0.0}, 1.0);
  CHECK_FALSE(edge.feasible);
  CHECK(edge.s == 0.0);

  CHECK_FALSE(freq::df_stationary({0.5, 2.0}, 1.0).feasible);
  CHECK_FALSE(freq::df_stationary({0.5, 0.5}, 0.0).feasible);
  // h^2 scaling of the region threshold.
  CHECK(freq::df_stationary({1.2 / kLn2, 0.0}, 2.0).feasible);
}

TEST_CASE("DF stationary is water-filling in 1/h^2") {
  const freq::LagrangePoint lp{0.3, 0.4};
  double prev = -1.0;
  for (double h : {0.6, 0.8, 1.0, 1.4, 2.0}) {
    const auto m = freq::df_stationary(lp, h);
    if (m.feasible) {
      CHECK(m.s > prev);
      prev = m.s;
    }
  }
}

TEST_CASE("CF stationary satisfies the gradient equations") {
  for (double lc : {0.2, 0.6, 1.0, 1.5}) {
    for (double frac : {0.1, 0.5, 0.9}) {
      const double h = 1.0;
      const double line = (3.0 * lc + 2.0 -
                           2.0 * std::sqrt(2.0 * lc * (lc + 2.0))) / kLn2;
      const freq::LagrangePoint lp{frac * line, lc};
      const auto m = freq::cf_stationary(lp, h);
      REQUIRE(m.feasible);
      const double p = m.s * h * h, ct = 0.5 * m.c;
      CHECK(2.0 * h * h * rates::r_cf_dp(p, ct) ==
            doctest::Approx(lp.lambda_s).epsilon(1e-8));
      CHECK(rates::r_cf_dc(p, ct) == doctest::Approx(lc).epsilon(1e-8));
      CHECK(m.r == doctest::Approx(freq::r_cf_freq(m.s, m.c, h)).epsilon(1e-12));
      // Warm start from the solution itself reproduces it.
      const auto warm = freq::cf_stationary_warm(lp, h, m);
      REQUIRE(warm.feasible);
      CHECK(warm.s == doctest::Approx(m.s).epsilon(1e-6));
      CHECK(warm.c == doctest::Approx(m.c).epsilon(1e-6));
    }
  }
}

TEST_CASE("CF stationary infeasible above the region line") {
  for (double lc : {0.3, 0.9, 1.6}) {
    const double line =
        (3.0 * lc + 2.0 - 2.0 * std::sqrt(2.0 * lc * (lc + 2.0))) / kLn2;
    CHECK_FALSE(freq::cf_stationary({1.2 * line, lc}, 1.0).feasible);
    CHECK(freq::cf_stationary({0.8 * line, lc}, 1.0).feasible);
  }
  CHECK_FALSE(freq::cf_stationary({0.5, 0.5}, 0.0).feasible);
}

TEST_CASE("dual value with empty allocation and weak duality") {
  const auto spec = constant_spec(1.0, 4, 1.0, 2.0, 1.0);
  // Far outside both regions: nothing allocated.
  const freq::LagrangePoint far{50.0, 1.9};
  const auto [v_far, cands_far] = freq::dual_value(far, spec);
  CHECK(v_far == doctest::Approx(far.lambda_s * 1.0 + far.lambda_c * 1.0)
                     .epsilon(1e-12));
  for (const auto& b : cands_far) {
    CHECK_FALSE(b.df.feasible);
    CHECK_FALSE(b.cf.feasible);
  }
  // Weak duality: dual >= Lagrangian of the LP plan at the same point.
  const freq::LagrangePoint mid{0.4, 0.5};
  const auto [v_mid, cands_mid] = freq::dual_value(mid, spec);
  const auto plan = freq::lp_time_fractions(spec, cands_mid);
  const double lagr = plan.rate -
                      mid.lambda_s * (0.5 * plan.power_used - 0.5 * spec.p_total) -
                      mid.lambda_c * (plan.fronthaul_used - spec.c_total);
  CHECK(v_mid >= lagr - 1e-9);
}

TEST_CASE("LP time fractions on a single band") {
  auto spec = constant_spec(0.5, 1, 1.0, 1e6, 1e6);
  std::vector<freq::BandAllocation> cands(1);
  cands[0].h = 1.0;
  cands[0].df = {3.0, 1.0, 1.0, true};
  cands[0].cf = {3.0, 2.0, 1.2, true};
  const auto generous = freq::lp_time_fractions(spec, cands);
  CHECK(generous.bands[0].t_cf == doctest::Approx(1.0));
  CHECK(generous.bands[0].t_df == doctest::Approx(0.0));
  CHECK(generous.rate == doctest::Approx(1.2).epsilon(1e-12));

  // All infeasible -> zero plan.
  std::vector<freq::BandAllocation> none(1);
  none[0].h = 1.0;
  const auto zero = freq::lp_time_fractions(spec, none);
  CHECK(zero.rate == 0.0);
  CHECK(zero.power_used == 0.0);
}

TEST_CASE("optimize handles degenerate budgets") {
  const auto spec = constant_spec(1.0, 2, 1.0, 3.0, 0.0);
  const auto res = freq::optimize(spec, {16, 16});
  CHECK(res.plan.rate == 0.0);
  CHECK_THROWS_AS(freq::optimize(spec, {1, 16}), std::invalid_argument);
}

TEST_CASE("constant filter reduces to the flat problem") {
  // Compact version of the flat/frequency consistency check.
  const auto spec = constant_spec(0.5, 1, 1.0, 3.0, 1.0);
  const auto res = freq::optimize(spec, {96, 96});
  CHECK(res.plan.rate == doctest::Approx(1.10447).epsilon(3e-2));
  CHECK(res.plan.power_used <= spec.p_total + 1e-6);
  CHECK(res.plan.fronthaul_used <= spec.c_total + 1e-6);
}

TEST_CASE("monotone filter flips DF feasibility once across bands") {
  freq::ChannelSpec spec;
  spec.bandwidth = 4.0;
  for (int i = 0; i < 16; ++i) spec.gains.push_back(0.1 + 0.12 * i);
  spec.p_total = 10.0;
  spec.c_total = 4.0;
  const freq::LagrangePoint lp{0.7, 0.3};
  const auto [value, cands] = freq::dual_value(lp, spec);
  (void)value;
  int flips = 0;
  for (std::size_t i = 1; i < cands.size(); ++i) {
    if (cands[i].df.feasible != cands[i - 1].df.feasible) ++flips;
  }
  CHECK(flips <= 1);
}
