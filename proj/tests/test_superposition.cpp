#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "diamond/rates.hpp"
#include "diamond/superposition.hpp"

using namespace diamond;

TEST_CASE("objective corners reduce to the pure schemes") {
  CHECK(spc::spc_objective(0.0, 3.0, 1.0) ==
        doctest::Approx(rates::r_cf(3.0, 1.0)).epsilon(1e-13));
  CHECK(spc::spc_objective(3.0, 3.0, 1.0) ==
        doctest::Approx(rates::r_df(3.0)).epsilon(1e-13));
  // At the threshold the objective is flat; away from it the interior is
  // strictly dominated.
  CHECK(spc::spc_objective(1.5, 3.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spc::spc_objective(1.5, 3.0, 2.0) < rates::r_cf(3.0, 2.0));
  CHECK(spc::spc_objective(1.5, 3.0, 0.75) < spc::spc_objective(3.0, 3.0, 0.75));
  CHECK_THROWS_AS(spc::spc_objective(4.0, 3.0, 1.0), std::domain_error);
  // c too small for this DF share.
  CHECK_THROWS_AS(spc::spc_objective(3.0, 3.0, 0.2), std::domain_error);
}

TEST_CASE("derivative sign tracks the threshold region") {
  for (double p_df : {0.3, 1.0, 2.0, 2.8}) {
    CHECK(spc::spc_derivative(p_df, 3.0, 2.0) < 0.0);
    CHECK(spc::spc_derivative(p_df, 3.0, 0.75) > 0.0);
  }
  CHECK_THROWS_AS(spc::spc_derivative(0.0, 3.0, 1.0), std::domain_error);
}

TEST_CASE("derivative matches finite differences") {
  const double p = 3.0, c = 1.5, step = 1e-5;
  for (double p_df : {0.5, 1.0, 2.0}) {
    const double fd = (spc::spc_objective(p_df + step, p, c) -
                       spc::spc_objective(p_df - step, p, c)) /
                      (2.0 * step);
    CHECK(std::abs(spc::spc_derivative(p_df, p, c) - fd) < 1e-6);
  }
}

TEST_CASE("threshold closed form") {
  CHECK(spc::spc_threshold(3.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(spc::spc_threshold(0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(spc::spc_threshold(15.0) == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("optimizer picks the right corner") {
  const auto hi = spc::spc_optimize(3.0, 2.0);
  CHECK(hi.mode == spc::Mode::PureCF);
  CHECK(hi.p_df_star == 0.0);
  CHECK(hi.rate == doctest::Approx(rates::r_cf(3.0, 2.0)).epsilon(1e-9));

  const auto lo = spc::spc_optimize(3.0, 0.75);
  CHECK(lo.mode == spc::Mode::PureDF);
  CHECK(lo.p_df_star == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(lo.rate == doctest::Approx(1.0).epsilon(1e-9));

  const auto tie = spc::spc_optimize(3.0, 1.0);
  CHECK(tie.mode == spc::Mode::Boundary);
  CHECK(tie.rate == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("DF corner is clipped when the fronthaul cannot carry it") {
  // c < c_df_min(3) = 0.5: full-power DF is infeasible.
  CHECK(spc::p_df_max(3.0, 0.25) < 3.0);
  const auto sol = spc::spc_optimize(3.0, 0.25);
  CHECK(sol.rate >= rates::r_cf(3.0, 0.25) - 1e-12);
  if (sol.mode == spc::Mode::PureDF) {
    // The clipped DF corner carries exactly 2C.
    CHECK(sol.rate == doctest::Approx(0.5).epsilon(1e-6));
  }
}

TEST_CASE("corner optimality on a parameter grid") {
  for (double p : {0.5, 1.0, 3.0, 10.0, 30.0}) {
    for (double c : {0.6, 0.8, 1.0, 1.5, 2.0, 3.0}) {
      const double p_hi = spc::p_df_max(p, c);
      double best = -1.0;
      const int n = 10000;
      for (int i = 0; i <= n; ++i) {
        const double p_df = p_hi * i / n;
        best = std::max(best, spc::spc_objective(p_df, p, c));
      }
      // A corner attains the scan maximum (ties at the threshold count).
      const double corner_val = std::max(spc::spc_objective(0.0, p, c),
                                         spc::spc_objective(p_hi, p, c));
      CHECK(best <= corner_val + 1e-9);
      const auto sol = spc::spc_optimize(p, c);
      CHECK(sol.rate == doctest::Approx(best).epsilon(1e-7));
    }
  }
}
