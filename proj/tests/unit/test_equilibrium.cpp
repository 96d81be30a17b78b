#include <doctest.h>

#include "fhlab/equilibrium.hpp"
#include "test_helpers.hpp"

using namespace fhlab;
using fhlab::test::close_abs;

namespace {

const PrecContext kCtx(128);

BigReal R(double x) { return BigReal(x, kCtx.bits()); }

}  // namespace

TEST_CASE("one-cut endpoints and constant") {
  EquilibriumData eq = one_cut(kCtx, R(0));
  BigReal s3 = sqrt(R(3));
  CHECK(close_abs(eq.b_bar, -1L / s3, 1e-30));
  CHECK(close_abs(eq.c_bar, 2L / s3, 1e-30));
  CHECK(close_abs(eq.ell, 1L + log(R(12)), 1e-30));
  EquilibriumData e1 = one_cut(kCtx, R(1));
  CHECK(close_abs(e1.b_bar, BigReal::ratio(-1, 3, kCtx.bits()), 1e-30));
  CHECK(close_abs(e1.c_bar, BigReal::ratio(5, 3, kCtx.bits()), 1e-30));
  CHECK_THROWS_AS(one_cut(kCtx, R(-1)), DomainError);
}

TEST_CASE("density is normalised in every regime") {
  for (double t : {-0.5, 0.0, 1.5}) {
    CAPTURE(t);
    CHECK(close_abs(total_mass(kCtx, one_cut(kCtx, R(t))), R(1), 1e-10));
  }
  CHECK(close_abs(total_mass(kCtx, semicircle(kCtx, R(0.3))), R(1), 1e-10));
  CHECK(close_abs(total_mass(kCtx, two_cut(kCtx, R(0), R(1))), R(1), 1e-10));
  CHECK(close_abs(total_mass(kCtx, two_cut(kCtx, R(-0.5), R(0.5))), R(1), 1e-10));
}

TEST_CASE("critical lambda") {
  BigReal expected = 2L * log(2L + sqrt(R(3)));
  CHECK(close_abs(lambda_crit(kCtx, R(0)), expected, 1e-12));
  for (double t : {-0.5, 0.0, 0.7, 2.0}) {
    CAPTURE(t);
    CHECK(close_abs(lambda_crit_closed(kCtx, R(t)), lambda_crit_integral(kCtx, R(t)), 1e-10));
  }
  CHECK(lambda_crit(kCtx, R(-0.99)) < 0.2);
  CHECK_THROWS_AS(lambda_crit(kCtx, R(-1.5)), DomainError);
}

TEST_CASE("two-cut solve satisfies its defining equations") {
  for (auto [t, l] : {std::pair{0.0, 1.0}, {0.5, 0.8}, {-0.5, 0.5}}) {
    CAPTURE(t);
    EquilibriumData eq = two_cut(kCtx, R(t), R(l));
    EndpointResiduals r = endpoint_residuals(kCtx, eq);
    CHECK(r.sum < 1e-12);
    CHECK(r.squares < 1e-12);
    CHECK(r.lambda < 1e-12);
    CHECK(eq.a < eq.b);
    CHECK(eq.b < eq.t);
    CHECK(eq.t < eq.c);
    CHECK(eq.omega > 0.0);
    CHECK(eq.omega < 1.0);
  }
  CHECK_THROWS_AS(two_cut(kCtx, R(0), R(3)), DomainError);
  CHECK_THROWS_AS(two_cut(kCtx, R(0), R(0)), DomainError);
  CHECK_THROWS_AS(two_cut(kCtx, R(1.2), R(1)), DomainError);
}

TEST_CASE("two-cut limits") {
  BigReal t = R(0.2);
  EquilibriumData low = two_cut(kCtx, t, R(1e-6));
  CHECK(close_abs(low.a, R(-1), 1e-2));
  CHECK(close_abs(low.c, R(1), 1e-2));
  CHECK(close_abs(low.b, t, 1e-2));
  CHECK(close_abs(low.omega, semicircle(kCtx, t).omega, 1e-2));
  BigReal lc = lambda_crit_closed(kCtx, t);
  EquilibriumData high = two_cut(kCtx, t, lc - 1e-6);
  CHECK(close_abs(high.a, high.b_bar, 1e-2));
  CHECK(close_abs(high.b, high.b_bar, 1e-2));
  CHECK(close_abs(high.c, high.c_bar, 1e-2));
  CHECK(high.omega < 1e-3);
  CHECK(close_abs(semicircle(kCtx, R(0)).omega, R(0.5), 1e-30));
}

TEST_CASE("b and omega decrease with lambda") {
  const PrecContext ctx(96);
  BigReal t(0.0, ctx.bits());
  BigReal lc = lambda_crit_closed(ctx, t);
  BigReal prev_b = t;
  BigReal prev_omega(1L, ctx.bits());
  for (int i = 1; i <= 20; ++i) {
    BigReal l = lc * i / 21L;
    EquilibriumData eq = two_cut(ctx, t, l);
    CAPTURE(i);
    CHECK(eq.b < prev_b);
    CHECK(eq.omega < prev_omega);
    prev_b = eq.b;
    prev_omega = eq.omega;
  }
}

TEST_CASE("Euler-Lagrange constant: tail and log forms agree") {
  EquilibriumData eq = two_cut(kCtx, R(0.3), R(1.2));
  CHECK(close_abs(ell_tail_form(kCtx, eq), ell_log_form(kCtx, eq), 1e-20));
  EquilibriumData sc = semicircle(kCtx, R(0.3));
  CHECK(close_abs(ell_log_form(kCtx, sc), sc.ell, 1e-20));
  EquilibriumData oc = one_cut(kCtx, R(0.4));
  CHECK(close_abs(ell_log_form(kCtx, oc), oc.ell, 1e-20));
}

TEST_CASE("F functional") {
  EquilibriumData sc = semicircle(kCtx, R(0.1));
  CHECK(close_abs(capital_f(kCtx, sc), 1.5 + 2L * log(R(2)), 1e-30));
  CHECK(close_abs(sc.ell + second_moment_term(kCtx, sc), capital_f(kCtx, sc), 1e-20));
  CHECK(close_abs(capital_f_one_cut_closed(kCtx, R(0)), 1.5 + log(R(12)), 1e-30));
  EquilibriumData oc = one_cut(kCtx, R(0.5));
  CHECK(close_abs(capital_f(kCtx, oc), capital_f_one_cut_closed(kCtx, R(0.5)), 1e-10));
}

TEST_CASE("variational conditions") {
  EquilibriumData oc = one_cut(kCtx, R(0));
  CHECK(abs(check_variational(kCtx, oc, R(0.5))) < 1e-8);
  CHECK(check_variational(kCtx, oc, 2L * oc.c_bar) < 0.0);
  CHECK(abs(check_variational(kCtx, oc, oc.b_bar)) < 1e-8);
  CHECK(check_variational(kCtx, oc, R(-1.5)) < 0.0);
  EquilibriumData tc = two_cut(kCtx, R(0), R(1));
  CHECK(abs(check_variational(kCtx, tc, (tc.a + tc.b) / 2L)) < 1e-8);
  CHECK(abs(check_variational(kCtx, tc, (tc.t + tc.c) / 2L)) < 1e-8);
  CHECK(check_variational(kCtx, tc, (tc.b + tc.t) / 2L) < 0.0);
  CHECK(check_variational(kCtx, tc, tc.c + 0.5) < 0.0);
  CHECK_THROWS_AS(check_variational(kCtx, tc, tc.b), DomainError);
}

TEST_CASE("omega integral identity at t = 0") {
  const PrecContext ctx(96);
  OmegaIntegral r = omega_lambda_integral(ctx, BigReal(0.0, ctx.bits()), 8, 1e-9);
  CHECK(close_abs(r.value, -log(BigReal(3L, ctx.bits())) / 2L, 1e-8));
}

TEST_CASE("relations between omega, ell and F") {
  const PrecContext ctx(96);
  BigReal t(0.0, ctx.bits());
  BigReal l(1.0, ctx.bits());
  CHECK(omega_relation_residual(ctx, t, l, BigReal(1e-5, ctx.bits())) < 1e-6);
  CHECK(omega_derivative_residual(ctx, t, l, 8) < 1e-6);
}

TEST_CASE("dispatcher picks the regime from lambda_c") {
  // lambda_c(-0.5) is about 0.9304, so lambda = 1.5 is already one-cut.
  CHECK(close_abs(lambda_crit(kCtx, R(-0.5)), R(0.930380135185776), 1e-12));
  EquilibriumData eq = equilibrium(kCtx, R(-0.5), R(1.5));
  CHECK(eq.regime == Regime::OneCut);
  CHECK(close_abs(2L * eq.b_bar + eq.c_bar, R(-0.5), 1e-30));
  CHECK(close_abs(2L * square(eq.b_bar) + square(eq.c_bar) - square(R(-0.5)), R(2), 1e-30));
  CHECK_THROWS_AS(two_cut(kCtx, R(-0.5), R(1.5)), DomainError);
  CHECK(equilibrium(kCtx, R(-0.5), R(0.5)).regime == Regime::TwoCut);
  CHECK(equilibrium(kCtx, R(-0.5), R(0)).regime == Regime::Semicircle);
}
