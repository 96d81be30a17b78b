#include <doctest.h>

#include <cmath>

#include "fhlab/quadrature.hpp"
#include "fhlab/roots.hpp"
#include "fhlab/special.hpp"
#include "test_helpers.hpp"

using namespace fhlab;
using fhlab::test::close_abs;
using fhlab::test::close_rel;

namespace {

// zeta'(-1) from eta'(2):
//   zeta'(2) = 2 eta'(2) - log 2 pi^2 / 6,
//   zeta'(-1) = 1/12 - (gamma + log 2 pi) / 12 + zeta'(2) / (2 pi^2).
BigReal zeta_prime_oracle(mpfr_prec_t prec) {
  mpfr_prec_t p = prec + 32;
  int terms = static_cast<int>(prec * 0.302 * 1.31) + 10;
  BigReal minus_eta_prime = fhlab::test::alternating_sum(
      [&](int k) {
        BigReal m(static_cast<long>(k + 1), p);
        return log(m) / square(m);
      },
      terms, p);
  BigReal pi = const_pi(p);
  BigReal zeta_prime_2 = -2L * minus_eta_prime - const_log2(p) * square(pi) / 6L;
  BigReal r = BigReal::ratio(1, 12, p) - (const_euler(p) + log(2L * pi)) / 12L + zeta_prime_2 / (2L * square(pi));
  return r.to_prec(prec);
}

// Composite Gauss-Legendre over [0, upper] with the given panel count.
BigReal composite_gl(const GaussLegendreRule& rule, const RealFn& f, const BigReal& upper, int panels) {
  BigReal sum(upper.prec());
  for (int i = 0; i < panels; ++i) {
    BigReal lo = upper * static_cast<long>(i) / static_cast<long>(panels);
    BigReal hi = upper * static_cast<long>(i + 1) / static_cast<long>(panels);
    sum += apply_gauss_legendre(rule, f, lo, hi);
  }
  return sum;
}

}  // namespace

TEST_CASE("PrecContext validation") {
  CHECK_THROWS_AS(PrecContext(32), DomainError);
  CHECK_THROWS_AS(PrecContext(128, 8), DomainError);
  CHECK_THROWS_AS(PrecContext(128, 32, 0), DomainError);
  PrecContext ctx(256);
  CHECK(ctx.bits() == 288);
  CHECK(ctx.decimal_digits() == 80);
}

TEST_CASE("decimal round trip within one ulp") {
  PrecContext ctx(256);
  for (double x : {1.0, -3.25, 1e-300, 7.0e200}) {
    BigReal v = sqrt(BigReal(std::abs(x), ctx.bits())) * (x < 0 ? -1L : 1L) / 3L;
    BigReal back = BigReal::parse(v.to_string(ctx), ctx.bits());
    CHECK(log2_abs(back - v) - log2_abs(v) <= -ctx.work_bits);
  }
  CHECK_THROWS_AS(BigReal::parse("1.5x", 128), DomainError);
  CHECK_THROWS_AS(BigReal::parse("", 128), DomainError);
}

TEST_CASE("gamma_real") {
  PrecContext ctx(256);
  const auto p = ctx.bits();
  CHECK(gamma_real(ctx, BigReal(1L, p)) == 1.0);
  CHECK(gamma_real(ctx, BigReal(5L, p)) == 24.0);
  BigReal sqrt_pi = sqrt(const_pi(p));
  CHECK(close_rel(gamma_real(ctx, BigReal(0.5, p)), sqrt_pi, -248));
  // Gamma(1/2) = 2 int_0^inf e^{-u^2} du by plain Gauss-Legendre panels
  GaussLegendreRule rule = gauss_legendre_rule(p, 40);
  BigReal quad = 2L * composite_gl(rule, [](const BigReal& u) { return exp(-square(u)); }, BigReal(26L, p), 26);
  CHECK(close_rel(quad, gamma_real(ctx, BigReal(0.5, p)), -240));
  for (double x : {0.3, 1.7, 6.5}) {
    BigReal bx = BigReal::parse(std::to_string(x), p);
    CHECK(close_rel(gamma_real(ctx, bx + 1L), bx * gamma_real(ctx, bx), -(256 - 12)));
  }
  CHECK_THROWS_AS(gamma_real(ctx, BigReal(0L, p)), DomainError);
  CHECK_THROWS_AS(gamma_real(ctx, BigReal(-2.5, p)), DomainError);
}

TEST_CASE("zeta'(-1) against the eta'(2) oracle") {
  PrecContext ctx(256);
  BigReal z = zeta_prime_minus_one(ctx);
  BigReal oracle = zeta_prime_oracle(ctx.bits());
  CHECK(close_rel(z, oracle, -248));
  CHECK(std::abs(z.to_double() + 0.16542114370045092) < 1e-15);
  BigReal z128 = zeta_prime_minus_one(PrecContext(128));
  CHECK(abs(z128 - z) < ldexp_one(-120, 300));
}

TEST_CASE("log Barnes G") {
  PrecContext ctx(256);
  const auto p = ctx.bits();
  for (long k : {1L, 2L, 3L}) CHECK(abs(log_barnes_g(ctx, BigReal(k, p))) < ldexp_one(-240, p));
  // G(4) = Gamma(3) G(3) = 2, G(5) = Gamma(4) G(4) = 12
  CHECK(close_rel(log_barnes_g(ctx, BigReal(4L, p)), log(BigReal(2L, p)), -240));
  CHECK(close_rel(log_barnes_g(ctx, BigReal(5L, p)), log(BigReal(12L, p)), -240));
  // log G(1/2) = 3/2 zeta'(-1) - log(pi)/4 + log(2)/24
  BigReal half = BigReal(0.5, p);
  BigReal expect = 3L * zeta_prime_oracle(p) / 2L - log(const_pi(p)) / 4L + const_log2(p) / 24L;
  CHECK(close_rel(log_barnes_g(ctx, half), expect, -240));
  // functional equation away from integers
  BigReal x = BigReal::parse("1.37", p);
  CHECK(close_rel(log_barnes_g(ctx, x + 1L), log_barnes_g(ctx, x) + log_gamma(ctx, x), -240));
  // precision ladder
  PrecContext wide(512);
  BigReal y = BigReal::parse("2.75", wide.bits());
  CHECK(abs(log_barnes_g(ctx, y) - log_barnes_g(wide, y)) < ldexp_one(-256 + 16, wide.bits()));
  CHECK_THROWS_AS(log_barnes_g(ctx, BigReal(0L, p)), DomainError);
}

TEST_CASE("quadrature with endpoint singularities") {
  PrecContext ctx(256);
  const auto p = ctx.bits();
  BigReal zero(p);
  BigReal one(1L, p);
  auto unit = [](const BigReal& x) { return BigReal(1L, x.prec()); };
  QuadResult arcsine = quad_half_exponents(ctx, unit, zero, one, -1, -1);
  CHECK(close_rel(arcsine.value, const_pi(p), -128));
  CHECK(arcsine.error <= ldexp_one(-128, p));

  // semicircle normalisation: (2/pi) sqrt(1-x)(1+x) over [-1, 1]
  QuadResult sc = quad_half_exponents(ctx, [&](const BigReal&) { return 2L / const_pi(p); }, -one, one, 1, 1);
  CHECK(close_rel(sc.value, one, -128));

  QuadResult lin = quad_half_exponents(ctx, [](const BigReal& x) { return x; }, zero, one, 0, 0);
  CHECK(close_rel(lin.value, BigReal(0.5, p), -128));

  // Beta(0.7, 1.7) with non half-integer exponents
  BigReal pl = BigReal::parse("-0.3", p);
  BigReal pr = BigReal::parse("0.7", p);
  QuadResult beta = quad_endpoint_singular(ctx, unit, zero, one, pl, pr);
  BigReal expect = gamma_real(ctx, pl + 1L) * gamma_real(ctx, pr + 1L) / gamma_real(ctx, pl + pr + 2L);
  CHECK(close_rel(beta.value, expect, -128));

  CHECK_THROWS_AS(quad_half_exponents(ctx, unit, zero, one, -2, 0), DomainError);
  PrecContext tight(256, 32, 20);
  CHECK_THROWS_AS(quad_endpoint_singular(tight, unit, zero, one, pl, pr), NumericError);
}

TEST_CASE("Gauss-Legendre oracle rule") {
  const mpfr_prec_t p = 200;
  GaussLegendreRule rule = gauss_legendre_rule(p, 40);
  BigReal sum_w(p);
  for (const auto& w : rule.weights) sum_w += w;
  CHECK(close_rel(sum_w, BigReal(2L, p), -190));
  BigReal e1 = apply_gauss_legendre(rule, [](const BigReal& x) { return exp(x); }, BigReal(p), BigReal(1L, p));
  CHECK(close_rel(e1, exp(BigReal(1L, p)) - 1L, -190));
}

TEST_CASE("bisect_monotone") {
  PrecContext ctx(128);
  const auto p = ctx.bits();
  BigReal tol = BigReal::parse("1e-30", p);
  BigReal r = bisect_monotone(ctx, [](const BigReal& x) { return square(x) - 2L; }, BigReal(1L, p), BigReal(2L, p), tol);
  CHECK(abs(r - sqrt(BigReal(2L, p))) <= tol);
  BigReal z = bisect_monotone(ctx, [](const BigReal& x) { return x; }, BigReal(-1L, p), BigReal(1L, p), tol);
  CHECK(abs(z) <= tol);
  // decreasing function
  BigReal d = bisect_monotone(ctx, [](const BigReal& x) { return 1L - exp(x); }, BigReal(-3L, p), BigReal(5L, p), tol);
  CHECK(abs(d) <= tol);
  CHECK_THROWS_AS(
      bisect_monotone(ctx, [](const BigReal& x) { return square(x) + 1L; }, BigReal(-1L, p), BigReal(1L, p), tol),
      NumericError);
}

TEST_CASE("parabolic cylinder U") {
  PrecContext ctx(128);
  const auto p = ctx.bits();
  BigReal half(0.5, p);
  BigReal zero(p);
  CHECK(close_rel(pcf_u(ctx, half, zero), sqrt(const_pi(p) / 2L), -64));
  BigReal one(1L, p);
  BigReal expect = exp(BigReal(0.25, p)) * sqrt(const_pi(p) / 2L) * erfc(one / sqrt(BigReal(2L, p)));
  CHECK(close_rel(pcf_u(ctx, half, one), expect, -64));
  CHECK(close_rel(pcf_u(ctx, BigReal(1.5, p), zero), one, -64));
  CHECK_THROWS_AS(pcf_u(ctx, BigReal(-0.5, p), zero), DomainError);

  // Oracle: substitute x = y^2, which makes the integrand smooth for these a,
  // then composite Gauss-Legendre panels.
  GaussLegendreRule rule = gauss_legendre_rule(p, 48);
  for (double a : {0.5, 1.0, 2.5}) {
    for (double z : {-1.0, 0.0, 1.5}) {
      BigReal ba(a, p);
      BigReal bz(z, p);
      auto g = [&](const BigReal& y) {
        BigReal y2 = square(y);
        return 2L * pow(y, BigReal(2.0 * a, p)) * exp(-(square(y2) / 2L + bz * y2));
      };
      BigReal integral = composite_gl(rule, g, BigReal(5L, p), 20);
      BigReal oracle = exp(-square(bz) / 4L) / gamma_real(ctx, ba + 0.5) * integral;
      CHECK(close_rel(pcf_u(ctx, ba, bz), oracle, -128 / 2 + 8));
    }
  }
}
