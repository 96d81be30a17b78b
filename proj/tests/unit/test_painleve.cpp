#include <doctest.h>

#include <tuple>

#include "fhlab/painleve.hpp"
#include "fhlab/special.hpp"
#include "fhlab/weight.hpp"
#include "test_helpers.hpp"

using namespace fhlab;
using fhlab::test::close_abs;
using fhlab::test::close_rel;

namespace {

const PrecContext kCtx(256);

BigReal R(const char* s) { return BigReal::parse(s, kCtx.bits()); }

}  // namespace

TEST_CASE("seed validation") {
  CHECK_THROWS_AS(SeedFunction(R("2"), -1, R("0.5")), DomainError);
  CHECK_THROWS_AS(SeedFunction(R("0.5"), 0, R("0.5")), DomainError);
  CHECK_NOTHROW(SeedFunction(R("-0.3"), 1, R("0")));
}

TEST_CASE("U below the integral range through the contiguous relation") {
  // U(-1/2, z) = e^{-z^2/4}
  for (const char* zs : {"-1.3", "0", "0.8"}) {
    BigReal z = R(zs);
    CHECK(close_rel(pcf_u_any(kCtx, R("-0.5"), z), exp(-square(z) / 4L), -120));
  }
  // U(-3/2, z) = z e^{-z^2/4}
  BigReal z = R("0.9");
  CHECK(close_rel(pcf_u_any(kCtx, R("-1.5"), z), z * exp(-square(z) / 4L), -120));
  // U(-5/2, z) = (z^2 - 1) e^{-z^2/4}
  CHECK(close_rel(pcf_u_any(kCtx, R("-2.5"), z), (square(z) - 1L) * exp(-square(z) / 4L), -115));
}

TEST_CASE("phi derivative against finite differences") {
  BigReal h = ldexp_one(-30, kCtx.bits());
  for (int eps : {-1, 1}) {
    SeedFunction seed(R("0.37"), eps, R("0.4"));
    BigReal z = R("0.3");
    std::vector<BigReal> d = phi_and_derivatives(kCtx, seed, z, 1);
    BigReal fd = (phi_and_derivatives(kCtx, seed, z + h, 0)[0] - phi_and_derivatives(kCtx, seed, z - h, 0)[0]) / (2L * h);
    CAPTURE(eps);
    CHECK(close_rel(d[1], fd, -50));
  }
}

TEST_CASE("seed solves its differential equation") {
  for (auto [nu, eps, z] : {std::tuple{"0.5", -1, "0.3"}, {"0.5", 1, "0.2"}, {"-0.3", -1, "1.1"}, {"1.7", 1, "-0.6"}}) {
    SeedFunction seed(R(nu), eps, R("0.3"));
    CAPTURE(nu);
    CAPTURE(eps);
    BigReal scale = abs(phi_and_derivatives(kCtx, seed, R(z), 0)[0]);
    CHECK(log2_abs(ode_residual(kCtx, seed, R(z))) - log2_abs(scale) < -0.3 * kCtx.work_bits);
    CHECK(riccati_residual(kCtx, seed, R(z)) < 1e-30);
  }
}

TEST_CASE("riccati residual near a zero of phi") {
  // c2 = -1 makes phi odd for eps = -1, so phi(0) = 0.
  SeedFunction seed(R("0.5"), -1, R("-1"));
  CHECK_THROWS_AS(riccati_residual(kCtx, seed, R("0")), DomainError);
  CHECK(riccati_residual(kCtx, seed, ldexp_one(-40, kCtx.bits())) >= 0.0);
}

TEST_CASE("zeroth moment bridge and the derivative bridge") {
  BigReal v = R("0.4");
  BigReal s = R("0.3");
  BigReal alpha = R("0.5");
  const mpfr_prec_t p = kCtx.bits();
  MomentTable m = moments(kCtx, FHWeight(v, s, alpha), 8);
  BigReal c = pow(BigReal(2L, p), (1L + alpha) / 2L) / gamma_real(kCtx, 1L + alpha);
  std::vector<BigReal> minus = phi_and_derivatives(kCtx, SeedFunction(alpha, -1, s), v, 4);
  std::vector<BigReal> plus = phi_and_derivatives(kCtx, SeedFunction(-alpha - 1L, 1, s), v, 4);
  CHECK(close_rel(minus[0], c * m.mu[0], -120));
  CHECK(close_rel(plus[0], c * exp(square(v)) * m.mu[0], -120));
  // d^j/dv^j e^{-(x-v)^2} = H_j(x - v)... in x-space the factor is H_j(x),
  // so the derivatives pair with Hermite-weighted moments.
  std::vector<std::vector<long>> hermite = {{1}, {0, 2}, {-2, 0, 4}, {0, -12, 0, 8}, {12, 0, -48, 0, 16}};
  for (int j = 0; j <= 4; ++j) {
    BigReal hm(p);
    for (int k = 0; k <= j; ++k) hm += hermite[j][k] * m.mu[k];
    BigReal expected = (j % 2 ? -1L : 1L) * c * hm;
    CAPTURE(j);
    CHECK(close_rel(minus[static_cast<size_t>(j)], expected, -120));
    // The eps = 1 branch pairs with (x - v)^j exactly.
    BigReal centred(p);
    for (int k = 0; k <= j; ++k) {
      BigReal binom = gamma_real(kCtx, BigReal(j + 1, p)) /
                      (gamma_real(kCtx, BigReal(k + 1, p)) * gamma_real(kCtx, BigReal(j - k + 1, p)));
      centred += binom * pow(-v, j - k) * m.mu[k];
    }
    BigReal expected_plus = pow(BigReal(-2L, p), j) * c * exp(square(v)) * centred;
    CHECK(close_rel(plus[static_cast<size_t>(j)], expected_plus, -120));
  }
}

TEST_CASE("Wronskian small cases") {
  SeedFunction seed(R("0.25"), -1, R("0.6"));
  BigReal z = R("0.35");
  std::vector<BigReal> d = phi_and_derivatives(kCtx, seed, z, 4);
  CHECK(tau_wronskian(kCtx, seed, z, 0) == 1.0);
  CHECK(tau_wronskian(kCtx, seed, z, 1) == d[0]);
  CHECK(close_rel(tau_wronskian(kCtx, seed, z, 2), d[0] * d[2] - square(d[1]), -200));
  // 3x3 by cofactor expansion
  BigReal cof = d[0] * (d[2] * d[4] - d[3] * d[3]) - d[1] * (d[1] * d[4] - d[3] * d[2]) +
                d[2] * (d[1] * d[3] - d[2] * d[2]);
  CHECK(close_rel(tau_wronskian(kCtx, seed, z, 3), cof, -200));
  std::vector<std::vector<BigReal>> singular = {{R("1"), R("2")}, {R("2"), R("4")}};
  CHECK_THROWS_AS(det_full_pivot(singular), NumericError);
}

TEST_CASE("tau functions reproduce the Hankel determinant") {
  CHECK(check_tau_hankel(kCtx, R("0.3"), R("0.5"), R("0.5"), 0).is_zero());
  CHECK(check_tau_hankel(PrecContext(512), R("0"), R("1"), R("0.5"), 1) < 1e-20);
  for (auto [v, s, a] : {std::tuple{"0.7", "0.3", "0.5"}, {"-0.4", "1", "1.3"}, {"1.1", "0.05", "-0.6"}}) {
    CAPTURE(v);
    for (int n = 1; n <= 6; ++n) {
      CAPTURE(n);
      TauBridge b = tau_hankel_bridge(PrecContext(768), R(v), R(s), R(a), n);
      CHECK(b.plus_residual < 1e-15);
      CHECK(b.plus_branch > 0.0);
      if (n == 1) CHECK(b.minus_residual < 1e-15);
      if (n >= 2) CHECK(b.minus_residual > 1e-3);
    }
  }
  CHECK_THROWS_AS(check_tau_hankel(kCtx, R("0"), R("1"), R("1"), 2), DomainError);
}

TEST_CASE("the minus-branch tau differs by the Gaussian correction") {
  // tau_2[g psi] = g^2 (tau_2[psi] - 2 psi^2) for g = e^{-v^2}.
  BigReal v = R("0.7");
  BigReal s = R("0.3");
  BigReal a = R("0.5");
  SeedFunction minus(a, -1, s);
  SeedFunction plus(-a - 1L, 1, s);
  BigReal psi = phi_and_derivatives(kCtx, plus, v, 0)[0];
  BigReal g = exp(-square(v));
  CHECK(close_rel(phi_and_derivatives(kCtx, minus, v, 0)[0], g * psi, -120));
  BigReal expected = square(g) * (tau_wronskian(kCtx, plus, v, 2) - 2L * square(psi));
  CHECK(close_rel(tau_wronskian(kCtx, minus, v, 2), expected, -120));
}

TEST_CASE("Painleve parameter bookkeeping") {
  for (int eps : {-1, 1}) {
    BigReal nu = R("0.35");
    PivParameters pp = piv_parameters(3, eps, nu);
    // nu = -(1 + eps A)
    CHECK(close_abs(-(1L + static_cast<long>(eps) * pp.a), nu, 1e-60));
    CHECK(pp.b_second == -18.0);
    BigReal inner = 7L + static_cast<long>(eps) * pp.a;
    CHECK(close_abs(pp.b_first, -2L * square(inner), 1e-60));
  }
}
