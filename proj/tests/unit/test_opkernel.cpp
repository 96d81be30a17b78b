#include <doctest.h>

#include <cmath>
#include <functional>
#include <tuple>
#include <vector>

#include "fhlab/opkernel.hpp"
#include "fhlab/special.hpp"
#include "test_helpers.hpp"

using namespace fhlab;
using fhlab::test::close_rel;

namespace {

FHWeight make(double v, double s, double alpha, mpfr_prec_t p) {
  return FHWeight(BigReal::parse(std::to_string(v), p), BigReal::parse(std::to_string(s), p),
                  BigReal::parse(std::to_string(alpha), p));
}

struct Node {
  long double x;
  long double w;
};

// Tanh-sinh nodes for int f(x) w(x) dx with the weight folded into the
// node weights; each side of v uses u = |x - v| in (0, span).
std::vector<Node> heine_nodes(double v, double s, double alpha, int per_unit) {
  const long double span = 7.0L;
  const long double h = 1.0L / per_unit;
  const long double pi = 3.14159265358979323846264338327950288L;
  std::vector<Node> out;
  for (int k = -7 * per_unit / 2; k <= 7 * per_unit / 2; ++k) {
    long double tau = k * h;
    long double e = std::exp(pi * std::sinh(tau));
    long double u = span * e / (1 + e);
    long double du = span * pi * std::cosh(tau) * e / ((1 + e) * (1 + e)) * h;
    long double root = std::pow(u, static_cast<long double>(alpha));
    long double xr = v + u;
    long double xl = v - u;
    out.push_back({xr, du * root * std::exp(-xr * xr)});
    if (s > 0) out.push_back({xl, du * root * std::exp(-xl * xl) * s});
  }
  return out;
}

// log H_n by the n-fold integral (1/n!) int prod_{i<j} (x_i - x_j)^2 prod w(x_i).
double heine_log_det(double v, double s, double alpha, int n) {
  auto nodes = heine_nodes(v, s, alpha, n <= 2 ? 64 : 24);
  const size_t m = nodes.size();
  long double total = 0;
  std::vector<size_t> idx(static_cast<size_t>(n), 0);
  // Sum over strictly increasing index tuples and multiply by n! / n! = 1:
  // the integrand vanishes on the diagonal and is symmetric.
  std::function<void(int, size_t, long double)> rec = [&](int depth, size_t start, long double acc) {
    if (depth == n) {
      total += acc;
      return;
    }
    for (size_t i = start; i < m; ++i) {
      long double f = acc * nodes[i].w;
      for (int d = 0; d < depth; ++d) {
        long double diff = nodes[i].x - nodes[idx[static_cast<size_t>(d)]].x;
        f *= diff * diff;
      }
      idx[static_cast<size_t>(depth)] = i;
      rec(depth + 1, i + 1, f);
    }
  };
  rec(0, 0, 1.0L);
  return static_cast<double>(std::log(total));
}

}  // namespace

TEST_CASE("Gaussian OP system") {
  PrecContext ctx(256);
  const auto p = ctx.bits();
  FHWeight w = make(0, 1, 0, p);
  MomentTable m = moments(ctx, w, 2);
  OPSystem one = op_system(ctx, m, 1);
  CHECK(close_rel(one.h[0], sqrt(const_pi(p)), -250));
  CHECK(abs(one.beta[0]) < ldexp_one(-250, p));
  CHECK(abs(one.sigma[1]) < ldexp_one(-250, p));
  CHECK(close_rel(one.h[1], sqrt(const_pi(p)) / 2L, -250));

  MomentTable m8 = moments(ctx, w, 16);
  OPSystem sys = op_system(ctx, m8, 8);
  for (const auto& b : sys.beta) CHECK(abs(b) < ldexp_one(-240, p));
  for (const auto& s : sys.sigma) CHECK(abs(s) < ldexp_one(-240, p));
  // Hermite: gamma_j^2 = j / 2
  for (int j = 1; j <= 8; ++j) CHECK(close_rel(sys.gamma_sq[static_cast<size_t>(j - 1)], BigReal(j / 2.0, p), -240));
  CHECK_THROWS_AS(op_system(ctx, m, 2), DomainError);
}

TEST_CASE("GUE exact log-determinant") {
  PrecContext ctx(256);
  const auto p = ctx.bits();
  CHECK(close_rel(gue_logdet_exact(ctx, 1), log(sqrt(const_pi(p))), -250));
  CHECK(close_rel(gue_logdet_exact(ctx, 2), log(const_pi(p) / 2L), -250));
  for (int n : {2, 5, 12, 20}) {
    int bits = std::max(256, 24 * n);
    PrecContext c(bits);
    HankelRun run = hankel_fixed(c, make(0, 1, 0, c.bits()), n);
    CHECK(close_rel(run.sys.log_det, gue_logdet_exact(c, n), -bits / 2));
  }
}

TEST_CASE("OP system invariants on a singular weight") {
  PrecContext ctx(320);
  FHWeight w = make(0.4, 0.3, -0.35, ctx.bits());
  HankelRun run = hankel_fixed(ctx, w, 7);
  const OPSystem& sys = run.sys;
  BigReal sum(ctx.bits());
  for (int j = 0; j < 7; ++j) {
    CHECK(sys.h[static_cast<size_t>(j)] > 0.0);
    sum += log(sys.h[static_cast<size_t>(j)]);
    CHECK(close_rel(sys.beta[static_cast<size_t>(j)], sys.sigma[static_cast<size_t>(j)] - sys.sigma[static_cast<size_t>(j + 1)], -300));
    CHECK(close_rel(sys.gamma_sq[static_cast<size_t>(j)], sys.h[static_cast<size_t>(j + 1)] / sys.h[static_cast<size_t>(j)], -300));
  }
  CHECK(sys.sigma[0].is_zero());
  CHECK(close_rel(sum, sys.log_det, -300));
  // orthogonality of pi_j against x^k through the moments
  for (int j = 1; j <= 7; ++j) {
    // pi_j coefficients from the recurrence applied to the moment functional
    std::vector<BigReal> coeff(static_cast<size_t>(j + 1), BigReal(ctx.bits()));
    std::vector<std::vector<BigReal>> c{{BigReal(1L, ctx.bits())}};
    for (int i = 0; i < j; ++i) {
      std::vector<BigReal> next(static_cast<size_t>(i + 2), BigReal(ctx.bits()));
      for (int k = 0; k <= i; ++k) {
        next[static_cast<size_t>(k + 1)] += c[static_cast<size_t>(i)][static_cast<size_t>(k)];
        next[static_cast<size_t>(k)] -= sys.beta[static_cast<size_t>(i)] * c[static_cast<size_t>(i)][static_cast<size_t>(k)];
        if (i > 0 && k < i) next[static_cast<size_t>(k)] -= sys.gamma_sq[static_cast<size_t>(i - 1)] * c[static_cast<size_t>(i - 1)][static_cast<size_t>(k)];
      }
      c.push_back(next);
    }
    for (int k = 0; k < j; ++k) {
      BigReal inner(ctx.bits());
      for (int i = 0; i <= j; ++i) inner += c[static_cast<size_t>(j)][static_cast<size_t>(i)] * run.moments.mu[static_cast<size_t>(i + k)];
      CHECK(abs(inner) < ldexp(run.moments.scale[static_cast<size_t>(j + k)], -250));
    }
    CHECK(close_rel(c[static_cast<size_t>(j)][static_cast<size_t>(j - 1)], sys.sigma[static_cast<size_t>(j)], -250));
  }
}

TEST_CASE("Heine n-fold integral oracle") {
  PrecContext ctx(256);
  for (auto [v, s, alpha, n] : {std::tuple{0.3, 0.5, 0.5, 1}, std::tuple{0.3, 0.5, 0.5, 2}, std::tuple{-0.2, 0.8, -0.4, 3},
                                std::tuple{0.3, 0.5, 0.5, 4}}) {
    HankelRun run = hankel_fixed(ctx, make(v, s, alpha, ctx.bits()), n);
    double heine = heine_log_det(v, s, alpha, n);
    CHECK(std::abs(run.sys.log_det.to_double() - heine) < 1e-10);
  }
}

TEST_CASE("orthonormal evaluation") {
  PrecContext ctx(256);
  const auto p = ctx.bits();
  FHWeight w = make(0, 1, 0, p);
  HankelRun run = hankel_fixed(ctx, w, 1);
  PPair at0 = eval_p_pair(ctx, run.sys, run.moments, BigReal(p));
  CHECK(at0.pn.is_zero());
  PPair at1 = eval_p_pair(ctx, run.sys, run.moments, BigReal(1L, p));
  CHECK(close_rel(at1.pn, 1L / sqrt(sqrt(const_pi(p)) / 2L), -250));
  // monic: n-th finite difference of pi_n on integer points equals n!
  HankelRun r5 = hankel_fixed(ctx, make(0.3, 0.6, 0.5, p), 5);
  BigReal diff(p);
  long binom = 1;
  for (int i = 0; i <= 5; ++i) {
    BigReal val = eval_monic(r5.sys, BigReal(static_cast<long>(i), p)).back();
    diff += ((5 - i) % 2 == 0 ? binom : -binom) * val;
    binom = binom * (5 - i) / (i + 1);
  }
  CHECK(close_rel(diff, BigReal(120L, p), -240));
  // derivative recurrence against a central difference
  BigReal x = BigReal::parse("0.7", p);
  BigReal hstep = ldexp_one(-60, p);
  PPair pp = eval_p_pair(ctx, r5.sys, r5.moments, x);
  PPair plus = eval_p_pair(ctx, r5.sys, r5.moments, x + hstep);
  PPair minus = eval_p_pair(ctx, r5.sys, r5.moments, x - hstep);
  CHECK(abs((plus.pn - minus.pn) / (2L * hstep) - pp.dpn) < ldexp_one(-100, p));
  CHECK(abs((plus.pn1 - minus.pn1) / (2L * hstep) - pp.dpn1) < ldexp_one(-100, p));
}

TEST_CASE("Christoffel-Darboux kernel") {
  PrecContext ctx(256);
  const auto p = ctx.bits();
  BigReal inf(p);
  mpfr_set_inf(inf.raw(), 1);
  BigReal ninf(p);
  mpfr_set_inf(ninf.raw(), -1);
  FHWeight g = make(0, 1, 0, p);
  HankelRun r1 = hankel_fixed(ctx, g, 1);
  BigReal x = BigReal::parse("0.4", p);
  CHECK(close_rel(cd_kernel(ctx, r1.sys, r1.moments, g, x), exp(-square(x)) / sqrt(const_pi(p)), -250));
  CHECK(close_rel(expected_count(ctx, r1.sys, r1.moments, g, inf), BigReal(1L, p), -120));
  CHECK(close_rel(expected_count(ctx, r1.sys, r1.moments, g, BigReal(p)), BigReal(0.5, p), -120));
  CHECK(expected_count(ctx, r1.sys, r1.moments, g, ninf).is_zero());

  for (auto [v, s, alpha] : {std::tuple{0.5, 0.3, -0.5}, std::tuple{-1.0, 0.0, 1.5}, std::tuple{0.0, 1.0, 0.7}}) {
    FHWeight w = make(v, s, alpha, p);
    for (int n : {1, 4}) {
      HankelRun run = hankel_fixed(ctx, w, n);
      BigReal total = expected_count(ctx, run.sys, run.moments, w, inf);
      CHECK(abs(total - static_cast<long>(n)) < 1e-20);
      BigReal part = expected_count(ctx, run.sys, run.moments, w, w.v);
      CHECK(part >= 0.0);
      CHECK(part <= static_cast<double>(n));
      for (int i = 0; i < 50; ++i) {
        BigReal xi(-4.0 + 8.0 * i / 49.0 + 1e-3, p);
        if (xi == w.v) continue;
        CHECK(cd_kernel(ctx, run.sys, run.moments, w, xi) >= 0.0);
      }
    }
  }
}

TEST_CASE("differential identities") {
  PrecContext ctx(512);
  const auto p = ctx.bits();
  BigReal step = BigReal::parse("1e-8", p);
  BigReal rv = check_dv_identity(ctx, make(0.3, 0, 0.5, p), 6, step);
  BigReal rv2 = check_dv_identity(ctx, make(0.3, 0, 0.5, p), 6, step / 2L);
  CHECK(rv < 1e-14);
  CHECK(std::abs((rv2 / rv).to_double() - 0.25) < 0.02);
  BigReal rs = check_ds_identity(ctx, make(0, 0.5, 0, p), 4, step);
  BigReal rs2 = check_ds_identity(ctx, make(0, 0.5, 0, p), 4, step / 2L);
  CHECK(rs < 1e-13);
  CHECK(std::abs((rs2 / rs).to_double() - 0.25) < 0.02);
  // symmetric s = 0 weight: sigma_n = 0 and the derivative vanishes
  HankelRun sym = hankel_fixed(ctx, make(0, 0, 0, p), 3);
  CHECK(sym.sys.sigma.back() < 0.0);  // zeros of pi_n lie in (0, inf)
  CHECK_THROWS_AS(check_dv_identity(ctx, make(0.3, 0.5, 0.5, p), 3, step), DomainError);
  CHECK_THROWS_AS(check_ds_identity(ctx, make(0.3, 1, 0.5, p), 3, step), DomainError);
}

TEST_CASE("thinning monotonicity and the adaptive ladder") {
  PrecContext ctx(256);
  BigReal prev;
  bool first = true;
  for (double s : {0.0, 0.1, 0.35, 0.6, 0.9, 1.0}) {
    BigReal ld = hankel_fixed(ctx, make(0.2, s, 0.5, ctx.bits()), 6).sys.log_det;
    if (!first) CHECK(ld >= prev);
    prev = ld;
    first = false;
  }
  HankelRun run = hankel_adaptive([](mpfr_prec_t p) { return make(0, 1, 0, p); }, 10);
  CHECK(run.ctx.work_bits == 512);
  CHECK(close_rel(run.sys.log_det, gue_logdet_exact(run.ctx, 10), -256));
}
