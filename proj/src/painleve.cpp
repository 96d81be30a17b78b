#include "fhlab/painleve.hpp"

#include <cmath>

#include "fhlab/opkernel.hpp"
#include "fhlab/special.hpp"
#include "fhlab/weight.hpp"

namespace fhlab {

namespace {

bool is_integer(const BigReal& x) { return mpfr_integer_p(x.raw()) != 0; }

void check_eps(int eps) {
  if (eps != 1 && eps != -1) throw DomainError("seed: eps must be +1 or -1");
}

// Parameter a of U in the seed.
BigReal seed_index(const SeedFunction& seed, mpfr_prec_t p) {
  BigReal half = BigReal::ratio(1, 2, p);
  return seed.eps == 1 ? -seed.nu.to_prec(p) - half : seed.nu.to_prec(p) + half;
}

struct SeedParts {
  BigReal g;    // c1 U(a, x) + c2 U(a, -x), x = sqrt2 z
  BigReal dg;   // d/dz of g
  BigReal ddg;  // d^2/dz^2 of g
  BigReal gauss;
};

SeedParts seed_parts(const PrecContext& ctx, const SeedFunction& seed, const BigReal& z_in) {
  const mpfr_prec_t p = ctx.bits();
  BigReal z = z_in.to_prec(p);
  BigReal a = seed_index(seed, p);
  BigReal r2 = sqrt(BigReal(2L, p));
  BigReal x = r2 * z;
  BigReal up = pcf_u_any(ctx, a, x);
  BigReal um = pcf_u_any(ctx, a, -x);
  BigReal up1 = pcf_u_any(ctx, a + 1L, x);
  BigReal um1 = pcf_u_any(ctx, a + 1L, -x);
  BigReal ah = a + BigReal::ratio(1, 2, p);
  // U'(a, y) at y = x and y = -x
  BigReal dup = -(x / 2L) * up - ah * up1;
  BigReal dum = (x / 2L) * um - ah * um1;
  BigReal c1 = seed.c1.to_prec(p);
  BigReal c2 = seed.c2.to_prec(p);
  BigReal weber = square(x) / 4L + a;
  SeedParts s;
  s.g = c1 * up + c2 * um;
  s.dg = r2 * (c1 * dup - c2 * dum);
  s.ddg = 2L * weber * s.g;
  s.gauss = exp(static_cast<long>(seed.eps) * square(z) / 2L);
  return s;
}

}  // namespace

SeedFunction::SeedFunction(BigReal nu_in, int eps_in, BigReal s) : nu(std::move(nu_in)), eps(eps_in), c2(std::move(s)) {
  check_eps(eps);
  if (is_integer(nu)) throw DomainError("seed: nu must not be an integer");
  c1 = BigReal(1L, c2.prec());
}

BigReal pcf_u_any(const PrecContext& ctx, const BigReal& a_in, const BigReal& z) {
  const mpfr_prec_t p = ctx.bits();
  BigReal a = a_in.to_prec(p);
  if (a > -0.5) return pcf_u(ctx, a, z);
  long shift = static_cast<long>(std::floor(-a.to_double() - 0.5)) + 1;
  BigReal b = a + shift;  // b > -1/2
  if (!(b > -0.5)) {
    b += 1L;
    ++shift;
  }
  BigReal hi = pcf_u(ctx, b + 1L, z);  // U(b+1)
  BigReal lo = pcf_u(ctx, b, z);       // U(b)
  BigReal zp = z.to_prec(p);
  for (long k = 0; k < shift; ++k) {
    BigReal next = zp * lo + (b + BigReal::ratio(1, 2, p)) * hi;  // U(b-1)
    hi = std::move(lo);
    lo = std::move(next);
    b -= 1L;
  }
  return lo;
}

std::vector<BigReal> phi_and_derivatives(const PrecContext& ctx, const SeedFunction& seed, const BigReal& z_in,
                                         int k_max) {
  if (k_max < 0) throw DomainError("phi_and_derivatives: k_max must be non-negative");
  const mpfr_prec_t p = ctx.bits();
  BigReal z = z_in.to_prec(p);
  SeedParts s = seed_parts(ctx, seed, z);
  const long eps = seed.eps;
  std::vector<BigReal> d;
  d.push_back(s.gauss * s.g);
  if (k_max >= 1) d.push_back(s.gauss * (s.dg + eps * z * s.g));
  BigReal nu = seed.nu.to_prec(p);
  for (int k = 0; k + 2 <= k_max; ++k) {
    d.push_back(2L * eps * z * d[static_cast<size_t>(k + 1)] + 2L * eps * (k - nu) * d[static_cast<size_t>(k)]);
  }
  return d;
}

BigReal phi_second_direct(const PrecContext& ctx, const SeedFunction& seed, const BigReal& z_in) {
  BigReal z = z_in.to_prec(ctx.bits());
  SeedParts s = seed_parts(ctx, seed, z);
  const long eps = seed.eps;
  // (e^{eps z^2/2} g)'' = e^{eps z^2/2} (g'' + 2 eps z g' + (eps + z^2) g)
  return s.gauss * (s.ddg + 2L * eps * z * s.dg + (eps + square(z)) * s.g);
}

BigReal ode_residual(const PrecContext& ctx, const SeedFunction& seed, const BigReal& z) {
  std::vector<BigReal> d = phi_and_derivatives(ctx, seed, z, 1);
  BigReal second = phi_second_direct(ctx, seed, z);
  const long eps = seed.eps;
  return abs(second - 2L * eps * z * d[1] + 2L * eps * seed.nu * d[0]);
}

BigReal det_full_pivot(std::vector<std::vector<BigReal>> m) {
  const size_t n = m.size();
  if (n == 0) return BigReal(1L, 64);
  BigReal det(1L, m[0][0].prec());
  for (size_t k = 0; k < n; ++k) {
    size_t pr = k;
    size_t pc = k;
    for (size_t i = k; i < n; ++i) {
      for (size_t j = k; j < n; ++j) {
        if (abs(m[i][j]) > abs(m[pr][pc])) {
          pr = i;
          pc = j;
        }
      }
    }
    if (m[pr][pc].is_zero()) throw NumericError("det_full_pivot: matrix is singular");
    if (pr != k) {
      std::swap(m[pr], m[k]);
      det = -det;
    }
    if (pc != k) {
      for (auto& row : m) std::swap(row[pc], row[k]);
      det = -det;
    }
    det *= m[k][k];
    for (size_t i = k + 1; i < n; ++i) {
      BigReal f = m[i][k] / m[k][k];
      for (size_t j = k + 1; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

BigReal tau_wronskian(const PrecContext& ctx, const SeedFunction& seed, const BigReal& z, int n) {
  if (n < 0) throw DomainError("tau_wronskian: n must be non-negative");
  if (n == 0) return BigReal(1L, ctx.bits());
  std::vector<BigReal> d = phi_and_derivatives(ctx, seed, z, 2 * n - 2);
  std::vector<std::vector<BigReal>> m(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[static_cast<size_t>(i)].push_back(d[static_cast<size_t>(i + j)]);
  }
  return det_full_pivot(std::move(m));
}

TauBridge tau_hankel_bridge(const PrecContext& ctx, const BigReal& v_in, const BigReal& s_in, const BigReal& alpha_in,
                            int n) {
  if (n < 0) throw DomainError("tau_hankel_bridge: n must be non-negative");
  const mpfr_prec_t p = ctx.bits();
  BigReal v = v_in.to_prec(p);
  BigReal s = s_in.to_prec(p);
  BigReal alpha = alpha_in.to_prec(p);
  if (is_integer(alpha)) throw DomainError("tau_hankel_bridge: alpha must not be an integer");
  TauBridge b;
  if (n == 0) {
    b.hankel = b.minus_branch = b.plus_branch = BigReal(1L, p);
    b.minus_residual = b.plus_residual = b.residual = BigReal(p);
    return b;
  }
  FHWeight w(v, s, alpha);
  b.hankel = exp(hankel_fixed(ctx, w, n).sys.log_det);
  BigReal nn(static_cast<long>(n), p);
  BigReal prefactor = pow(gamma_real(ctx, 1L + alpha), n) * pow(BigReal(2L, p), -square(nn) - nn * (alpha - 1L) / 2L);
  b.minus_branch = prefactor * tau_wronskian(ctx, SeedFunction(alpha, -1, s), v, n);
  b.plus_branch = exp(-nn * square(v)) * prefactor * tau_wronskian(ctx, SeedFunction(-alpha - 1L, 1, s), v, n);
  b.minus_residual = abs(b.minus_branch - b.hankel) / abs(b.hankel);
  b.plus_residual = abs(b.plus_branch - b.hankel) / abs(b.hankel);
  b.residual = max(b.minus_residual, b.plus_residual);
  return b;
}

BigReal check_tau_hankel(const PrecContext& ctx, const BigReal& v, const BigReal& s, const BigReal& alpha, int n) {
  return tau_hankel_bridge(ctx, v, s, alpha, n).residual;
}

BigReal riccati_residual(const PrecContext& ctx, const SeedFunction& seed, const BigReal& z_in) {
  BigReal z = z_in.to_prec(ctx.bits());
  std::vector<BigReal> d = phi_and_derivatives(ctx, seed, z, 1);
  if (d[0].is_zero()) throw DomainError("riccati_residual: phi vanishes at z");
  BigReal second = phi_second_direct(ctx, seed, z);
  const long eps = seed.eps;
  BigReal q = -eps * d[1] / d[0];
  BigReal dq = -eps * (second * d[0] - square(d[1])) / square(d[0]);
  return abs(dq - eps * square(q) - 2L * eps * z * q - 2L * seed.nu);
}

PivParameters piv_parameters(int n, int eps, const BigReal& nu) {
  check_eps(eps);
  const mpfr_prec_t p = nu.prec();
  PivParameters r;
  r.a = -static_cast<long>(eps) * (1L + nu);
  BigReal inner = static_cast<long>(2 * n + 1) + static_cast<long>(eps) * r.a;
  r.b_first = -2L * square(inner);
  r.b_second = BigReal(-2L * n * n, p);
  return r;
}

}  // namespace fhlab
