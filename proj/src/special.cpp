#include "fhlab/special.hpp"

#include <cmath>

#include "fhlab/quadrature.hpp"

namespace fhlab {

BigReal gamma_real(const PrecContext& ctx, const BigReal& x) {
  if (!(x > 0.0)) throw DomainError("gamma_real: argument must be positive");
  BigReal r(ctx.bits());
  mpfr_gamma(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

BigReal log_gamma(const PrecContext& ctx, const BigReal& x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
  BigReal r(ctx.bits());
  mpfr_lngamma(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

BigReal bernoulli_even(long k, mpfr_prec_t prec) {
  // B_{2k} = (-1)^{k+1} 2 (2k)! zeta(2k) / (2 pi)^{2k}
  mpfr_prec_t p = prec + 32;
  BigReal z(p);
  mpfr_zeta_ui(z.raw(), static_cast<unsigned long>(2 * k), MPFR_RNDN);
  BigReal f(p);
  mpfr_fac_ui(f.raw(), static_cast<unsigned long>(2 * k), MPFR_RNDN);
  BigReal r = 2L * f * z / pow(2L * const_pi(p), 2 * k);
  if (k % 2 == 0) r = -r;
  return r.to_prec(prec);
}

namespace {

// log G(z+1) minus zeta'(-1), by the large-z expansion. Terms are summed
// until they drop below 2^-prec relative to the leading part.
BigReal barnes_asymptotic_without_zeta(const BigReal& z, mpfr_prec_t prec) {
  BigReal lz = log(z);
  BigReal z2 = square(z);
  BigReal two_pi = 2L * const_pi(prec);
  BigReal head = z2 / 2L * lz - 3L * z2 / 4L + z / 2L * log(two_pi) - lz / 12L;
  BigReal inv_z2 = 1L / z2;
  BigReal zpow = inv_z2;
  BigReal tail(prec);
  BigReal thresh = ldexp(abs(head) + 1L, -static_cast<long>(prec));
  BigReal prev_term(prec);
  for (long k = 1; k < 4000; ++k) {
    BigReal term = bernoulli_even(k + 1, prec) / (4L * k * (k + 1)) * zpow;
    if (k > 1 && abs(term) > abs(prev_term)) throw NumericError("log_barnes_g: asymptotic series diverged early");
    tail += term;
    if (abs(term) < thresh) return head + tail;
    prev_term = term;
    zpow *= inv_z2;
  }
  throw NumericError("log_barnes_g: asymptotic series did not converge");
}

long barnes_shift_target(const PrecContext& ctx) { return 16 + ctx.work_bits / 8; }

}  // namespace

BigReal zeta_prime_minus_one(const PrecContext& ctx) {
  // log G(N+1) = sum_{k=1}^{N-1} (N-k) log k exactly; compare with the expansion.
  const long n = barnes_shift_target(ctx) + 8;
  const mpfr_prec_t p = ctx.bits() + 64;
  BigReal exact(p);
  for (long k = 2; k < n; ++k) exact += (n - k) * log(BigReal(k, p));
  BigReal r = exact - barnes_asymptotic_without_zeta(BigReal(n, p), p);
  return r.to_prec(ctx.bits());
}

BigReal log_barnes_g(const PrecContext& ctx, const BigReal& x) {
  if (!(x > 0.0)) throw DomainError("log_barnes_g: argument must be positive");
  const mpfr_prec_t prec = ctx.bits();
  if (x == 1.0 || x == 2.0) return BigReal(prec);
  const mpfr_prec_t p = prec + 32;
  const long target = barnes_shift_target(ctx);
  // log G(x) = log G(x+m) - sum_{i<m} log Gamma(x+i)
  BigReal y = x.to_prec(p);
  BigReal correction(p);
  PrecContext wide(static_cast<int>(p) - ctx.guard_bits, ctx.guard_bits);
  while (y < static_cast<double>(target)) {
    correction += log_gamma(wide, y);
    y += 1L;
  }
  BigReal r = barnes_asymptotic_without_zeta(y - 1L, p) + zeta_prime_minus_one(wide) - correction;
  return r.to_prec(prec);
}

BigReal pcf_u(const PrecContext& ctx, const BigReal& a, const BigReal& z) {
  if (!(a > -0.5)) throw DomainError("pcf_u: requires a > -1/2");
  const mpfr_prec_t prec = ctx.bits();
  BigReal ap = a.to_prec(prec);
  BigReal zp = z.to_prec(prec);
  BigReal p = ap - 0.5;
  // Log-concave integrand; beyond its mode it decays at least like a unit Gaussian.
  double pd = p.to_double();
  double zd = zp.to_double();
  double mode = pd > 0 ? (-zd + std::sqrt(zd * zd + 4 * pd)) / 2 : std::max(-zd, 0.0);
  double reach = 2.0 * std::sqrt(static_cast<double>(prec) * std::log(2.0) + 40.0);
  BigReal upper(std::max(mode, 1.0) + reach, prec);
  RealFn f = [&](const BigReal& x) { return exp(-(square(x) / 2L + zp * x)); };
  QuadResult q = quad_endpoint_singular(ctx, f, BigReal(prec), upper, p, BigReal(prec));
  return exp(-square(zp) / 4L) / gamma_real(ctx, ap + 0.5) * q.value;
}

}  // namespace fhlab
