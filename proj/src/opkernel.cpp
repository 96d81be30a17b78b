#include "fhlab/opkernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fhlab/quadrature.hpp"
#include "fhlab/special.hpp"

namespace fhlab {

OPSystem op_system(const PrecContext& ctx, const MomentTable& m, int n) {
  if (n < 1) throw DomainError("op_system: n must be positive");
  if (m.k_max < 2 * n) throw DomainError("op_system: moment table too short (need k_max >= 2n)");
  const mpfr_prec_t p = ctx.bits();
  const int size = n + 1;
  auto hk = [&](int i, int j) { return m.mu[static_cast<size_t>(i + j)].to_prec(p); };
  // L unit lower triangular (row-major), d the pivots.
  std::vector<std::vector<BigReal>> L(static_cast<size_t>(size), std::vector<BigReal>(static_cast<size_t>(size), BigReal(p)));
  std::vector<BigReal> d(static_cast<size_t>(size), BigReal(p));
  for (int j = 0; j < size; ++j) {
    BigReal dj = hk(j, j);
    for (int k = 0; k < j; ++k) dj -= square(L[j][k]) * d[k];
    if (!(dj > 0.0)) throw NumericError("op_system: non-positive pivot at j = " + std::to_string(j));
    d[j] = dj;
    L[j][j] = BigReal(1L, p);
    for (int i = j + 1; i < size; ++i) {
      BigReal v = hk(i, j);
      for (int k = 0; k < j; ++k) v -= L[i][k] * L[j][k] * d[k];
      L[i][j] = v / dj;
    }
  }
  OPSystem sys;
  sys.n = n;
  sys.prec_bits = static_cast<int>(p);
  sys.h = d;
  sys.sigma.push_back(BigReal(p));
  for (int j = 1; j <= n; ++j) sys.sigma.push_back(-L[j][j - 1]);
  for (int j = 0; j < n; ++j) sys.beta.push_back(sys.sigma[j] - sys.sigma[j + 1]);
  for (int j = 1; j <= n; ++j) {
    BigReal g = d[j] / d[j - 1];
    if (!(g > 0.0)) throw NumericError("op_system: non-positive gamma^2");
    sys.gamma_sq.push_back(g);
  }
  sys.log_det = BigReal(p);
  for (int j = 0; j < n; ++j) sys.log_det += log(d[j]);
  return sys;
}

HankelRun hankel_fixed(const PrecContext& ctx, const FHWeight& w, int n) {
  MomentTable m = moments(ctx, w, 2 * n);
  OPSystem sys = op_system(ctx, m, n);
  return {std::move(sys), std::move(m), ctx};
}

HankelRun hankel_adaptive(const WeightFactory& make, int n, int min_bits, int retries) {
  int p = std::max(min_bits, 24 * n);
  for (int attempt = 0; attempt <= retries; ++attempt, p *= 2) {
    try {
      PrecContext lo(p);
      PrecContext hi(2 * p);
      HankelRun a = hankel_fixed(lo, make(lo.bits()), n);
      HankelRun b = hankel_fixed(hi, make(hi.bits()), n);
      BigReal tol = ldexp_one(-p / 2, hi.bits());
      BigReal dl = abs(a.sys.log_det - b.sys.log_det);
      BigReal ds = abs(a.sys.sigma.back() - b.sys.sigma.back());
      BigReal scale = max(BigReal(1L, hi.bits()), abs(b.sys.log_det));
      if (dl <= tol * scale && ds <= tol * max(BigReal(1L, hi.bits()), abs(b.sys.sigma.back()))) return b;
    } catch (const InstabilityError&) {
      throw;
    } catch (const NumericError&) {
      // non-positive pivot: retry at doubled precision
    }
  }
  throw NumericError("hankel: precision ladder exhausted for n = " + std::to_string(n));
}

BigReal gue_logdet_exact(const PrecContext& ctx, int n) {
  if (n < 1) throw DomainError("gue_logdet_exact: n must be positive");
  const mpfr_prec_t p = ctx.bits();
  BigReal nn(static_cast<long>(n), p);
  BigReal r = -square(nn) / 2L * const_log2(p) + nn / 2L * log(2L * const_pi(p));
  for (int j = 1; j < n; ++j) r += log_gamma(ctx, BigReal(static_cast<long>(j + 1), p));
  return r;
}

std::vector<BigReal> eval_monic(const OPSystem& sys, const BigReal& x) {
  const mpfr_prec_t p = static_cast<mpfr_prec_t>(sys.prec_bits);
  std::vector<BigReal> pi;
  pi.push_back(BigReal(1L, p));
  pi.push_back(x.to_prec(p) - sys.beta[0]);
  for (int j = 1; j < sys.n; ++j) pi.push_back((x - sys.beta[j]) * pi[j] - sys.gamma_sq[j - 1] * pi[j - 1]);
  return pi;
}

namespace {

PPair p_pair(const OPSystem& sys, const BigReal& x) {
  const mpfr_prec_t p = static_cast<mpfr_prec_t>(sys.prec_bits);
  BigReal xp = x.to_prec(p);
  // pi_{j+1} = (x - beta_j) pi_j - gamma_j^2 pi_{j-1}, and its derivative
  BigReal prev(p);
  BigReal cur(1L, p);
  BigReal dprev(p);
  BigReal dcur(p);
  for (int j = 0; j < sys.n; ++j) {
    BigReal g = j == 0 ? BigReal(p) : sys.gamma_sq[j - 1];
    BigReal next = (xp - sys.beta[j]) * cur - g * prev;
    BigReal dnext = cur + (xp - sys.beta[j]) * dcur - g * dprev;
    prev = std::move(cur);
    cur = std::move(next);
    dprev = std::move(dcur);
    dcur = std::move(dnext);
  }
  BigReal rn = sqrt(sys.h[sys.n]);
  BigReal rn1 = sqrt(sys.h[sys.n - 1]);
  return {cur / rn, dcur / rn, prev / rn1, dprev / rn1};
}

BigReal kernel_polynomial(const OPSystem& sys, const BigReal& x) {
  PPair pp = p_pair(sys, x);
  BigReal pref = sqrt(sys.h[sys.n] / sys.h[sys.n - 1]);
  return pref * (pp.dpn * pp.pn1 - pp.pn * pp.dpn1);
}

}  // namespace

PPair eval_p_pair(const PrecContext& /*ctx*/, const OPSystem& sys, const MomentTable& /*m*/, const BigReal& x) {
  return p_pair(sys, x);
}

BigReal cd_kernel(const PrecContext& /*ctx*/, const OPSystem& sys, const MomentTable& /*m*/, const FHWeight& w,
                  const BigReal& x) {
  return eval_weight(w, x) * kernel_polynomial(sys, x);
}

BigReal expected_count(const PrecContext& ctx, const OPSystem& sys, const MomentTable& /*m*/, const FHWeight& w,
                       const BigReal& upper) {
  const mpfr_prec_t p = ctx.bits();
  BigReal v = w.v.to_prec(p);
  BigReal alpha = w.alpha.to_prec(p);
  BigReal zero(p);
  const double reach = std::sqrt(static_cast<double>(p) * std::log(2.0) + 50.0) + 1.0;
  const double spread = std::sqrt(static_cast<double>(sys.n) + std::max(alpha.to_double(), 0.0)) + reach;
  BigReal lower_cut = min(v, zero) - spread;
  BigReal upper_cut = max(v, zero) + spread;
  const BigReal rel = ldexp_one(-ctx.work_bits / 2, p);
  BigReal total(p);
  RealFn gauss_poly = [&](const BigReal& x) { return exp(-square(x)) * kernel_polynomial(sys, x); };

  // Left of v: s e^{-x^2} (v - x)^alpha Q(x)
  if (!w.s.is_zero() && upper > lower_cut) {
    if (upper >= v) {
      total += w.s * quad_endpoint_singular(ctx, gauss_poly, lower_cut, v, zero, alpha, rel).value;
    } else {
      RealFn f = [&](const BigReal& x) { return gauss_poly(x) * pow(v - x, alpha); };
      total += w.s * quad_endpoint_singular(ctx, f, lower_cut, upper, zero, zero, rel).value;
    }
  }
  // Right of v: e^{-x^2} (x - v)^alpha Q(x)
  if (upper > v) {
    BigReal hi = upper.is_finite() ? min(upper, upper_cut) : upper_cut;
    if (hi > v) total += quad_endpoint_singular(ctx, gauss_poly, v, hi, alpha, zero, rel).value;
  }
  return total;
}

BigReal default_fd_step(const PrecContext& ctx) { return ldexp_one(-ctx.work_bits / 6, ctx.bits()); }

BigReal check_dv_identity(const PrecContext& ctx, const FHWeight& w, int n, const BigReal& step) {
  if (!w.s.is_zero()) throw DomainError("check_dv_identity: requires s = 0");
  const mpfr_prec_t p = ctx.bits();
  BigReal hstep = step.to_prec(p);
  auto logdet_at = [&](const BigReal& v) { return hankel_fixed(ctx, FHWeight(v, w.s, w.alpha), n).sys.log_det; };
  BigReal fd = (logdet_at(w.v + hstep) - logdet_at(w.v - hstep)) / (2L * hstep);
  BigReal sigma = hankel_fixed(ctx, w, n).sys.sigma.back();
  return abs(fd - 2L * sigma);
}

BigReal check_ds_identity(const PrecContext& ctx, const FHWeight& w, int n, const BigReal& step) {
  if (!(w.s > 0.0) || !(w.s < 1.0)) throw DomainError("check_ds_identity: requires s in (0, 1)");
  const mpfr_prec_t p = ctx.bits();
  BigReal hstep = step.to_prec(p);
  auto logdet_at = [&](const BigReal& s) { return hankel_fixed(ctx, FHWeight(w.v, s, w.alpha), n).sys.log_det; };
  BigReal fd = (logdet_at(w.s + hstep) - logdet_at(w.s - hstep)) / (2L * hstep);
  HankelRun run = hankel_fixed(ctx, w, n);
  BigReal e = expected_count(ctx, run.sys, run.moments, w, w.v);
  return abs(w.s * fd - e);
}

}  // namespace fhlab
