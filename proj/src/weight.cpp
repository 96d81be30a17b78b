#include "fhlab/weight.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "fhlab/quadrature.hpp"
#include "fhlab/special.hpp"

namespace fhlab {

FHWeight::FHWeight(BigReal v_in, BigReal s_in, BigReal alpha_in)
    : v(std::move(v_in)), s(std::move(s_in)), alpha(std::move(alpha_in)) {
  if (!(alpha > -1.0)) throw DomainError("FHWeight: alpha must exceed -1");
  if (!(s >= 0.0) || !(s <= 1.0)) throw DomainError("FHWeight: s must lie in [0, 1]");
  if (!v.is_finite()) throw DomainError("FHWeight: v must be finite");
}

mpfr_prec_t FHWeight::prec() const { return std::max({v.prec(), s.prec(), alpha.prec()}); }

FHWeight ScaledParams::to_weight(const BigReal& alpha) const {
  if (n < 1) throw DomainError("ScaledParams: n must be positive");
  const mpfr_prec_t p = std::max(t.prec(), alpha.prec());
  BigReal v = sqrt(BigReal(2L * n, p)) * t;
  BigReal s(p);
  if (lambda) {
    if (!(*lambda >= 0.0)) throw DomainError("ScaledParams: lambda must be non-negative");
    s = exp(-(*lambda * static_cast<long>(n)));
  }
  return FHWeight(v, s, alpha);
}

ScaledParams ScaledParams::from_weight(const FHWeight& w, int n) {
  if (n < 1) throw DomainError("ScaledParams: n must be positive");
  ScaledParams sp;
  sp.n = n;
  sp.t = w.v / sqrt(BigReal(2L * n, w.prec()));
  if (!w.s.is_zero()) sp.lambda = -log(w.s) / static_cast<long>(n);
  return sp;
}

std::string to_string(MomentMethod m) { return m == MomentMethod::Recurrence ? "recurrence" : "quadrature"; }

BigReal eval_weight(const FHWeight& w, const BigReal& x) {
  BigReal gauss = exp(-square(x));
  auto cmp = x <=> w.v;
  if (cmp == std::partial_ordering::equivalent) {
    if (w.alpha < 0.0) throw DomainError("eval_weight: pole at x = v for alpha < 0");
    if (w.alpha > 0.0) return BigReal(x.prec());
    return gauss;
  }
  if (cmp == std::partial_ordering::greater) return gauss * pow(x - w.v, w.alpha);
  return w.s * gauss * pow(w.v - x, w.alpha);
}

namespace {

PrecContext context_with_bits(mpfr_prec_t bits) {
  return PrecContext(static_cast<int>(std::max<mpfr_prec_t>(bits - 32, 64)), 32);
}

// I_j(c) = 1/2 sum_m (-c)^m / m! Gamma((alpha + j + m + 1)/2), summed at
// increasing guard until the cancellation loss is covered.
BigReal series_integral(const BigReal& alpha, const BigReal& c, int j, mpfr_prec_t prec) {
  long guard = 32;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const mpfr_prec_t p = prec + guard;
    BigReal mc = -c.to_prec(p);
    BigReal x0 = (alpha.to_prec(p) + static_cast<long>(j + 1)) / 2L;
    BigReal x1 = x0 + 0.5;
    BigReal g_even(p);
    BigReal g_odd(p);
    mpfr_gamma(g_even.raw(), x0.raw(), MPFR_RNDN);
    mpfr_gamma(g_odd.raw(), x1.raw(), MPFR_RNDN);
    BigReal coef(1L, p);
    BigReal sum = g_even;
    double max_log = log2_abs(sum);
    const double c2 = std::pow(mc.to_double(), 2);
    for (long m = 1;; ++m) {
      coef = coef * mc / m;
      if (coef.is_zero()) break;
      BigReal term(p);
      if (m % 2 == 1) {
        term = coef * g_odd;
        g_odd *= x1;
        x1 += 1L;
      } else {
        g_even *= x0;
        x0 += 1L;
        term = coef * g_even;
      }
      sum += term;
      double lt = log2_abs(term);
      max_log = std::max(max_log, lt);
      if (static_cast<double>(m) > c2 + 4 && lt < log2_abs(sum) - static_cast<double>(p) - 4) break;
      if (m > 2000000) throw NumericError("base_integrals: series did not converge");
    }
    double loss = max_log - log2_abs(sum);
    if (loss + 16 < static_cast<double>(guard)) return (sum / 2L).to_prec(prec);
    guard = static_cast<long>(loss) + 64;
  }
  throw NumericError("base_integrals: series cancellation could not be covered");
}

}  // namespace

std::vector<BigReal> base_integrals(const PrecContext& ctx, const BigReal& alpha, const BigReal& c, int j_max) {
  if (!(alpha > -1.0)) throw DomainError("base_integrals: alpha must exceed -1");
  if (j_max < 1) throw DomainError("base_integrals: j_max must be at least 1");
  const mpfr_prec_t prec = ctx.bits();
  const mpfr_prec_t p_rec = prec + 32 + 4L * j_max;
  BigReal a = alpha.to_prec(p_rec);
  BigReal cc = c.to_prec(p_rec);
  std::vector<BigReal> rec;
  rec.reserve(static_cast<size_t>(j_max + 1));
  rec.push_back(series_integral(a, cc, 0, p_rec));
  rec.push_back(series_integral(a, cc, 1, p_rec));
  for (int j = 1; j < j_max; ++j) {
    rec.push_back(((a + static_cast<long>(j)) * rec[static_cast<size_t>(j - 1)] - cc * rec[static_cast<size_t>(j)]) /
                  2L);
  }
  bool ok = true;
  for (int j : {j_max / 2, j_max}) {
    BigReal ref = series_integral(a, cc, j, prec);
    BigReal diff = abs(rec[static_cast<size_t>(j)] - ref);
    if (!(diff <= ldexp(abs(ref), -static_cast<long>(prec) + 8))) ok = false;
  }
  std::vector<BigReal> out;
  out.reserve(rec.size());
  for (int j = 0; j <= j_max; ++j) {
    out.push_back(ok ? rec[static_cast<size_t>(j)].to_prec(prec) : series_integral(a, cc, j, prec));
  }
  for (const auto& v : out) {
    if (!(v > 0.0)) throw InstabilityError("base_integrals: non-positive integral");
  }
  return out;
}

MomentTable moments_unchecked(const PrecContext& ctx, const FHWeight& w, int k_max) {
  if (k_max < 0) throw DomainError("moments: k_max must be non-negative");
  const mpfr_prec_t prec = ctx.bits();
  const int kk = k_max + 1;  // one extra entry for the odd-index scale estimate
  const bool left = !w.s.is_zero();
  long guard = 64;
  for (int attempt = 0; attempt < 6; ++attempt) {
    const mpfr_prec_t p = prec + guard;
    PrecContext inner = context_with_bits(p);
    BigReal v = w.v.to_prec(p);
    BigReal s = w.s.to_prec(p);
    std::vector<BigReal> ir = base_integrals(inner, w.alpha, 2L * v, std::max(kk, 1));
    std::vector<BigReal> il;
    if (left) il = base_integrals(inner, w.alpha, -2L * v, std::max(kk, 1));
    std::vector<BigReal> vpow;
    for (int i = 0; i <= kk; ++i) vpow.push_back(pow(v, static_cast<long>(i)));
    BigReal damp = exp(-square(v));

    std::vector<BigReal> mu;
    std::vector<BigReal> terms_mag;
    std::vector<BigReal> binom{BigReal(1L, p)};
    for (int k = 0; k <= kk; ++k) {
      if (k > 0) {
        std::vector<BigReal> next(static_cast<size_t>(k + 1), BigReal(1L, p));
        for (int j = 1; j < k; ++j) next[static_cast<size_t>(j)] = binom[static_cast<size_t>(j - 1)] + binom[static_cast<size_t>(j)];
        binom = std::move(next);
      }
      BigReal r(p);
      BigReal r_abs(p);
      BigReal l(p);
      BigReal l_abs(p);
      for (int j = 0; j <= k; ++j) {
        BigReal cv = binom[static_cast<size_t>(j)] * vpow[static_cast<size_t>(k - j)];
        BigReal tr = cv * ir[static_cast<size_t>(j)];
        r += tr;
        r_abs += abs(tr);
        if (left) {
          BigReal tl = cv * il[static_cast<size_t>(j)];
          if (j % 2 == 1) tl = -tl;
          l += tl;
          l_abs += abs(tl);
        }
      }
      mu.push_back(damp * (r + s * l));
      terms_mag.push_back(damp * (r_abs + s * l_abs));
    }
    if (!(mu[0] > 0.0)) throw InstabilityError("moments: mu_0 is not positive");

    // Scale of entry k: int |x|^k w <= sqrt(mu_{k-1} mu_{k+1}) for odd k.
    std::vector<BigReal> scale;
    double worst_loss = 0;
    for (int k = 0; k <= k_max; ++k) {
      BigReal sc = (k % 2 == 0) ? mu[static_cast<size_t>(k)]
                                : sqrt(mu[static_cast<size_t>(k - 1)] * mu[static_cast<size_t>(k + 1)]);
      if (!(sc > 0.0)) throw InstabilityError("moments: even moment is not positive");
      worst_loss = std::max(worst_loss, log2_abs(terms_mag[static_cast<size_t>(k)]) - log2_abs(sc));
      scale.push_back(sc);
    }
    if (worst_loss + 32 > static_cast<double>(guard)) {
      guard = static_cast<long>(worst_loss) + 96;
      continue;
    }
    MomentTable t{w, k_max, {}, {}, {}, MomentMethod::Recurrence, BigReal(prec)};
    for (int k = 0; k <= k_max; ++k) {
      BigReal e = ldexp(terms_mag[static_cast<size_t>(k)], -static_cast<long>(p)) * static_cast<long>(4 * k + 16);
      t.mu.push_back(mu[static_cast<size_t>(k)].to_prec(prec));
      t.scale.push_back(scale[static_cast<size_t>(k)].to_prec(prec));
      t.err.push_back(e.to_prec(prec));
      t.err_bound = max(t.err_bound, (e / scale[static_cast<size_t>(k)]).to_prec(prec));
    }
    return t;
  }
  throw InstabilityError("moments: cancellation in the binomial assembly could not be covered");
}

MomentTable moments_oracle_at(const PrecContext& ctx, const FHWeight& w, const std::vector<int>& ks) {
  const mpfr_prec_t prec = ctx.bits();
  int k_max = 0;
  for (int k : ks) {
    if (k < 0) throw DomainError("moments_oracle: negative index");
    k_max = std::max(k_max, k);
  }
  MomentTable t{w, k_max, {}, {}, {}, MomentMethod::Quadrature, BigReal(prec)};
  t.mu.assign(static_cast<size_t>(k_max + 1), BigReal(prec));
  t.scale.assign(static_cast<size_t>(k_max + 1), BigReal(prec));
  t.err.assign(static_cast<size_t>(k_max + 1), BigReal(prec));
  BigReal v = w.v.to_prec(prec);
  BigReal s = w.s.to_prec(prec);
  BigReal alpha = w.alpha.to_prec(prec);
  const BigReal rel = ldexp_one(-ctx.work_bits / 2, prec);
  const double reach = std::sqrt(static_cast<double>(prec) * std::log(2.0) + 50.0) + 1.0;
  std::set<int> unique(ks.begin(), ks.end());
  for (int k : unique) {
    const double spread = std::sqrt((k + std::max(alpha.to_double(), 0.0)) / 2.0) + reach;
    auto side = [&](bool right, bool absolute) {
      BigReal lo = right ? v : min(v, BigReal(prec)) - spread;
      BigReal hi = right ? max(v, BigReal(prec)) + spread : v;
      BigReal zero(prec);
      RealFn f = [&, absolute](const BigReal& x) {
        BigReal r = pow(x, static_cast<long>(k)) * exp(-square(x));
        return absolute ? abs(r) : r;
      };
      if (!absolute || !(lo < 0.0 && hi > 0.0)) {
        return right ? quad_endpoint_singular(ctx, f, lo, hi, alpha, zero, rel)
                     : quad_endpoint_singular(ctx, f, lo, hi, zero, alpha, rel);
      }
      // |x|^k has a kink at 0: split there, carrying the root factor
      // explicitly on the piece away from v.
      RealFn g = [&](const BigReal& x) { return f(x) * pow(abs(x - v), alpha); };
      QuadResult near = right ? quad_endpoint_singular(ctx, f, lo, zero, alpha, zero, rel)
                              : quad_endpoint_singular(ctx, f, zero, hi, zero, alpha, rel);
      QuadResult far = right ? quad_endpoint_singular(ctx, g, zero, hi, zero, zero, rel)
                             : quad_endpoint_singular(ctx, g, lo, zero, zero, zero, rel);
      return QuadResult{near.value + far.value, near.error + far.error, near.nodes + far.nodes};
    };
    QuadResult qr = side(true, false);
    BigReal value = qr.value;
    BigReal err = qr.error;
    BigReal mag = (k % 2 == 1 && v < 0.0) ? side(true, true).value : abs(qr.value);
    if (!s.is_zero()) {
      QuadResult ql = side(false, false);
      value += s * ql.value;
      err += s * ql.error;
      mag += s * ((k % 2 == 1 && v > 0.0) ? side(false, true).value : abs(ql.value));
    }
    const auto i = static_cast<size_t>(k);
    t.mu[i] = value;
    t.scale[i] = mag;
    t.err[i] = max(err, rel * mag);
    t.err_bound = max(t.err_bound, t.err[i] / mag);
  }
  if (unique.count(0) && !(t.mu[0] > 0.0)) throw NumericError("moments_oracle: mu_0 is not positive");
  return t;
}

MomentTable moments_oracle(const PrecContext& ctx, const FHWeight& w, int k_max) {
  if (k_max < 0) throw DomainError("moments_oracle: k_max must be non-negative");
  std::vector<int> ks;
  for (int k = 0; k <= k_max; ++k) ks.push_back(k);
  return moments_oracle_at(ctx, w, ks);
}

MomentTable moments(const PrecContext& ctx, const FHWeight& w, int k_max) {
  MomentTable t = moments_unchecked(ctx, w, k_max);
  // The oracle only has to expose gross instability, so it runs at a modest
  // precision regardless of ctx.
  PrecContext oracle_ctx(std::min(ctx.work_bits, 160), 32, std::max(ctx.quad_budget, 1 << 15));
  std::vector<int> ks{0, k_max / 2, k_max};
  MomentTable o = moments_oracle_at(oracle_ctx, w, ks);
  for (int k : ks) {
    const auto i = static_cast<size_t>(k);
    BigReal tol = 16L * (o.err[i] + t.err[i]) + ldexp(o.scale[i], -oracle_ctx.work_bits / 2 + 8);
    if (!(abs(t.mu[i] - o.mu[i]) <= tol)) {
      throw InstabilityError("moments: recurrence and quadrature disagree at k = " + std::to_string(k));
    }
  }
  return t;
}

}  // namespace fhlab
