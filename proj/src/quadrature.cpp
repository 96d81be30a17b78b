#include "fhlab/quadrature.hpp"

#include <cmath>
#include <string>

namespace fhlab {

namespace {

bool is_half_step(const BigReal& p, int& twice) {
  BigReal t = p * 2L;
  if (t != BigReal(t.to_long(), t.prec())) return false;
  twice = static_cast<int>(t.to_long());
  return twice >= -1 && twice <= 1;
}

// Core tanh-sinh driver working on endpoint distances. Nodes are generated
// symmetrically; for node parameter tau > 0 the distance to the nearer
// endpoint is width * E / (1 + E) with E = exp(-pi sinh(tau)), computed
// without cancellation.
QuadResult tanh_sinh_core(const PrecContext& ctx, const EndpointFn& g, const BigReal& a, const BigReal& b,
                          const BigReal& rel_tol) {
  const mpfr_prec_t prec = std::max({ctx.bits(), a.prec(), b.prec()});
  if (b < a) throw DomainError("quadrature: interval endpoints out of order");
  BigReal width = (b - a).to_prec(prec);
  if (width.is_zero()) return {BigReal(prec), BigReal(prec), 0};

  const BigReal half_pi = const_pi(prec) / 2L;
  const double bits = static_cast<double>(prec);
  // Beyond tau_max the nodes coincide with the endpoints at this precision.
  const double tau_max = std::asinh(2.0 / M_PI * (bits + 40.0) * std::log(2.0));
  const BigReal tiny = ldexp(width, -static_cast<long>(2 * prec));

  BigReal sum(prec);      // sum of weight * g without the step factor
  BigReal abs_sum(prec);  // same with |g|
  int nodes = 0;

  auto add_node_pair = [&](const BigReal& tau, BigReal& level_abs_contrib) -> bool {
    BigReal sh = sinh(tau);
    BigReal ch = cosh(tau);
    BigReal e = exp(-(const_pi(prec) * sh));
    BigReal one_plus = e + 1L;
    BigReal d_small = width * e / one_plus;
    if (d_small < tiny) return false;
    BigReal d_big = width / one_plus;
    BigReal w = half_pi * ch * 4L * e / square(one_plus) * width / 2L;
    BigReal xr = b - d_small;
    BigReal xl = a + d_small;
    BigReal gr = g(xr, d_big, d_small);
    BigReal gl = g(xl, d_small, d_big);
    nodes += 2;
    BigReal contrib = w * (gr + gl);
    BigReal acontrib = w * (abs(gr) + abs(gl));
    sum += contrib;
    abs_sum += acontrib;
    level_abs_contrib = acontrib;
    return true;
  };

  // Level 0, step 1.
  {
    BigReal mid = a + width / 2L;
    BigReal half_w = width / 2L;
    BigReal g0 = g(mid, half_w, half_w);
    ++nodes;
    sum += half_pi * g0 * half_w;
    abs_sum += half_pi * abs(g0) * half_w;
  }

  auto run_level = [&](int level) {
    const long stride = level == 0 ? 1 : 2;
    const long first = 1;
    const double h = std::ldexp(1.0, -level);
    int small_run = 0;
    for (long k = first; static_cast<double>(k) * h <= tau_max; k += stride) {
      BigReal tau = ldexp(BigReal(k, prec), -level);
      BigReal acontrib(prec);
      if (!add_node_pair(tau, acontrib)) break;
      if (nodes > ctx.quad_budget) {
        throw NumericError("quadrature: node budget " + std::to_string(ctx.quad_budget) + " exhausted");
      }
      // Contributions decay double-exponentially once the nodes crowd the
      // endpoints; before that a small value may just mean a flat region.
      if (static_cast<double>(k) * h < 2.5) continue;
      BigReal level_scale = ldexp(abs_sum, -level);
      if (acontrib * ldexp(BigReal(1L, prec), -level) <= level_scale * rel_tol * 1e-6) {
        if (++small_run >= 3) break;
      } else {
        small_run = 0;
      }
    }
  };

  run_level(0);
  BigReal prev = sum;  // S_0 = h0 * sum with h0 = 1
  BigReal prev_diff(prec);
  bool have_prev_diff = false;
  for (int level = 1; level <= 30; ++level) {
    run_level(level);
    BigReal estimate = ldexp(sum, -level);
    BigReal scale = ldexp(abs_sum, -level);
    BigReal diff = abs(estimate - prev);
    BigReal limit = scale * rel_tol;
    if (level >= 2 && diff <= limit) {
      return {estimate, diff, nodes};
    }
    if (level >= 3 && have_prev_diff && !prev_diff.is_zero() && diff < ldexp(prev_diff, -8)) {
      BigReal quad_est = square(diff) / prev_diff;
      if (quad_est <= ldexp(limit, -8)) return {estimate, max(quad_est, ldexp(scale, -prec + 4)), nodes};
    }
    prev_diff = diff;
    have_prev_diff = true;
    prev = estimate;
  }
  throw NumericError("quadrature: tanh-sinh refinement did not converge");
}

}  // namespace

QuadResult quad_tanh_sinh_endpoint(const PrecContext& ctx, const EndpointFn& g, const BigReal& a, const BigReal& b,
                                   const BigReal& rel_tol) {
  return tanh_sinh_core(ctx, g, a, b, rel_tol);
}

QuadResult quad_endpoint_singular(const PrecContext& ctx, const RealFn& f, const BigReal& a, const BigReal& b,
                                  const BigReal& p_left, const BigReal& p_right) {
  return quad_endpoint_singular(ctx, f, a, b, p_left, p_right, ldexp_one(-ctx.work_bits / 2, ctx.bits()));
}

QuadResult quad_endpoint_singular(const PrecContext& ctx, const RealFn& f, const BigReal& a, const BigReal& b,
                                  const BigReal& p_left, const BigReal& p_right, const BigReal& rel_tol) {
  if (!(p_left > -1.0) || !(p_right > -1.0)) throw DomainError("quad_endpoint_singular: exponents must exceed -1");
  const mpfr_prec_t prec = ctx.bits();
  int tl = 0;
  int tr = 0;
  if (is_half_step(p_left, tl) && is_half_step(p_right, tr)) {
    if (tl == 0 && tr == 0) {
      return tanh_sinh_core(
          ctx, [&](const BigReal& x, const BigReal&, const BigReal&) { return f(x); }, a, b, rel_tol);
    }
    // x = a + (b-a) sin^2(theta), theta in [0, pi/2].
    BigReal width = (b - a).to_prec(prec);
    BigReal scale = pow(width, BigReal(tl + tr + 2, prec) / 2L) * 2L;
    BigReal zero(prec);
    BigReal top = const_pi(prec) / 2L;
    auto g = [&](const BigReal&, const BigReal& dl, const BigReal& dr) {
      BigReal s = sin(dl);
      BigReal c = sin(dr);
      BigReal s2 = square(s);
      BigReal x = a + width * s2;
      BigReal wt = scale;
      if (tl == 1) wt *= s2;
      else if (tl == 0) wt *= s;
      if (tr == 1) wt *= square(c);
      else if (tr == 0) wt *= c;
      return f(x) * wt;
    };
    return tanh_sinh_core(ctx, g, zero, top, rel_tol);
  }
  auto g = [&](const BigReal& x, const BigReal& dl, const BigReal& dr) {
    return f(x) * pow(dl, p_left) * pow(dr, p_right);
  };
  return tanh_sinh_core(ctx, g, a, b, rel_tol);
}

QuadResult quad_half_exponents(const PrecContext& ctx, const RealFn& f, const BigReal& a, const BigReal& b,
                               int twice_p_left, int twice_p_right) {
  const mpfr_prec_t prec = ctx.bits();
  return quad_endpoint_singular(ctx, f, a, b, BigReal(twice_p_left, prec) / 2L, BigReal(twice_p_right, prec) / 2L);
}

QuadResult quad_tanh_sinh(const PrecContext& ctx, const RealFn& f, const BigReal& a, const BigReal& b) {
  return tanh_sinh_core(
      ctx, [&](const BigReal& x, const BigReal&, const BigReal&) { return f(x); }, a, b,
      ldexp_one(-ctx.work_bits / 2, ctx.bits()));
}

GaussLegendreRule gauss_legendre_rule(mpfr_prec_t prec, int n) {
  if (n < 1) throw DomainError("gauss_legendre_rule: n must be positive");
  GaussLegendreRule rule;
  rule.nodes.assign(static_cast<size_t>(n), BigReal(prec));
  rule.weights.assign(static_cast<size_t>(n), BigReal(prec));
  const BigReal eps = ldexp_one(-static_cast<long>(prec) + 6, prec);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    BigReal x(std::cos(M_PI * (i + 0.75) / (n + 0.5)), prec);
    BigReal deriv(prec);
    for (int iter = 0; iter < 200; ++iter) {
      BigReal p0(1L, prec);
      BigReal p1 = x;
      for (int k = 1; k < n; ++k) {
        BigReal p2 = ((2L * k + 1) * x * p1 - k * p0) / static_cast<long>(k + 1);
        p0 = std::move(p1);
        p1 = std::move(p2);
      }
      if (n == 1) p0 = BigReal(1L, prec);
      deriv = static_cast<long>(n) * (x * p1 - p0) / (square(x) - 1L);
      BigReal dx = p1 / deriv;
      x -= dx;
      if (abs(dx) <= eps) break;
    }
    // Refresh the derivative at the converged node.
    {
      BigReal p0(1L, prec);
      BigReal p1 = x;
      for (int k = 1; k < n; ++k) {
        BigReal p2 = ((2L * k + 1) * x * p1 - k * p0) / static_cast<long>(k + 1);
        p0 = std::move(p1);
        p1 = std::move(p2);
      }
      if (n == 1) p0 = BigReal(1L, prec);
      deriv = static_cast<long>(n) * (x * p1 - p0) / (square(x) - 1L);
    }
    BigReal w = 2L / ((1L - square(x)) * square(deriv));
    rule.nodes[static_cast<size_t>(i)] = -x;
    rule.nodes[static_cast<size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<size_t>(i)] = w;
    rule.weights[static_cast<size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<size_t>(n / 2)] = BigReal(prec);
  return rule;
}

BigReal apply_gauss_legendre(const GaussLegendreRule& rule, const RealFn& f, const BigReal& a, const BigReal& b) {
  const mpfr_prec_t prec = rule.nodes.empty() ? a.prec() : rule.nodes.front().prec();
  BigReal half = (b - a).to_prec(prec) / 2L;
  BigReal mid = (a + b).to_prec(prec) / 2L;
  BigReal sum(prec);
  for (size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum * half;
}

BigReal gaussian_cutoff(mpfr_prec_t prec, int bits, int power) {
  double target = bits * std::log(2.0);
  double L = std::sqrt(target) + 1.0;
  for (int i = 0; i < 50; ++i) L = std::sqrt(target + std::max(0, power) * std::log(std::max(L, 1.0))) + 0.5;
  return BigReal(std::ceil(std::max(L, 1.0)), prec);
}

}  // namespace fhlab
