#pragma once

#include <functional>
#include <vector>

#include "fhlab/big_real.hpp"

namespace fhlab {

using RealFn = std::function<BigReal(const BigReal&)>;

struct QuadResult {
  BigReal value;
  BigReal error;  // node-doubling estimate
  int nodes = 0;
};

/// Integrates f(x) (x-a)^p_left (b-x)^p_right over [a, b], where f is the
/// smooth factor and p_left, p_right > -1.
///
/// When both exponents lie in {-1/2, 0, 1/2} the substitution
/// x = a + (b-a) sin^2(theta) removes the algebraic endpoint behaviour
/// exactly; otherwise the weight is evaluated from exact endpoint distances
/// at tanh-sinh nodes. Refinement halves the step until two successive
/// estimates agree to `rel_tol` (default 2^-(work_bits/2)) relative to the
/// integral of |integrand|.
///
/// Throws NumericError when ctx.quad_budget nodes are exhausted first.
QuadResult quad_endpoint_singular(const PrecContext& ctx, const RealFn& f, const BigReal& a, const BigReal& b,
                                  const BigReal& p_left, const BigReal& p_right);
QuadResult quad_endpoint_singular(const PrecContext& ctx, const RealFn& f, const BigReal& a, const BigReal& b,
                                  const BigReal& p_left, const BigReal& p_right, const BigReal& rel_tol);

/// Convenience overload for the common half-integer exponents, given as
/// multiples of 1/2 (e.g. -1 means -1/2).
QuadResult quad_half_exponents(const PrecContext& ctx, const RealFn& f, const BigReal& a, const BigReal& b,
                               int twice_p_left, int twice_p_right);

/// Plain tanh-sinh quadrature of f over [a, b].
QuadResult quad_tanh_sinh(const PrecContext& ctx, const RealFn& f, const BigReal& a, const BigReal& b);

/// Integrand with access to exact distances from both endpoints:
/// g(x, x - a, b - x). Used where the integrand has singular factors at the
/// endpoints that are not pure powers (logarithms, for instance).
using EndpointFn = std::function<BigReal(const BigReal& x, const BigReal& dist_left, const BigReal& dist_right)>;
QuadResult quad_tanh_sinh_endpoint(const PrecContext& ctx, const EndpointFn& g, const BigReal& a, const BigReal& b,
                                   const BigReal& rel_tol);

/// Nodes and weights of the N-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<BigReal> nodes;
  std::vector<BigReal> weights;
};
GaussLegendreRule gauss_legendre_rule(mpfr_prec_t prec, int n);

/// Applies a precomputed Gauss-Legendre rule on [a, b].
BigReal apply_gauss_legendre(const GaussLegendreRule& rule, const RealFn& f, const BigReal& a, const BigReal& b);

/// Truncation point L >= 1 such that x^k e^{-x^2} < 2^-bits for x >= L.
BigReal gaussian_cutoff(mpfr_prec_t prec, int bits, int power);

}  // namespace fhlab
