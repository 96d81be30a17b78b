#pragma once

#include "fhlab/big_real.hpp"

namespace fhlab {

/// Gamma function for x > 0; results at ctx.bits() precision.
BigReal gamma_real(const PrecContext& ctx, const BigReal& x);

/// log Gamma(x) for x > 0.
BigReal log_gamma(const PrecContext& ctx, const BigReal& x);

/// log G(x) for the Barnes G-function, x > 0.
BigReal log_barnes_g(const PrecContext& ctx, const BigReal& x);

/// zeta'(-1).
BigReal zeta_prime_minus_one(const PrecContext& ctx);

/// Parabolic cylinder function U(a, z) for a > -1/2 and real z, from
///   U(a, z) = e^{-z^2/4} / Gamma(a + 1/2) * int_0^inf x^{a-1/2} e^{-x^2/2 - z x} dx.
/// Accurate to about 2^-(work_bits/2) relative.
BigReal pcf_u(const PrecContext& ctx, const BigReal& a, const BigReal& z);

/// Bernoulli number B_{2k}, k >= 1.
BigReal bernoulli_even(long k, mpfr_prec_t prec);

}  // namespace fhlab
