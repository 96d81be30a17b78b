#pragma once

#include <functional>

#include "fhlab/big_real.hpp"

namespace fhlab {

using ScalarFn = std::function<BigReal(const BigReal&)>;

/// Root of a continuous monotone f on [lo, hi] with f(lo) f(hi) <= 0.
///
/// Safeguarded regula falsi (Illinois variant) with bisection fallback; the
/// returned point lies in a bracket of width <= tol. Throws NumericError if
/// the signs at lo and hi agree.
BigReal bisect_monotone(const PrecContext& ctx, const ScalarFn& f, const BigReal& lo, const BigReal& hi,
                        const BigReal& tol);

}  // namespace fhlab
