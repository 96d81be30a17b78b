#pragma once

#include <doctest.h>

#include "fhlab/big_real.hpp"

namespace fhlab::test {

inline bool close_rel(const BigReal& a, const BigReal& b, double log2_tol) {
  BigReal diff = abs(a - b);
  BigReal scale = max(abs(a), abs(b));
  if (scale.is_zero()) return diff.is_zero();
  return log2_abs(diff) - log2_abs(scale) <= log2_tol || diff.is_zero();
}

inline bool close_abs(const BigReal& a, const BigReal& b, double tol) { return abs(a - b) <= tol; }

// Cohen-Villegas-Zagier acceleration of sum_{k>=0} (-1)^k a_k.
template <class F>
BigReal alternating_sum(F a, int terms, mpfr_prec_t prec) {
  BigReal d = pow(BigReal(3L, prec) + sqrt(BigReal(8L, prec)), terms);
  d = (d + 1L / d) / 2L;
  BigReal b(-1L, prec);
  BigReal c = -d;
  BigReal s(prec);
  for (int k = 0; k < terms; ++k) {
    c = b - c;
    s += c * a(k);
    b = b * static_cast<long>(k + terms) * static_cast<long>(k - terms) / ((BigReal(k, prec) + 0.5) * (k + 1L));
  }
  return s / d;
}

}  // namespace fhlab::test
