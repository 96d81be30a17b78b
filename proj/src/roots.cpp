#include "fhlab/roots.hpp"

namespace fhlab {

BigReal bisect_monotone(const PrecContext& ctx, const ScalarFn& f, const BigReal& lo_in, const BigReal& hi_in,
                        const BigReal& tol) {
  const mpfr_prec_t prec = ctx.bits();
  BigReal lo = lo_in.to_prec(prec);
  BigReal hi = hi_in.to_prec(prec);
  if (hi < lo) std::swap(lo, hi);
  BigReal flo = f(lo);
  BigReal fhi = f(hi);
  if (flo.is_zero()) return lo;
  if (fhi.is_zero()) return hi;
  if (flo.sign() == fhi.sign()) throw NumericError("bisect_monotone: function has the same sign at both ends");

  // Scaled copies of the retained endpoint values (Illinois modification).
  BigReal glo = flo;
  BigReal ghi = fhi;
  int side = 0;  // +1 if the last update replaced hi, -1 if lo
  BigReal quarter_tol = tol / 4L;
  for (int iter = 0; iter < 4000; ++iter) {
    BigReal width = hi - lo;
    if (width <= tol) break;
    BigReal x = (iter % 4 == 3) ? (lo + hi) / 2L : lo - glo * width / (ghi - glo);
    if (!(x > lo && x < hi)) x = (lo + hi) / 2L;
    x = max(x, lo + quarter_tol);
    x = min(x, hi - quarter_tol);
    BigReal fx = f(x);
    if (fx.is_zero()) return x;
    if (fx.sign() == flo.sign()) {
      lo = x;
      flo = fx;
      glo = fx;
      if (side == -1) ghi /= 2L;
      side = -1;
    } else {
      hi = x;
      fhi = fx;
      ghi = fx;
      if (side == +1) glo /= 2L;
      side = +1;
    }
  }
  return abs(flo) <= abs(fhi) ? lo : hi;
}

}  // namespace fhlab
