#include "fhlab/big_real.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

namespace fhlab {

PrecContext::PrecContext(int work, int guard, int budget)
    : work_bits(work), guard_bits(guard), quad_budget(budget) {
  if (work_bits < 64) throw DomainError("PrecContext: work_bits must be >= 64");
  if (guard_bits < 32) throw DomainError("PrecContext: guard_bits must be >= 32");
  if (quad_budget <= 0) throw DomainError("PrecContext: quad_budget must be positive");
}

PrecContext PrecContext::with_work_bits(int work) const {
  return PrecContext(work, guard_bits, quad_budget);
}

int PrecContext::decimal_digits() const {
  return static_cast<int>(std::ceil(work_bits * 0.302)) + 2;
}

namespace {

mpfr_prec_t max_prec(const BigReal& a, const BigReal& b) { return std::max(a.prec(), b.prec()); }

template <class Fn>
BigReal unary(const BigReal& x, Fn fn) {
  BigReal r(x.prec());
  fn(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

}  // namespace

BigReal::BigReal(mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

BigReal::BigReal(long value, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_si(v_, value, MPFR_RNDN);
}

BigReal::BigReal(double value, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_d(v_, value, MPFR_RNDN);
}

BigReal::BigReal(const BigReal& other) {
  mpfr_init2(v_, other.prec());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept {
  // Leave `other` as a valid minimal-precision zero.
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    if (prec() != other.prec()) mpfr_set_prec(v_, other.prec());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  if (this != &other) mpfr_swap(v_, other.v_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(v_); }

BigReal BigReal::parse(std::string_view text, mpfr_prec_t prec) {
  BigReal r(prec);
  std::string s(text);
  char* end = nullptr;
  if (!s.empty()) mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
  if (s.empty() || end == s.c_str() || *end != '\0') {
    throw DomainError("BigReal::parse: not a number: '" + s + "'");
  }
  return r;
}

BigReal BigReal::ratio(long p, long q, mpfr_prec_t prec) {
  if (q == 0) throw DomainError("BigReal::ratio: zero denominator");
  BigReal r(p, prec + 8);
  mpfr_div_si(r.v_, r.v_, q, MPFR_RNDN);
  return r.to_prec(prec);
}

BigReal BigReal::to_prec(mpfr_prec_t p) const {
  BigReal r(p);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

std::string BigReal::to_string(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  digits = std::max(digits, 2);
  mpfr_exp_t exp10 = 0;
  std::unique_ptr<char, void (*)(char*)> buf(mpfr_get_str(nullptr, &exp10, 10, digits, v_, MPFR_RNDN),
                                             [](char* p) { mpfr_free_str(p); });
  std::string mant(buf.get());
  std::string out;
  if (!mant.empty() && mant[0] == '-') {
    out.push_back('-');
    mant.erase(0, 1);
  }
  if (mpfr_zero_p(v_)) {
    out += "0." + std::string(static_cast<size_t>(digits - 1), '0') + "e+00";
    return out;
  }
  out.push_back(mant[0]);
  out.push_back('.');
  out.append(mant, 1, std::string::npos);
  long e = static_cast<long>(exp10) - 1;
  out.push_back('e');
  out.push_back(e < 0 ? '-' : '+');
  std::string es = std::to_string(e < 0 ? -e : e);
  if (es.size() < 2) es.insert(0, "0");
  out += es;
  return out;
}

std::string BigReal::to_string(const PrecContext& ctx) const { return to_string(ctx.decimal_digits()); }

long BigReal::exponent2() const {
  if (!mpfr_regular_p(v_)) return std::numeric_limits<long>::min() / 2;
  return mpfr_get_exp(v_);
}

#define FHLAB_COMPOUND(op, fn)                                   \
  BigReal& BigReal::operator op(const BigReal& o) {              \
    if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), MPFR_RNDN); \
    fn(v_, v_, o.v_, MPFR_RNDN);                                 \
    return *this;                                                \
  }
FHLAB_COMPOUND(+=, mpfr_add)
FHLAB_COMPOUND(-=, mpfr_sub)
FHLAB_COMPOUND(*=, mpfr_mul)
FHLAB_COMPOUND(/=, mpfr_div)
#undef FHLAB_COMPOUND

BigReal& BigReal::operator+=(long o) { mpfr_add_si(v_, v_, o, MPFR_RNDN); return *this; }
BigReal& BigReal::operator-=(long o) { mpfr_sub_si(v_, v_, o, MPFR_RNDN); return *this; }
BigReal& BigReal::operator*=(long o) { mpfr_mul_si(v_, v_, o, MPFR_RNDN); return *this; }
BigReal& BigReal::operator/=(long o) { mpfr_div_si(v_, v_, o, MPFR_RNDN); return *this; }

BigReal operator-(const BigReal& a) { return unary(a, mpfr_neg); }

#define FHLAB_BINARY(op, fn)                                  \
  BigReal operator op(const BigReal& a, const BigReal& b) {   \
    BigReal r(max_prec(a, b));                                \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                          \
    return r;                                                 \
  }
FHLAB_BINARY(+, mpfr_add)
FHLAB_BINARY(-, mpfr_sub)
FHLAB_BINARY(*, mpfr_mul)
FHLAB_BINARY(/, mpfr_div)
#undef FHLAB_BINARY

BigReal operator+(const BigReal& a, long b) { BigReal r(a.prec()); mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
BigReal operator-(const BigReal& a, long b) { BigReal r(a.prec()); mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
BigReal operator*(const BigReal& a, long b) { BigReal r(a.prec()); mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
BigReal operator/(const BigReal& a, long b) { BigReal r(a.prec()); mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
BigReal operator+(long a, const BigReal& b) { return b + a; }
BigReal operator-(long a, const BigReal& b) { BigReal r(b.prec()); mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN); return r; }
BigReal operator*(long a, const BigReal& b) { return b * a; }
BigReal operator/(long a, const BigReal& b) { BigReal r(b.prec()); mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN); return r; }
BigReal operator+(const BigReal& a, double b) { BigReal r(a.prec()); mpfr_add_d(r.v_, a.v_, b, MPFR_RNDN); return r; }
BigReal operator-(const BigReal& a, double b) { BigReal r(a.prec()); mpfr_sub_d(r.v_, a.v_, b, MPFR_RNDN); return r; }
BigReal operator*(const BigReal& a, double b) { BigReal r(a.prec()); mpfr_mul_d(r.v_, a.v_, b, MPFR_RNDN); return r; }
BigReal operator/(const BigReal& a, double b) { BigReal r(a.prec()); mpfr_div_d(r.v_, a.v_, b, MPFR_RNDN); return r; }
BigReal operator/(double a, const BigReal& b) { BigReal r(b.prec()); mpfr_d_div(r.v_, a, b.v_, MPFR_RNDN); return r; }

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.v_, b.v_);
  return c < 0 ? std::partial_ordering::less : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const BigReal& a, double b) {
  if (mpfr_nan_p(a.v_) || std::isnan(b)) return std::partial_ordering::unordered;
  int c = mpfr_cmp_d(a.v_, b);
  return c < 0 ? std::partial_ordering::less : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

BigReal abs(const BigReal& x) { return unary(x, mpfr_abs); }
BigReal sqrt(const BigReal& x) { return unary(x, mpfr_sqrt); }
BigReal exp(const BigReal& x) { return unary(x, mpfr_exp); }
BigReal expm1(const BigReal& x) { return unary(x, mpfr_expm1); }
BigReal log(const BigReal& x) { return unary(x, mpfr_log); }
BigReal log1p(const BigReal& x) { return unary(x, mpfr_log1p); }
BigReal log2(const BigReal& x) { return unary(x, mpfr_log2); }
BigReal sin(const BigReal& x) { return unary(x, mpfr_sin); }
BigReal cos(const BigReal& x) { return unary(x, mpfr_cos); }
BigReal tan(const BigReal& x) { return unary(x, mpfr_tan); }
BigReal atan(const BigReal& x) { return unary(x, mpfr_atan); }
BigReal asin(const BigReal& x) { return unary(x, mpfr_asin); }
BigReal sinh(const BigReal& x) { return unary(x, mpfr_sinh); }
BigReal cosh(const BigReal& x) { return unary(x, mpfr_cosh); }
BigReal tanh(const BigReal& x) { return unary(x, mpfr_tanh); }
BigReal erfc(const BigReal& x) { return unary(x, mpfr_erfc); }
BigReal square(const BigReal& x) { return unary(x, mpfr_sqr); }

BigReal pow(const BigReal& x, const BigReal& y) {
  BigReal r(max_prec(x, y));
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

BigReal pow(const BigReal& x, long n) {
  BigReal r(x.prec());
  mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
  return r;
}

BigReal atan2(const BigReal& y, const BigReal& x) {
  BigReal r(max_prec(x, y));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

BigReal min(const BigReal& a, const BigReal& b) { return a <= b ? a : b; }
BigReal max(const BigReal& a, const BigReal& b) { return a >= b ? a : b; }

BigReal ldexp_one(long e, mpfr_prec_t prec) {
  BigReal r(prec);
  mpfr_set_ui_2exp(r.raw(), 1, e, MPFR_RNDN);
  return r;
}

BigReal ldexp(const BigReal& x, long e) {
  BigReal r(x.prec());
  mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN);
  return r;
}

BigReal const_pi(mpfr_prec_t prec) {
  BigReal r(prec);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

BigReal const_log2(mpfr_prec_t prec) {
  BigReal r(prec);
  mpfr_const_log2(r.raw(), MPFR_RNDN);
  return r;
}

BigReal const_euler(mpfr_prec_t prec) {
  BigReal r(prec);
  mpfr_const_euler(r.raw(), MPFR_RNDN);
  return r;
}

double log2_abs(const BigReal& x) {
  if (x.is_zero()) return -std::numeric_limits<double>::infinity();
  if (!x.is_finite()) return std::numeric_limits<double>::infinity();
  long e = 0;
  double m = mpfr_get_d_2exp(&e, x.raw(), MPFR_RNDN);
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

}  // namespace fhlab
