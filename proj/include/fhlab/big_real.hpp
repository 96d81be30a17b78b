#pragma once

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "fhlab/errors.hpp"

namespace fhlab {

/// Precision settings shared by every multiprecision computation.
///
/// `work_bits` is the precision results are reported at; `guard_bits` are
/// carried internally on top of it. `quad_budget` caps the number of
/// quadrature nodes a single integral may use.
struct PrecContext {
  int work_bits = 256;
  int guard_bits = 32;
  int quad_budget = 1 << 15;

  PrecContext() = default;
  PrecContext(int work, int guard = 32, int budget = 1 << 15);

  /// Internal precision: work_bits + guard_bits.
  [[nodiscard]] mpfr_prec_t bits() const { return work_bits + guard_bits; }
  /// Same context with a different working precision.
  [[nodiscard]] PrecContext with_work_bits(int work) const;
  /// Number of significant decimal digits used when serialising.
  [[nodiscard]] int decimal_digits() const;

  friend bool operator==(const PrecContext&, const PrecContext&) = default;
};

/// Arbitrary-precision real backed by an MPFR value.
///
/// Every value carries its own binary precision. Binary operations produce a
/// result at the larger of the operand precisions; operations with plain
/// integers or doubles use the precision of the BigReal operand.
class BigReal {
 public:
  explicit BigReal(mpfr_prec_t prec = 64);
  BigReal(long value, mpfr_prec_t prec);
  BigReal(int value, mpfr_prec_t prec) : BigReal(static_cast<long>(value), prec) {}
  BigReal(double value, mpfr_prec_t prec);
  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  /// Parses decimal (or scientific) notation; throws DomainError on bad input.
  static BigReal parse(std::string_view text, mpfr_prec_t prec);
  /// Exact rational p/q rounded to `prec`.
  static BigReal ratio(long p, long q, mpfr_prec_t prec);

  [[nodiscard]] mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  /// Copy of this value rounded to another precision.
  [[nodiscard]] BigReal to_prec(mpfr_prec_t prec) const;

  [[nodiscard]] mpfr_ptr raw() { return v_; }
  [[nodiscard]] mpfr_srcptr raw() const { return v_; }

  [[nodiscard]] double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  [[nodiscard]] long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  /// Scientific notation with `digits` significant digits.
  [[nodiscard]] std::string to_string(int digits) const;
  /// Scientific notation at the context's serialisation width.
  [[nodiscard]] std::string to_string(const PrecContext& ctx) const;

  [[nodiscard]] bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  [[nodiscard]] bool is_finite() const { return mpfr_number_p(v_) != 0; }
  [[nodiscard]] int sign() const { return mpfr_sgn(v_); }
  /// Binary exponent e with 0.5 <= |x| / 2^e < 1 (very negative for zero).
  [[nodiscard]] long exponent2() const;

  BigReal& operator+=(const BigReal& o);
  BigReal& operator-=(const BigReal& o);
  BigReal& operator*=(const BigReal& o);
  BigReal& operator/=(const BigReal& o);
  BigReal& operator+=(long o);
  BigReal& operator-=(long o);
  BigReal& operator*=(long o);
  BigReal& operator/=(long o);
  BigReal& operator+=(int o) { return *this += static_cast<long>(o); }
  BigReal& operator-=(int o) { return *this -= static_cast<long>(o); }
  BigReal& operator*=(int o) { return *this *= static_cast<long>(o); }
  BigReal& operator/=(int o) { return *this /= static_cast<long>(o); }

  friend BigReal operator-(const BigReal& a);
  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  friend BigReal operator/(const BigReal& a, const BigReal& b);
  friend BigReal operator+(const BigReal& a, long b);
  friend BigReal operator-(const BigReal& a, long b);
  friend BigReal operator*(const BigReal& a, long b);
  friend BigReal operator/(const BigReal& a, long b);
  friend BigReal operator+(long a, const BigReal& b);
  friend BigReal operator-(long a, const BigReal& b);
  friend BigReal operator*(long a, const BigReal& b);
  friend BigReal operator/(long a, const BigReal& b);
  friend BigReal operator+(const BigReal& a, double b);
  friend BigReal operator-(const BigReal& a, double b);
  friend BigReal operator*(const BigReal& a, double b);
  friend BigReal operator/(const BigReal& a, double b);
  friend BigReal operator+(double a, const BigReal& b) { return b + a; }
  friend BigReal operator-(double a, const BigReal& b) { return -(b - a); }
  friend BigReal operator*(double a, const BigReal& b) { return b * a; }
  friend BigReal operator/(double a, const BigReal& b);
  friend BigReal operator+(const BigReal& a, int b) { return a + static_cast<long>(b); }
  friend BigReal operator-(const BigReal& a, int b) { return a - static_cast<long>(b); }
  friend BigReal operator*(const BigReal& a, int b) { return a * static_cast<long>(b); }
  friend BigReal operator/(const BigReal& a, int b) { return a / static_cast<long>(b); }
  friend BigReal operator+(int a, const BigReal& b) { return static_cast<long>(a) + b; }
  friend BigReal operator-(int a, const BigReal& b) { return static_cast<long>(a) - b; }
  friend BigReal operator*(int a, const BigReal& b) { return static_cast<long>(a) * b; }
  friend BigReal operator/(int a, const BigReal& b) { return static_cast<long>(a) / b; }

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b);
  friend bool operator==(const BigReal& a, double b) { return mpfr_cmp_d(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, double b);

 private:
  mpfr_t v_;
};

// Elementary functions; results carry the precision of the argument.
BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal expm1(const BigReal& x);
BigReal log(const BigReal& x);
BigReal log1p(const BigReal& x);
BigReal log2(const BigReal& x);
BigReal pow(const BigReal& x, const BigReal& y);
BigReal pow(const BigReal& x, long n);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
BigReal tan(const BigReal& x);
BigReal atan(const BigReal& x);
BigReal atan2(const BigReal& y, const BigReal& x);
BigReal asin(const BigReal& x);
BigReal sinh(const BigReal& x);
BigReal cosh(const BigReal& x);
BigReal tanh(const BigReal& x);
BigReal erfc(const BigReal& x);
BigReal square(const BigReal& x);
BigReal min(const BigReal& a, const BigReal& b);
BigReal max(const BigReal& a, const BigReal& b);
/// 2^e at the given precision.
BigReal ldexp_one(long e, mpfr_prec_t prec);
/// x * 2^e.
BigReal ldexp(const BigReal& x, long e);

BigReal const_pi(mpfr_prec_t prec);
BigReal const_log2(mpfr_prec_t prec);
BigReal const_euler(mpfr_prec_t prec);

/// log2(|x|) as a double; -inf for zero. Safe for values outside double range.
double log2_abs(const BigReal& x);

}  // namespace fhlab
