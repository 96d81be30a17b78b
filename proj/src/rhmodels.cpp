#include "fhlab/rhmodels.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "fhlab/errors.hpp"

namespace fhlab {

// ---------------------------------------------------------------------------
// Mat2C

Mat2C Mat2C::inverse() const {
  Complex dt = det();
  if (dt == 0.0) throw NumericError("Mat2C::inverse: singular matrix");
  return {d / dt, -b / dt, -c / dt, a / dt};
}

double Mat2C::max_abs() const { return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)}); }

bool Mat2C::finite() const {
  auto ok = [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
  return ok(a) && ok(b) && ok(c) && ok(d);
}

Mat2C operator*(const Mat2C& x, const Mat2C& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}
Mat2C operator+(const Mat2C& x, const Mat2C& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
Mat2C operator-(const Mat2C& x, const Mat2C& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
Mat2C operator*(Complex s, const Mat2C& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

// ---------------------------------------------------------------------------
// Quad-precision helpers. No Q literals so the file builds in strict mode.

using qreal = __float128;
using qcplx = __complex128;

qcplx qc(qreal re, qreal im = 0) {
  qcplx z;
  __real__ z = re;
  __imag__ z = im;
  return z;
}
qcplx to_q(Complex z) { return qc(z.real(), z.imag()); }
Complex to_d(qcplx z) { return {static_cast<double>(crealq(z)), static_cast<double>(cimagq(z))}; }

const qreal& qpi() {
  static const qreal v = 4 * atanq(1);
  return v;
}
const qreal& qeuler() {
  static const qreal v = strtoflt128("0.57721566490153286060651209008240243104215933593992", nullptr);
  return v;
}
const qreal& qeps() {
  static const qreal v = ldexpq(1, -118);
  return v;
}

struct QPair {
  qcplx v;
  qcplx d;
};

// I_nu and I_nu' from the power series. 1/Gamma(nu+1) must be finite and
// nonzero, i.e. nu is not a negative integer.
QPair i_series(qreal nu, qcplx z) {
  qcplx h = z / qc(2);
  qcplx h2 = h * h;
  qcplx pw = cexpq(qc(nu) * clogq(h));
  qcplx term = qc(1 / tgammaq(nu + 1));
  qcplx s = term;
  qcplx sd = term * qc(nu);
  qreal biggest = cabsq(term);
  const qreal hz = cabsq(h);
  for (int k = 0; k < 4000; ++k) {
    term = term * h2 / qc(static_cast<qreal>(k + 1) * (nu + k + 1));
    s += term;
    sd += term * qc(2 * (k + 1) + nu);
    qreal at = cabsq(term) * (2 * (k + 1) + fabsq(nu) + 1);
    biggest = std::max(biggest, at);
    if (k + 1 > hz && at <= qeps() * qeps() * biggest) break;
  }
  return {pw * s, pw * sd / (qc(2) * h)};
}

qreal factorial_q(int n) {
  qreal f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

qreal digamma_int(int m) {
  qreal s = -qeuler();
  for (int j = 1; j < m; ++j) s += qreal(1) / j;
  return s;
}

// K_n for integer n >= 0 (logarithmic series).
qcplx k_int_series(int n, qcplx z) {
  qcplx h = z / qc(2);
  qcplx h2 = h * h;
  qcplx lg = clogq(h);
  qcplx s1 = qc(0);
  if (n > 0) {
    qcplx pk = qc(1);
    for (int k = 0; k < n; ++k) {
      s1 += qc(factorial_q(n - k - 1) / factorial_q(k)) * pk;
      pk = pk * (-h2);
    }
    s1 = s1 * qc(0.5) / cpowq(h, qc(n));
  }
  qcplx in = i_series(n, z).v;
  qcplx term = qc(1 / factorial_q(n));  // h2^k / (k! (n+k)!)
  qcplx s3 = term * qc(digamma_int(1) + digamma_int(n + 1));
  qreal biggest = cabsq(s3);
  const qreal hz = cabsq(h);
  for (int k = 1; k < 4000; ++k) {
    term = term * h2 / qc(static_cast<qreal>(k) * (n + k));
    qcplx add = term * qc(digamma_int(k + 1) + digamma_int(n + k + 1));
    s3 += add;
    qreal at = cabsq(add);
    biggest = std::max(biggest, at);
    if (k > hz && at <= qeps() * qeps() * biggest) break;
  }
  qreal sgn = (n % 2 == 0) ? 1 : -1;
  return s1 - qc(sgn) * lg * in + qc(sgn * qreal(0.5)) * cpowq(h, qc(n)) * s3;
}

bool is_integer(double nu, int& n) {
  double r = std::round(nu);
  if (std::abs(nu - r) > 1e-13) return false;
  n = static_cast<int>(r);
  return true;
}

// K_nu and K_nu' for |z| <= kBesselSwitch, |arg z| < pi.
QPair k_series(double nu, qcplx z) {
  int n = 0;
  if (is_integer(nu, n)) {
    n = std::abs(n);
    qcplx k = k_int_series(n, z);
    qcplx dk = n == 0 ? -k_int_series(1, z) : (k_int_series(n - 1, z) + k_int_series(n + 1, z)) / qc(-2);
    return {k, dk};
  }
  qreal q = nu;
  QPair ip = i_series(q, z);
  QPair im = i_series(-q, z);
  qcplx f = qc(qpi() / (2 * sinq(q * qpi())));
  return {f * (im.v - ip.v), f * (im.d - ip.d)};
}

// Sum_k s^k a_k(nu) z^{-k} with s = -1 when alternate; truncated at the
// smallest term.
Complex hankel_sum(double nu, Complex z, bool alternate) {
  const double mu = 4 * nu * nu;
  Complex term = 1.0;
  Complex sum = 1.0;
  double prev = 1.0;
  for (int k = 1; k < 80; ++k) {
    double odd = 2.0 * k - 1;
    Complex next = term * ((mu - odd * odd) / (8.0 * k)) / z;
    if (alternate) next = -next;
    double mag = std::abs(next);
    if (mag > prev) break;
    term = next;
    sum += term;
    prev = mag;
    if (mag <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

Complex k_asym(double nu, Complex z) { return std::sqrt(kPi / (2.0 * z)) * std::exp(-z) * hankel_sum(nu, z, false); }

Complex i_asym(double nu, Complex z) {
  Complex root = std::sqrt(2.0 * kPi * z);
  Complex grow = std::exp(z) / root * hankel_sum(nu, z, true);
  Complex mult = z.imag() >= 0 ? kI * std::exp(kI * (nu * kPi)) : -kI * std::exp(-kI * (nu * kPi));
  return grow + mult * std::exp(-z) / root * hankel_sum(nu, z, false);
}

struct CPair {
  Complex v;
  Complex d;
};

CPair k_eval(double nu, Complex z) {
  if (std::abs(z) <= kBesselSwitch) {
    QPair p = k_series(nu, to_q(z));
    return {to_d(p.v), to_d(p.d)};
  }
  return {k_asym(nu, z), -0.5 * (k_asym(nu - 1, z) + k_asym(nu + 1, z))};
}

CPair i_eval(double nu, Complex z) {
  if (std::abs(z) <= kBesselSwitch) {
    QPair p = i_series(nu, to_q(z));
    return {to_d(p.v), to_d(p.d)};
  }
  return {i_asym(nu, z), 0.5 * (i_asym(nu - 1, z) + i_asym(nu + 1, z))};
}

// Hankel functions through K: H1(w) = (2/(pi i)) e^{-i pi nu/2} K(-i w),
// H2(w) = -(2/(pi i)) e^{i pi nu/2} K(i w).
CPair h1_eval(double nu, Complex w) {
  CPair k = k_eval(nu, -kI * w);
  Complex f = 2.0 / (kPi * kI) * std::exp(-kI * (kPi * nu / 2));
  return {f * k.v, f * (-kI) * k.d};
}
CPair h2_eval(double nu, Complex w) {
  CPair k = k_eval(nu, kI * w);
  Complex f = -2.0 / (kPi * kI) * std::exp(kI * (kPi * nu / 2));
  return {f * k.v, f * kI * k.d};
}

// ---------------------------------------------------------------------------
// Airy

AiryValues airy_series(Complex zd) {
  const qreal c1 = 1 / (cbrtq(9) * tgammaq(qreal(2) / 3));
  const qreal c2 = 1 / (cbrtq(3) * tgammaq(qreal(1) / 3));
  qcplx z = to_q(zd);
  qcplx z3 = z * z * z;
  qcplx tf = qc(1), tg = z, tfp = z * z / qc(2), tgp = qc(1);
  qcplx f = tf, g = tg, fp = tfp, gp = tgp;
  qreal biggest = std::max({cabsq(tf), cabsq(tg), cabsq(tfp), cabsq(tgp)});
  const qreal zz = cabsq(z);
  for (int k = 0; k < 4000; ++k) {
    tf = tf * z3 / qc(static_cast<qreal>(3 * k + 2) * (3 * k + 3));
    tg = tg * z3 / qc(static_cast<qreal>(3 * k + 3) * (3 * k + 4));
    tgp = tgp * z3 / qc(static_cast<qreal>(3 * k + 1) * (3 * k + 3));
    f += tf;
    g += tg;
    gp += tgp;
    if (k >= 1) {
      tfp = tfp * z3 / qc(static_cast<qreal>(3 * k) * (3 * k + 2));
      fp += tfp;
    }
    qreal at = std::max({cabsq(tf), cabsq(tg), cabsq(tfp), cabsq(tgp)});
    biggest = std::max(biggest, at);
    if (3 * k > zz && k >= 2 && at <= qeps() * qeps() * biggest) break;
  }
  return {to_d(qc(c1) * f - qc(c2) * g), to_d(qc(c1) * fp - qc(c2) * gp)};
}

// Large-z expansion; valid for |arg z| <= 2 pi / 3 here.
AiryValues airy_asym(Complex z) {
  Complex xi = (2.0 / 3.0) * z * std::sqrt(z);
  Complex z14 = std::sqrt(std::sqrt(z));
  Complex su = 1.0, sv = 1.0;
  double u = 1.0;
  Complex pw = 1.0;
  double prev = 1.0;
  for (int k = 1; k < 200; ++k) {
    u *= (6.0 * k - 5) * (6.0 * k - 3) * (6.0 * k - 1) / ((2.0 * k - 1) * 216.0 * k);
    double v = -(6.0 * k + 1) / (6.0 * k - 1) * u;
    pw *= -1.0 / xi;
    Complex tu = u * pw;
    double mag = std::abs(tu);
    if (mag > prev) break;
    su += tu;
    sv += v * pw;
    prev = mag;
    if (mag <= 1e-18) break;
  }
  Complex e = std::exp(-xi) / (2.0 * std::sqrt(kPi));
  return {e / z14 * su, -z14 * e * sv};
}

Complex omega() { return std::polar(1.0, 2 * kPi / 3); }

// ---------------------------------------------------------------------------
// Sector bookkeeping

constexpr double kArgTol = 1e-12;

bool is_airy(Sector s) { return s == Sector::AiryI || s == Sector::AiryII || s == Sector::AiryIII || s == Sector::AiryIV; }

// Argument of the point read inside the closed sector; DomainError otherwise.
double sector_arg(const SectorPoint& p) {
  double th = std::arg(p.zeta);
  double lo = 0, hi = 0;
  switch (p.sector) {
    case Sector::AiryI: lo = 0; hi = 2 * kPi / 3; break;
    case Sector::AiryII: lo = 2 * kPi / 3; hi = kPi; break;
    case Sector::AiryIII: lo = -kPi; hi = -2 * kPi / 3; break;
    case Sector::AiryIV: lo = -2 * kPi / 3; hi = 0; break;
    case Sector::BesselRight: lo = -2 * kPi / 3; hi = 2 * kPi / 3; break;
    case Sector::BesselUpper: lo = 2 * kPi / 3; hi = kPi; break;
    case Sector::BesselLower: lo = -kPi; hi = -2 * kPi / 3; break;
  }
  if (p.zeta == 0.0) return 0.5 * (lo + hi);
  // The negative axis belongs to both left sectors.
  if (hi == kPi && th < -kPi + kArgTol) th = kPi;
  if (lo == -kPi && th > kPi - kArgTol) th = -kPi;
  if (th < lo - kArgTol || th > hi + kArgTol) {
    throw DomainError("sector mismatch: arg " + std::to_string(th) + " outside " + to_string(p.sector));
  }
  return th;
}

Mat2C airy_phi_top(Complex z) {
  Complex w2 = omega() * omega();
  AiryValues a = airy_like_functions(z);
  AiryValues b = airy_like_functions(w2 * z);
  return {a.ai, b.ai, a.dai, w2 * b.dai};
}

Mat2C airy_phi_bottom(Complex z) {
  Complex w = omega();
  AiryValues a = airy_like_functions(z);
  AiryValues b = airy_like_functions(w * z);
  return {a.ai, -w * w * b.ai, a.dai, -b.dai};
}

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return out;
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Complex entry(const Mat2C& m, int r, int c) {
  if (r == 0) return c == 0 ? m.a : m.b;
  return c == 0 ? m.c : m.d;
}

double relative_gap(const Mat2C& plus, const Mat2C& minus_times_j) {
  return (plus - minus_times_j).max_abs() / std::max(1.0, plus.max_abs());
}

}  // namespace

// ---------------------------------------------------------------------------
// Public special functions

AiryValues airy_like_functions(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > 1e3) {
    throw DomainError("airy_like_functions: |z| must be finite and at most 1e3");
  }
  if (std::abs(z) <= kAirySwitch) return airy_series(z);
  if (std::abs(std::arg(z)) <= 2 * kPi / 3) return airy_asym(z);
  Complex w = omega();
  AiryValues a = airy_asym(w * z);
  AiryValues b = airy_asym(w * w * z);
  return {-w * a.ai - w * w * b.ai, -w * w * a.dai - w * b.dai};
}

BesselValues bessel_like_functions(double alpha, Complex z) {
  if (!(alpha > -1.0) || !std::isfinite(alpha)) throw DomainError("bessel_like_functions: alpha must exceed -1");
  if (z == 0.0 || !std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("bessel_like_functions: z must be finite and nonzero");
  }
  if (std::abs(std::arg(z)) >= kPi / 2) throw DomainError("bessel_like_functions: z on or beyond the branch range");
  BesselValues out;
  CPair i = i_eval(alpha, z);
  CPair k = k_eval(alpha, z);
  CPair h1 = h1_eval(alpha, z);
  CPair h2 = h2_eval(alpha, z);
  out.i = i.v;
  out.di = i.d;
  out.k = k.v;
  out.dk = k.d;
  out.h1 = h1.v;
  out.dh1 = h1.d;
  out.h2 = h2.v;
  out.dh2 = h2.d;
  return out;
}

Complex bessel_j_series(double alpha, Complex zd) {
  if (std::abs(zd) > kBesselSwitch) throw DomainError("bessel_j_series: |z| too large for the series");
  qreal nu = alpha;
  qcplx z = to_q(zd);
  qcplx h = z / qc(2);
  qcplx mh2 = -(h * h);
  qcplx term = qc(1 / tgammaq(nu + 1));
  qcplx s = term;
  for (int k = 0; k < 400; ++k) {
    term = term * mh2 / qc(static_cast<qreal>(k + 1) * (nu + k + 1));
    s += term;
  }
  return to_d(cexpq(qc(nu) * clogq(h)) * s);
}

// ---------------------------------------------------------------------------
// Sectors and parametrices

std::string to_string(Sector s) {
  switch (s) {
    case Sector::AiryI: return "airy-I";
    case Sector::AiryII: return "airy-II";
    case Sector::AiryIII: return "airy-III";
    case Sector::AiryIV: return "airy-IV";
    case Sector::BesselRight: return "bessel-right";
    case Sector::BesselUpper: return "bessel-upper";
    case Sector::BesselLower: return "bessel-lower";
  }
  return "?";
}

Sector airy_sector_of(Complex zeta) {
  double th = std::arg(zeta);
  auto near = [&](double x) { return std::abs(th - x) < kArgTol; };
  if (zeta == 0.0 || near(0) || near(kPi) || near(-kPi) || near(2 * kPi / 3) || near(-2 * kPi / 3)) {
    throw DomainError("airy_sector_of: point on the contour");
  }
  if (th > 0) return th < 2 * kPi / 3 ? Sector::AiryI : Sector::AiryII;
  return th > -2 * kPi / 3 ? Sector::AiryIV : Sector::AiryIII;
}

Sector bessel_sector_of(Complex zeta) {
  double th = std::arg(zeta);
  auto near = [&](double x) { return std::abs(th - x) < kArgTol; };
  if (zeta == 0.0 || near(kPi) || near(-kPi) || near(2 * kPi / 3) || near(-2 * kPi / 3)) {
    throw DomainError("bessel_sector_of: point on the contour");
  }
  if (std::abs(th) < 2 * kPi / 3) return Sector::BesselRight;
  return th > 0 ? Sector::BesselUpper : Sector::BesselLower;
}

Mat2C eval_airy_parametrix(const SectorPoint& p) {
  if (!is_airy(p.sector)) throw DomainError("eval_airy_parametrix: not an Airy sector");
  sector_arg(p);
  const Mat2C ma = std::sqrt(2 * kPi) * std::exp(kI * (kPi / 6)) * Mat2C::diag(1.0, -kI);
  const Mat2C e = Mat2C::diag(std::exp(-kI * (kPi / 6)), std::exp(kI * (kPi / 6)));
  switch (p.sector) {
    case Sector::AiryI: return ma * airy_phi_top(p.zeta) * e;
    case Sector::AiryII: return ma * airy_phi_top(p.zeta) * e * Mat2C{1.0, 0.0, -1.0, 1.0};
    case Sector::AiryIII: return ma * airy_phi_bottom(p.zeta) * e * Mat2C{1.0, 0.0, 1.0, 1.0};
    default: return ma * airy_phi_bottom(p.zeta) * e;
  }
}

Mat2C eval_bessel_parametrix(double alpha, const SectorPoint& p) {
  if (!(alpha > -1.0)) throw DomainError("eval_bessel_parametrix: alpha must exceed -1");
  if (is_airy(p.sector)) throw DomainError("eval_bessel_parametrix: not a Bessel sector");
  if (p.zeta == 0.0) throw DomainError("eval_bessel_parametrix: zeta = 0 is a branch point");
  double th = sector_arg(p);
  double r = std::abs(p.zeta);
  Complex s = std::polar(std::sqrt(r), th / 2);  // zeta^{1/2} on the chosen side
  if (p.sector == Sector::BesselRight) {
    Complex w = 2.0 * s;
    CPair i = i_eval(alpha, w);
    CPair k = k_eval(alpha, w);
    return {i.v, kI / kPi * k.v, 2 * kPi * kI * s * i.d, -2.0 * s * k.d};
  }
  double th_minus = p.sector == Sector::BesselUpper ? th - kPi : th + kPi;
  Complex w = 2.0 * std::polar(std::sqrt(r), th_minus / 2);  // 2 (-zeta)^{1/2}
  CPair h1 = h1_eval(alpha, w);
  CPair h2 = h2_eval(alpha, w);
  Complex ep = std::exp(kI * (kPi * alpha / 2));
  Complex em = std::exp(-kI * (kPi * alpha / 2));
  if (p.sector == Sector::BesselUpper) {
    return Mat2C{0.5 * h1.v, 0.5 * h2.v, kPi * s * h1.d, kPi * s * h2.d} * Mat2C::diag(ep, em);
  }
  return Mat2C{0.5 * h2.v, -0.5 * h1.v, -kPi * s * h2.d, kPi * s * h1.d} * Mat2C::diag(em, ep);
}

Mat2C normalisation_n() {
  const double c = 1 / std::sqrt(2.0);
  return {c, c * kI, c * kI, c};
}

Mat2C airy_a1() { return Complex(1.0 / 8) * Mat2C{1.0 / 6, kI, kI, -1.0 / 6}; }

Mat2C bessel_b1(double alpha) {
  double q = 1 + 4 * alpha * alpha;
  return Complex(1.0 / 16) * Mat2C{-q, -2.0 * kI, -2.0 * kI, q};
}

double airy_remainder(Complex zeta) {
  Mat2C p = eval_airy_parametrix({zeta, airy_sector_of(zeta)});
  Complex q = std::pow(zeta, 0.25);
  Complex xi = (2.0 / 3.0) * zeta * std::sqrt(zeta);
  Mat2C x = normalisation_n().inverse() * Mat2C::diag(q, 1.0 / q) * p * Mat2C::diag(std::exp(xi), std::exp(-xi));
  Mat2C r = x - Mat2C::identity() - std::pow(zeta, -1.5) * airy_a1();
  if (!r.finite()) throw NumericError("airy_remainder: overflow at this radius");
  return r.max_abs();
}

double bessel_remainder(double alpha, Complex zeta) {
  Mat2C p = eval_bessel_parametrix(alpha, {zeta, bessel_sector_of(zeta)});
  Complex s = std::sqrt(zeta);
  Complex q = std::sqrt(2 * kPi * s);
  Mat2C x = normalisation_n().inverse() * Mat2C::diag(q, 1.0 / q) * p *
            Mat2C::diag(std::exp(-2.0 * s), std::exp(2.0 * s));
  Mat2C r = x - Mat2C::identity() - (1.0 / s) * bessel_b1(alpha);
  if (!r.finite()) throw NumericError("bessel_remainder: overflow at this radius");
  return r.max_abs();
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("loglog_slope: need two or more matching points");
  double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw DomainError("loglog_slope: values must be positive");
    double lx = std::log(x[i]);
    double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------------------------
// Checks

std::vector<CheckRow> airy_jump_checks(const std::vector<double>& radii, double tol) {
  struct Ray {
    const char* name;
    double arg;
    Sector plus, minus;
    Mat2C jump;
  };
  const Ray rays[] = {
      {"R+", 0.0, Sector::AiryI, Sector::AiryIV, {1.0, 1.0, 0.0, 1.0}},
      {"R-", kPi, Sector::AiryII, Sector::AiryIII, {0.0, 1.0, -1.0, 0.0}},
      {"arg=2pi/3", 2 * kPi / 3, Sector::AiryI, Sector::AiryII, {1.0, 0.0, 1.0, 1.0}},
      {"arg=-2pi/3", -2 * kPi / 3, Sector::AiryIII, Sector::AiryIV, {1.0, 0.0, 1.0, 1.0}},
  };
  std::vector<CheckRow> out;
  for (const Ray& ray : rays) {
    for (double r : radii) {
      Complex z = std::polar(r, ray.arg);
      Mat2C pp = eval_airy_parametrix({z, ray.plus});
      Mat2C pm = eval_airy_parametrix({z, ray.minus});
      double res = relative_gap(pp, pm * ray.jump);
      out.push_back({"jump", std::string("airy ") + ray.name + fmt(" r=%g", r), res, res <= tol});
    }
  }
  return out;
}

std::vector<CheckRow> bessel_jump_checks(double alpha, const std::vector<double>& radii, double tol) {
  struct Ray {
    const char* name;
    double arg;
    Sector plus, minus;
    Mat2C jump;
  };
  const Complex ea = std::exp(kI * (kPi * alpha));
  const Ray rays[] = {
      {"R-", kPi, Sector::BesselUpper, Sector::BesselLower, {0.0, 1.0, -1.0, 0.0}},
      {"arg=2pi/3", 2 * kPi / 3, Sector::BesselRight, Sector::BesselUpper, {1.0, 0.0, ea, 1.0}},
      {"arg=-2pi/3", -2 * kPi / 3, Sector::BesselLower, Sector::BesselRight, {1.0, 0.0, 1.0 / ea, 1.0}},
  };
  std::vector<CheckRow> out;
  for (const Ray& ray : rays) {
    for (double r : radii) {
      Complex z = std::polar(r, ray.arg);
      Mat2C pp = eval_bessel_parametrix(alpha, {z, ray.plus});
      Mat2C pm = eval_bessel_parametrix(alpha, {z, ray.minus});
      double res = relative_gap(pp, pm * ray.jump);
      out.push_back({"jump", fmt("bessel alpha=%g ", alpha) + ray.name + fmt(" r=%g", r), res, res <= tol});
    }
  }
  return out;
}

std::vector<CheckRow> airy_det_checks(const std::vector<Complex>& points, double tol) {
  std::vector<CheckRow> out;
  for (Complex z : points) {
    Sector s = airy_sector_of(z);
    double res = std::abs(eval_airy_parametrix({z, s}).det() - 1.0);
    out.push_back({"det", "airy " + to_string(s) + fmt(" |z|=%g", std::abs(z)) + fmt(" arg=%.4f", std::arg(z)), res,
                   res <= tol});
  }
  return out;
}

std::vector<CheckRow> bessel_det_checks(double alpha, const std::vector<Complex>& points, double tol) {
  std::vector<CheckRow> out;
  for (Complex z : points) {
    Sector s = bessel_sector_of(z);
    double res = std::abs(eval_bessel_parametrix(alpha, {z, s}).det() - 1.0);
    out.push_back({"det",
                   fmt("bessel alpha=%g ", alpha) + to_string(s) + fmt(" |z|=%g", std::abs(z)) +
                       fmt(" arg=%.4f", std::arg(z)),
                   res, res <= tol});
  }
  return out;
}

std::vector<CheckRow> airy_remainder_checks(const std::vector<double>& args, double r_lo, double r_hi,
                                            double slack) {
  std::vector<CheckRow> out;
  auto radii = log_spaced(r_lo, r_hi, 5);
  for (double a : args) {
    std::vector<double> ys;
    for (double r : radii) ys.push_back(airy_remainder(std::polar(r, a)));
    double slope = loglog_slope(radii, ys);
    double res = std::abs(slope + 3.0);
    out.push_back({"asymptotics", fmt("airy arg=%.4f", a) + fmt(" slope=%.4f", slope), res, res <= slack});
  }
  return out;
}

std::vector<CheckRow> bessel_remainder_checks(double alpha, const std::vector<double>& args, double r_lo,
                                              double r_hi, double slack) {
  std::vector<CheckRow> out;
  auto radii = log_spaced(r_lo, r_hi, 5);
  for (double a : args) {
    std::vector<double> ys;
    for (double r : radii) ys.push_back(bessel_remainder(alpha, std::polar(r, a)));
    double slope = loglog_slope(radii, ys);
    double res = std::abs(slope + 1.0);
    out.push_back({"asymptotics", fmt("bessel alpha=%g", alpha) + fmt(" arg=%.4f", a) + fmt(" slope=%.4f", slope),
                   res, res <= slack});
  }
  return out;
}

namespace {

// Column-wise contract: every entry within its envelope and at least one
// entry per column attaining it.
bool origin_contract(const std::vector<OriginRow>& rows, double tol) {
  for (const OriginRow& r : rows) {
    if (r.log_type ? r.fitted > 1 + tol : r.fitted < r.envelope - tol) return false;
  }
  for (size_t i = 0; i < rows.size(); i += 4) {
    for (int col = 0; col < 2; ++col) {
      bool hit = false;
      for (size_t j = i; j < i + 4 && j < rows.size(); ++j) {
        const OriginRow& r = rows[j];
        if (r.col != col) continue;
        double target = r.log_type ? 1.0 : r.envelope;
        if (std::abs(r.fitted - target) <= tol) hit = true;
      }
      if (!hit) return false;
    }
  }
  return true;
}

}  // namespace

OriginReport check_origin_behaviour(double alpha, double tol) {
  if (!(alpha > -1.0)) throw DomainError("check_origin_behaviour: alpha must exceed -1");
  OriginReport rep;
  rep.alpha = alpha;
  const bool zero = std::abs(alpha) < 1e-13;
  const auto power_radii = log_spaced(1e-12, 1e-6, 5);
  const auto log_radii = log_spaced(1e-80, 1e-40, 5);
  const struct {
    Sector s;
    double arg;
  } rays[] = {{Sector::BesselRight, 0.3}, {Sector::BesselUpper, 0.85 * kPi}, {Sector::BesselLower, -0.85 * kPi}};
  for (const auto& ray : rays) {
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        OriginRow row;
        row.sector = ray.s;
        row.row = r;
        row.col = c;
        bool log_type = zero && (ray.s != Sector::BesselRight || c == 1);
        if (alpha < 0 && !zero) row.envelope = alpha / 2;
        else if (ray.s == Sector::BesselRight) row.envelope = c == 0 ? alpha / 2 : -alpha / 2;
        else row.envelope = -alpha / 2;
        if (zero) row.envelope = 0;
        row.log_type = log_type;
        const auto& radii = log_type ? log_radii : power_radii;
        std::vector<double> xs, ys;
        for (double rad : radii) {
          Mat2C p = eval_bessel_parametrix(alpha, {std::polar(rad, ray.arg), ray.s});
          xs.push_back(log_type ? std::abs(std::log(rad)) : rad);
          ys.push_back(std::abs(entry(p, r, c)));
        }
        row.fitted = loglog_slope(xs, ys);
        rep.rows.push_back(row);
      }
    }
  }
  rep.contract_ok = origin_contract(rep.rows, tol);
  return rep;
}

OriginReport check_origin_behaviour_airy(double tol) {
  OriginReport rep;
  rep.airy = true;
  const auto radii = log_spaced(1e-12, 1e-6, 5);
  const struct {
    Sector s;
    double arg;
  } rays[] = {{Sector::AiryI, kPi / 3},
              {Sector::AiryII, 5 * kPi / 6},
              {Sector::AiryIII, -5 * kPi / 6},
              {Sector::AiryIV, -kPi / 3}};
  for (const auto& ray : rays) {
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        OriginRow row{ray.s, r, c, 0.0, 0.0, false};
        std::vector<double> ys;
        for (double rad : radii) ys.push_back(std::abs(entry(eval_airy_parametrix({std::polar(rad, ray.arg), ray.s}), r, c)));
        row.fitted = loglog_slope(radii, ys);
        rep.rows.push_back(row);
      }
    }
  }
  rep.contract_ok = origin_contract(rep.rows, tol);
  return rep;
}

std::vector<CheckRow> origin_check_rows(const OriginReport& rep, double tol) {
  std::vector<CheckRow> out;
  std::string head = rep.airy ? std::string("airy ") : fmt("bessel alpha=%g ", rep.alpha);
  for (const OriginRow& r : rep.rows) {
    double target = r.log_type ? 1.0 : r.envelope;
    bool within = r.log_type ? r.fitted <= 1 + tol : r.fitted >= r.envelope - tol;
    std::string where = head + to_string(r.sector) + " (" + std::to_string(r.row + 1) + "," +
                        std::to_string(r.col + 1) + ")" + (r.log_type ? " log" : fmt(" env=%g", r.envelope)) +
                        fmt(" fit=%.4f", r.fitted);
    out.push_back({"origin", where, std::abs(r.fitted - target), within});
  }
  out.push_back({"origin-contract", head + "columns attain envelope", 0.0, rep.contract_ok});
  return out;
}

namespace {

const std::vector<double> kJumpRadii{0.5, 2.0, 6.0};

std::vector<Complex> det_points() {
  return {{1, 1}, {-3, 1}, {-3, -1}, {2, -5}, {11, 4}, {-0.2, 0.05}, {0.05, -0.01}, {-20, 3}};
}

void append(std::vector<CheckRow>& a, const std::vector<CheckRow>& b) { a.insert(a.end(), b.begin(), b.end()); }

}  // namespace

std::vector<CheckRow> rh_check_airy() {
  std::vector<CheckRow> rows = airy_jump_checks(kJumpRadii);
  append(rows, airy_det_checks(det_points()));
  append(rows, airy_remainder_checks({kPi / 3, -kPi / 3, 5 * kPi / 6, -5 * kPi / 6}, 12, 48));
  append(rows, origin_check_rows(check_origin_behaviour_airy()));
  return rows;
}

std::vector<CheckRow> rh_check_bessel(double alpha) {
  std::vector<CheckRow> rows = bessel_jump_checks(alpha, kJumpRadii);
  append(rows, bessel_det_checks(alpha, det_points()));
  append(rows, bessel_remainder_checks(alpha, {0.5, -1.2, 2.6, -2.6}, 25, 400));
  append(rows, origin_check_rows(check_origin_behaviour(alpha)));
  return rows;
}

}  // namespace fhlab
