#pragma once

#include <complex>
#include <string>
#include <vector>

namespace fhlab {

using Complex = std::complex<double>;

/// 2x2 complex matrix.
struct Mat2C {
  Complex a{}, b{}, c{}, d{};  // [[a, b], [c, d]]

  static Mat2C identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2C diag(Complex x, Complex y) { return {x, 0.0, 0.0, y}; }
  [[nodiscard]] Complex det() const { return a * d - b * c; }
  [[nodiscard]] Mat2C inverse() const;
  /// Largest entry modulus.
  [[nodiscard]] double max_abs() const;
  [[nodiscard]] bool finite() const;

  friend Mat2C operator*(const Mat2C& x, const Mat2C& y);
  friend Mat2C operator+(const Mat2C& x, const Mat2C& y);
  friend Mat2C operator-(const Mat2C& x, const Mat2C& y);
  friend Mat2C operator*(Complex s, const Mat2C& x);
};

struct AiryValues {
  Complex ai;
  Complex dai;
};

/// Ai and Ai' for |z| <= 1e3: Maclaurin series in quad precision for
/// |z| <= kAirySwitch, otherwise the large-z expansion, rotated through
/// Ai(z) = -w Ai(w z) - w^2 Ai(w^2 z) when |arg z| > 2 pi / 3.
AiryValues airy_like_functions(Complex z);
inline constexpr double kAirySwitch = 10.0;

struct BesselValues {
  Complex i, di;    // I_alpha, I_alpha'
  Complex k, dk;    // K_alpha, K_alpha'
  Complex h1, dh1;  // Hankel functions of the first kind and derivative
  Complex h2, dh2;  // second kind
};

/// Modified Bessel and Hankel functions for alpha > -1 and |arg z| <= pi/2,
/// z != 0 (principal branches). Series in quad precision for
/// |z| <= kBesselSwitch, large-argument expansions beyond.
BesselValues bessel_like_functions(double alpha, Complex z);
inline constexpr double kBesselSwitch = 16.0;

/// J_alpha(z) by its power series (|z| <= kBesselSwitch); test oracle.
Complex bessel_j_series(double alpha, Complex z);

/// Sectors cut out by the model-problem contours.
enum class Sector {
  AiryI,     // 0 < arg < 2pi/3
  AiryII,    // 2pi/3 < arg < pi
  AiryIII,   // -pi < arg < -2pi/3
  AiryIV,    // -2pi/3 < arg < 0
  BesselRight,  // |arg| < 2pi/3
  BesselUpper,  // 2pi/3 < arg < pi
  BesselLower,  // -pi < arg < -2pi/3
};
std::string to_string(Sector s);

/// A point together with the sector formula used to evaluate there. The
/// point may lie on the closure of the sector; on the negative axis the
/// sector decides the side (BesselLower/AiryIII read arg = -pi).
struct SectorPoint {
  Complex zeta;
  Sector sector;
};

/// Sector containing a point off the contour; throws DomainError on it.
Sector airy_sector_of(Complex zeta);
Sector bessel_sector_of(Complex zeta);

/// Airy model solution; DomainError when the point is not in the closed sector.
Mat2C eval_airy_parametrix(const SectorPoint& p);
/// Bessel model solution for alpha > -1.
Mat2C eval_bessel_parametrix(double alpha, const SectorPoint& p);

/// N = (1/sqrt2) [[1, i], [i, 1]].
Mat2C normalisation_n();
/// A_1 and B_1 of the large-zeta expansions.
Mat2C airy_a1();
Mat2C bessel_b1(double alpha);

/// |N^{-1} zeta^{s3/4} P e^{(2/3) zeta^{3/2} s3} - I - A_1 zeta^{-3/2}|_max
/// at a point off the contour.
double airy_remainder(Complex zeta);
/// |N^{-1} (2 pi zeta^{1/2})^{s3/2} P e^{-2 zeta^{1/2} s3} - I - B_1 zeta^{-1/2}|_max.
double bessel_remainder(double alpha, Complex zeta);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct CheckRow {
  std::string check;
  std::string location;
  double residual = 0;
  bool pass = false;
};

/// Jump relations on every ray at the given radii, relative to the size of
/// P_+. Limits are evaluated on the ray itself from each sector formula.
std::vector<CheckRow> airy_jump_checks(const std::vector<double>& radii, double tol = 1e-8);
std::vector<CheckRow> bessel_jump_checks(double alpha, const std::vector<double>& radii, double tol = 1e-8);

/// |det P - 1| at the given points (sector chosen automatically).
std::vector<CheckRow> airy_det_checks(const std::vector<Complex>& points, double tol = 1e-9);
std::vector<CheckRow> bessel_det_checks(double alpha, const std::vector<Complex>& points, double tol = 1e-9);

/// Slope of the remainder along rays, radii log-spaced in [r_lo, r_hi];
/// pass when within `slack` of -3 (Airy) or -1 (Bessel).
std::vector<CheckRow> airy_remainder_checks(const std::vector<double>& args, double r_lo, double r_hi,
                                            double slack = 0.25);
std::vector<CheckRow> bessel_remainder_checks(double alpha, const std::vector<double>& args, double r_lo,
                                              double r_hi, double slack = 0.25);

/// Growth of each entry as zeta -> 0 along one ray per sector.
struct OriginRow {
  Sector sector;
  int row = 0;
  int col = 0;
  double fitted = 0;    // power of |zeta|, or power of |log zeta| when log_type
  double envelope = 0;  // the displayed bound
  bool log_type = false;
};

struct OriginReport {
  double alpha = 0;
  bool airy = false;
  std::vector<OriginRow> rows;
  /// Every entry is within the envelope (fitted >= envelope - tol for
  /// powers, fitted <= 1 + tol for logs) and each column attains it to tol.
  bool contract_ok = false;
};

OriginReport check_origin_behaviour(double alpha, double tol = 0.05);
OriginReport check_origin_behaviour_airy(double tol = 0.05);

/// One row per entry (residual = distance of the fit from its envelope,
/// pass = within the envelope) plus a summary row for the column contract.
std::vector<CheckRow> origin_check_rows(const OriginReport& rep, double tol = 0.05);

/// Full battery used by the command line and the acceptance run: jumps at
/// radii 0.5, 2, 6 on every ray, det at points in every sector, remainder
/// slopes on four rays, origin exponents.
std::vector<CheckRow> rh_check_airy();
std::vector<CheckRow> rh_check_bessel(double alpha);

}  // namespace fhlab
