#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fhlab/errors.hpp"
#include "fhlab/rhmodels.hpp"

using namespace fhlab;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

bool all_pass(const std::vector<CheckRow>& rows) {
  for (const auto& r : rows) {
    if (!r.pass) {
      MESSAGE(r.check << " " << r.location << " residual " << r.residual);
      return false;
    }
  }
  return !rows.empty();
}

}  // namespace

TEST_CASE("Airy values on both sides of the series/expansion switch") {
  // Reference values from mpmath at 30 digits.
  CHECK(rel(airy_like_functions(1.0).ai, 0.1352924163128814) < 1e-14);
  CHECK(rel(airy_like_functions(1.0).dai, -0.1591474412967932) < 1e-14);
  CHECK(rel(airy_like_functions(-10.0).ai, 0.04024123848644319) < 1e-12);
  CHECK(rel(airy_like_functions({-8.0, 9.0}).ai, {3976919711.881536, 52650408866.17202}) < 1e-13);
  CHECK(rel(airy_like_functions({-8.0, 9.0}).dai, {160245310583.0612, -86631051857.13012}) < 1e-13);
}

TEST_CASE("Airy connection formula across the plane") {
  const Complex w = std::polar(1.0, 2 * kPi / 3);
  for (double r : {0.7, 4.0, 9.9, 10.1, 25.0}) {
    for (double a : {0.1, 1.3, 2.5, -2.9, -0.8}) {
      Complex z = std::polar(r, a);
      Complex s = airy_like_functions(z).ai + w * airy_like_functions(w * z).ai + w * w * airy_like_functions(w * w * z).ai;
      double scale = std::max({std::abs(airy_like_functions(z).ai), std::abs(airy_like_functions(w * z).ai),
                               std::abs(airy_like_functions(w * w * z).ai)});
      CHECK(std::abs(s) / scale < 1e-12);
    }
  }
  CHECK_THROWS_AS(airy_like_functions(2e3), DomainError);
}

TEST_CASE("Bessel values, Wronskian and the Hankel sum") {
  BesselValues b = bessel_like_functions(0.6, {3.0, -17.0});
  CHECK(rel(b.i, {-1.594617040909561, 1.088656037356258}) < 1e-13);
  CHECK(rel(b.k, {0.006160769970150866, -0.01370706795995151}) < 1e-13);
  CHECK(rel(b.h1, {-1800460.419725074, 4258750.376148245}) < 1e-13);
  BesselValues c = bessel_like_functions(2.0, {0.3, 2.0});
  CHECK(rel(c.k, {-0.8459284345535698, 0.3276256960948433}) < 1e-13);
  CHECK(rel(c.dk, {0.4712019756699852, -0.6903251630356262}) < 1e-13);

  for (double alpha : {-0.4, 0.0, 0.6, 1.0}) {
    for (Complex z : {Complex(0.4, 0.1), Complex(3.0, 2.0), Complex(15.0, -1.0), Complex(20.0, 5.0)}) {
      BesselValues v = bessel_like_functions(alpha, z);
      // I K' - I' K = -1/z
      CHECK(std::abs((v.i * v.dk - v.di * v.k) * z + 1.0) < 1e-12);
      if (std::abs(z) <= kBesselSwitch) CHECK(rel(v.h1 + v.h2, 2.0 * bessel_j_series(alpha, z)) < 1e-12);
      // H1 H2' - H1' H2 = -4i / (pi z)
      CHECK(rel(v.h1 * v.dh2 - v.dh1 * v.h2, Complex(0, -4) / (kPi * z)) < 1e-11);
    }
  }
  CHECK_THROWS_AS(bessel_like_functions(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(bessel_like_functions(0.5, 0.0), DomainError);
  CHECK_THROWS_AS(bessel_like_functions(0.5, {-1.0, 0.5}), DomainError);
}

TEST_CASE("sector classification and mismatch") {
  CHECK(airy_sector_of({1.0, 1.0}) == Sector::AiryI);
  CHECK(airy_sector_of({-1.0, 0.1}) == Sector::AiryII);
  CHECK(airy_sector_of({-1.0, -0.1}) == Sector::AiryIII);
  CHECK(airy_sector_of({1.0, -1.0}) == Sector::AiryIV);
  CHECK(bessel_sector_of({-1.0, 2.0}) == Sector::BesselRight);
  CHECK(bessel_sector_of({-1.0, 1.0}) == Sector::BesselUpper);
  CHECK(bessel_sector_of({-1.0, 0.1}) == Sector::BesselUpper);
  CHECK_THROWS_AS(airy_sector_of(2.0), DomainError);
  CHECK_THROWS_AS(bessel_sector_of(-2.0), DomainError);
  CHECK_THROWS_AS(eval_airy_parametrix({{1.0, 1.0}, Sector::AiryIII}), DomainError);
  CHECK_THROWS_AS(eval_airy_parametrix({{1.0, 1.0}, Sector::BesselRight}), DomainError);
  CHECK_THROWS_AS(eval_bessel_parametrix(0.5, {{-1.0, 0.1}, Sector::BesselRight}), DomainError);
  CHECK_THROWS_AS(eval_bessel_parametrix(0.5, {0.0, Sector::BesselRight}), DomainError);
}

TEST_CASE("jump relations hold on every ray") {
  CHECK(all_pass(airy_jump_checks({0.5, 2.0, 6.0, 12.0})));
  for (double alpha : {-0.4, 0.0, 0.6, 1.0, 2.5}) CHECK(all_pass(bessel_jump_checks(alpha, {0.5, 2.0, 8.0, 30.0})));
}

TEST_CASE("unit determinant") {
  std::vector<Complex> pts{{1, 1}, {-3, 1}, {-3, -1}, {2, -5}, {11, 4}, {-0.2, 0.05}};
  CHECK(all_pass(airy_det_checks(pts)));
  for (double alpha : {-0.4, 0.0, 0.6}) {
    std::vector<Complex> bp = pts;
    bp.push_back({40.0, 4.0});
    CHECK(all_pass(bessel_det_checks(alpha, bp)));
  }
}

TEST_CASE("large-zeta remainders decay at the predicted rate") {
  CHECK(all_pass(airy_remainder_checks({kPi / 3, -kPi / 3, 5 * kPi / 6, -5 * kPi / 6}, 12, 48, 0.05)));
  for (double alpha : {-0.4, 0.0, 0.6}) {
    CHECK(all_pass(bessel_remainder_checks(alpha, {0.5, -1.2, 2.6, -2.6}, 25, 400, 0.05)));
  }
  // Without the first correction the Bessel remainder only decays like zeta^{-1/2}.
  double r1 = bessel_remainder(0.6, 100.0) + std::abs(std::pow(100.0, -0.5)) * bessel_b1(0.6).max_abs();
  CHECK(r1 > 10 * bessel_remainder(0.6, 100.0));
}

TEST_CASE("behaviour at the origin") {
  for (double alpha : {-0.4, 0.0, 0.6}) {
    OriginReport rep = check_origin_behaviour(alpha);
    CHECK_MESSAGE(rep.contract_ok, "alpha " << alpha);
    CHECK(rep.rows.size() == 12);
  }
  OriginReport a = check_origin_behaviour_airy();
  CHECK(a.contract_ok);
  // alpha = 0.6: first column grows like zeta^{0.3} in the right sector.
  OriginReport r = check_origin_behaviour(0.6);
  CHECK(std::abs(r.rows[0].fitted - 0.3) < 0.01);
  CHECK(std::abs(r.rows[1].fitted + 0.3) < 0.01);
}

TEST_CASE("bundled checks") {
  CHECK(all_pass(rh_check_airy()));
  for (double alpha : {-0.4, 0.0, 0.6}) CHECK(all_pass(rh_check_bessel(alpha)));
}
