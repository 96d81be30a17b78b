#pragma once

#include <vector>

#include "fhlab/big_real.hpp"

namespace fhlab {

/// Seed solution of phi'' - 2 eps z phi' + 2 eps nu phi = 0,
///   eps =  1: phi = {c1 U(-nu-1/2, sqrt2 z) + c2 U(-nu-1/2, -sqrt2 z)} e^{z^2/2},
///   eps = -1: phi = {c1 U(nu+1/2, sqrt2 z) + c2 U(nu+1/2, -sqrt2 z)} e^{-z^2/2}.
/// Only non-integer nu is supported.
struct SeedFunction {
  BigReal nu;
  int eps = -1;
  BigReal c1;
  BigReal c2;

  /// c1 = 1, c2 = s. Throws DomainError for integer nu or eps not +-1.
  SeedFunction(BigReal nu, int eps, BigReal s);
};

/// U(a, z) for any real a, shifting a upwards with
/// U(a-1, z) = z U(a, z) + (a + 1/2) U(a+1, z) when a <= -1/2.
BigReal pcf_u_any(const PrecContext& ctx, const BigReal& a, const BigReal& z);

/// phi^{(0..k_max)}(z). phi and phi' come from U and
/// U'(a, z) = -(z/2) U(a, z) - (a + 1/2) U(a+1, z); higher derivatives from
/// phi^{(k+2)} = 2 eps z phi^{(k+1)} + 2 eps (k - nu) phi^{(k)}.
std::vector<BigReal> phi_and_derivatives(const PrecContext& ctx, const SeedFunction& seed, const BigReal& z,
                                         int k_max);

/// phi'' computed from Weber's equation U'' = (z^2/4 + a) U rather than
/// from the differential equation of phi.
BigReal phi_second_direct(const PrecContext& ctx, const SeedFunction& seed, const BigReal& z);

/// |phi'' - 2 eps z phi' + 2 eps nu phi| with phi'' from phi_second_direct.
BigReal ode_residual(const PrecContext& ctx, const SeedFunction& seed, const BigReal& z);

/// Determinant of a square matrix by LU with full pivoting. Throws
/// NumericError when a pivot is exactly zero.
BigReal det_full_pivot(std::vector<std::vector<BigReal>> m);

/// tau_n = det(phi^{(i+j)}(z))_{i,j<n}; tau_0 = 1.
BigReal tau_wronskian(const PrecContext& ctx, const SeedFunction& seed, const BigReal& z, int n);

struct TauBridge {
  BigReal hankel;        // H_n(v, s, alpha) from the moment pipeline
  BigReal minus_branch;  // Gamma(1+a)^n 2^{-n^2-n(a-1)/2} tau_{n,a}(v, -1)
  BigReal plus_branch;   // e^{-n v^2} (same prefactor) tau_{n,-a-1}(v, 1)
  BigReal minus_residual;  // |minus_branch - hankel| / hankel
  BigReal plus_residual;   // |plus_branch - hankel| / hankel
  BigReal residual;        // max of the two
};

/// Both seed representations of H_n against the Hankel pipeline. alpha must
/// not be an integer.
///
/// Only the plus branch is an identity for every n. With
/// phi_a(v; -1) = e^{-v^2} psi, psi = phi_{-a-1}(v; 1), the Gaussian factor
/// does not come out of the Hankel-of-derivatives determinant; already
/// tau_2[e^{-v^2} psi] = e^{-2v^2} (tau_2[psi] - 2 psi^2). The minus branch
/// therefore agrees with H_n for n <= 1 only, and `residual` reflects that.
TauBridge tau_hankel_bridge(const PrecContext& ctx, const BigReal& v, const BigReal& s, const BigReal& alpha, int n);
BigReal check_tau_hankel(const PrecContext& ctx, const BigReal& v, const BigReal& s, const BigReal& alpha, int n);

/// Riccati residual |q' - eps q^2 - 2 eps z q - 2 nu| with q = -eps phi'/phi.
/// Throws DomainError at a zero of phi.
BigReal riccati_residual(const PrecContext& ctx, const SeedFunction& seed, const BigReal& z);

/// Parameters of the fourth Painleve equation attached to a seed:
/// A = -eps (1 + nu) and the two admissible B values -2(2n+1+eps A)^2, -2n^2.
struct PivParameters {
  BigReal a;
  BigReal b_first;
  BigReal b_second;
};
PivParameters piv_parameters(int n, int eps, const BigReal& nu);

}  // namespace fhlab
