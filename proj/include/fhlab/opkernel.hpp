#pragma once

#include <functional>
#include <vector>

#include "fhlab/big_real.hpp"
#include "fhlab/weight.hpp"

namespace fhlab {

/// Monic orthogonal polynomial data of a weight up to degree n.
///
/// h holds h_0..h_n (h_n is kept for the kernel prefactor), beta holds
/// beta_0..beta_{n-1}, gamma_sq holds gamma_1^2..gamma_n^2 and sigma holds
/// sigma_0..sigma_n. log_det = sum_{j<n} log h_j = log H_n.
struct OPSystem {
  int n = 0;
  std::vector<BigReal> h;
  std::vector<BigReal> beta;
  std::vector<BigReal> gamma_sq;
  std::vector<BigReal> sigma;
  BigReal log_det;
  int prec_bits = 0;
};

/// LDL^T factorisation of the (n+1)x(n+1) Hankel matrix of m. Requires
/// m.k_max >= 2n. Throws NumericError on a non-positive pivot.
OPSystem op_system(const PrecContext& ctx, const MomentTable& m, int n);

/// Builds the weight at a requested binary precision.
using WeightFactory = std::function<FHWeight(mpfr_prec_t)>;

struct HankelRun {
  OPSystem sys;
  MomentTable moments;
  PrecContext ctx;
};

/// Moments plus op_system with the adaptive precision rule: start at
/// max(min_bits, 24 n), accept when runs at p and 2p agree to 2^{-p/2} in
/// log H_n and sigma_n, otherwise double p (at most `retries` times). The
/// returned run is the one at 2p. Non-positive pivots also trigger a retry.
HankelRun hankel_adaptive(const WeightFactory& make, int n, int min_bits = 256, int retries = 3);

/// Single run at a fixed context (no retry ladder).
HankelRun hankel_fixed(const PrecContext& ctx, const FHWeight& w, int n);

/// log H_n(0, 1, 0) = -(n^2/2) log 2 + (n/2) log 2pi + sum_{j=1}^{n-1} log j!.
BigReal gue_logdet_exact(const PrecContext& ctx, int n);

/// Orthonormal p_n, p_n', p_{n-1}, p_{n-1}' at x.
struct PPair {
  BigReal pn;
  BigReal dpn;
  BigReal pn1;
  BigReal dpn1;
};
PPair eval_p_pair(const PrecContext& ctx, const OPSystem& sys, const MomentTable& m, const BigReal& x);

/// Monic pi_0..pi_n at x.
std::vector<BigReal> eval_monic(const OPSystem& sys, const BigReal& x);

/// Diagonal Christoffel-Darboux kernel K_n(x, x).
BigReal cd_kernel(const PrecContext& ctx, const OPSystem& sys, const MomentTable& m, const FHWeight& w,
                  const BigReal& x);

/// int_{-inf}^{upper} K_n(x, x) dx; upper may be +-inf.
BigReal expected_count(const PrecContext& ctx, const OPSystem& sys, const MomentTable& m, const FHWeight& w,
                       const BigReal& upper);

/// |central difference of log H_n in v - 2 sigma_n(v)|, for s = 0.
BigReal check_dv_identity(const PrecContext& ctx, const FHWeight& w, int n, const BigReal& step);

/// |s * central difference of log H_n in s - int_{-inf}^v K_n(x,x) dx|, for s in (0, 1).
BigReal check_ds_identity(const PrecContext& ctx, const FHWeight& w, int n, const BigReal& step);

/// Step with step^2 ~ 2^{-work_bits/3}.
BigReal default_fd_step(const PrecContext& ctx);

}  // namespace fhlab
