#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fhlab/big_real.hpp"

namespace fhlab {

/// The closed-form large-n expansions that can be checked against the
/// Hankel pipeline.
enum class Expansion {
  HardEdge,         // log H_n(sqrt(2n) t, 0, a) / H_n(0, 0, a)
  RootSingularity,  // log H_n(sqrt(2n) t, 1, a) / H_n(0, 1, 0)
  GapAtZero,        // log H_n(0, 0, a) / H_n(0, 1, a)
  Thinned,          // log H_n(sqrt(2n) t, s, a) / H_n(sqrt(2n) t, 1, a), constant omitted
  GapProbability,   // log P(x_min >= sqrt(2n) t)
};
std::string to_string(Expansion e);

/// c_n2 n^2 + c_nlogn n log n + c_n n + c_logn log n + c_const.
struct ExpansionCoeffs {
  Expansion which = Expansion::HardEdge;
  BigReal c_n2;
  BigReal c_nlogn;
  BigReal c_n;
  BigReal c_logn;
  std::optional<BigReal> c_const;  // absent when not computed
  std::string error_order;

  /// Truncated expansion at n; a missing constant counts as zero.
  [[nodiscard]] BigReal evaluate(long n) const;
};

struct CCoeffs {
  BigReal c1;
  BigReal c2;
  BigReal c3;
};
/// Coefficients of the hard-edge expansion; t > -1.
CCoeffs c_coeffs(const PrecContext& ctx, const BigReal& t, const BigReal& alpha);

/// t-derivatives of the same coefficients in closed form.
struct UCoeffs {
  BigReal u1;
  BigReal u2;
  BigReal u3;
};
UCoeffs u_coeffs(const PrecContext& ctx, const BigReal& t, const BigReal& alpha);

/// Constant term c_0 of the gap-at-zero expansion.
BigReal c0_constant(const PrecContext& ctx, const BigReal& alpha);

/// Coefficients of one expansion. `s` is used only by Thinned, where it must
/// lie in (0, 1]; t must lie in (-1, 1) except for HardEdge (t > -1).
ExpansionCoeffs expansion(const PrecContext& ctx, Expansion which, const BigReal& t, const BigReal& alpha,
                          const std::optional<BigReal>& s = {});

/// Truncated expansion value at n.
BigReal reference_log_ratio(const PrecContext& ctx, Expansion which, long n, const BigReal& t, const BigReal& alpha,
                            const std::optional<BigReal>& s = {});

/// Truncated expansion of log P(x_min >= sqrt(2n) t).
BigReal prob_xmin_asymptotic(const PrecContext& ctx, long n, const BigReal& t, const BigReal& alpha);

/// (n^2/2) log(n/2) - 3n^2/4 + n log(2 pi) - (log n)/12 + zeta'(-1).
BigReal gue_asymptotic(const PrecContext& ctx, long n);

/// Jump parameter of the scaled weight: s = 0, s = 1, s = e^{-lambda n} or
/// a fixed s.
struct JumpSpec {
  enum class Kind { Zero, One, Exponential, Fixed };
  Kind kind = Kind::One;
  BigReal value;  // lambda for Exponential, s for Fixed

  static JumpSpec zero() { return {Kind::Zero, BigReal()}; }
  static JumpSpec one() { return {Kind::One, BigReal()}; }
  static JumpSpec exponential(const BigReal& lambda) { return {Kind::Exponential, lambda}; }
  static JumpSpec fixed(const BigReal& s) { return {Kind::Fixed, s}; }
};

struct LogHankel {
  BigReal value;
  int prec_bits = 0;
};

/// log H_n(sqrt(2n) t, s, alpha) from moments and the LDL^T factorisation
/// with adaptive precision. t, lambda and alpha are rounded to each run's
/// precision, so pass them at least as precise as the answer is needed.
LogHankel log_hankel(int n, const BigReal& t, const JumpSpec& s, const BigReal& alpha, int min_bits = 256);

struct ResidualRow {
  long n = 0;
  BigReal lhs;
  BigReal prediction;
  BigReal residual;
  BigReal scaled_residual;
};

struct ResidualTable {
  std::string name;
  std::vector<ResidualRow> rows;  // sorted by n
  BigReal t;
  BigReal alpha;
  std::optional<BigReal> lambda;
  int prec_bits = 0;
  std::string scaling;  // how scaled_residual is formed
  bool contract_ok = false;
  std::string contract;  // the condition that was checked
};

/// Ratios |r_{2n}| / |r_n| for each pair in the table with doubled n.
std::vector<double> doubling_ratios(const ResidualTable& table);

/// Hard-edge expansion against the pipeline. scaled = n * residual;
/// contract: doubling ratios in [0.25, 0.9] and the largest |n r_n| at most
/// four times the smallest.
ResidualTable verify_thm1(const PrecContext& ctx, const BigReal& t, const BigReal& alpha, const std::vector<int>& ns);

/// lambda >= lambda_c(t): d_n = |log H_n(., e^{-lambda n}, .) - log H_n(., 0, .)|,
/// scaled = d_n sqrt(n) e^{n (lambda - lambda_c)}; contract: scaled values
/// stay within a factor 4 of the first one. An empty lambda means +inf.
ResidualTable verify_thm2_supercritical(const PrecContext& ctx, const BigReal& t, const std::optional<BigReal>& lambda,
                                        const BigReal& alpha, const std::vector<int>& ns);

/// 0 < lambda < lambda_c(t): r_n = n^-2 log(H_n(., e^{-lambda n}, .) / H_n(., 1, .))
/// + int_0^lambda Omega; contract: |r_n| strictly decreasing.
ResidualTable verify_thm2_subcritical(const PrecContext& ctx, const BigReal& t, const BigReal& lambda,
                                      const BigReal& alpha, const std::vector<int>& ns);

/// Gap at zero with its constant. scaled = n * residual; contract as in verify_thm1.
ResidualTable verify_gap_at_zero(const PrecContext& ctx, const BigReal& alpha, const std::vector<int>& ns);

/// log H_n(0, 1, 0) from the pipeline against the exact finite-n value
/// (residual relative to |exact|; contract: below 2^{-prec/2}).
ResidualTable verify_gue_exact(const std::vector<int>& ns);

/// Exact log H_n(0, 1, 0) minus gue_asymptotic; scaled = n * residual,
/// contract as in verify_thm1.
ResidualTable verify_gue_asymptotic(const PrecContext& ctx, const std::vector<int>& ns);

/// Thinned expansion without its constant: the n-linear and log n
/// coefficients are compared through first differences in n, which remove
/// the constant. Row n holds L(n+1) - L(n) against the predicted increment;
/// scaled = n * residual; contract: |residual| strictly decreasing.
ResidualTable verify_thinned_slope(const PrecContext& ctx, const BigReal& t, const BigReal& s, const BigReal& alpha,
                                   const std::vector<int>& ns);

/// log P(x_min >= sqrt(2n) t) = log(H_n(., 0, .) / H_n(., 1, .)) against
/// prob_xmin_asymptotic; scaled = n * residual; contract: |residual|
/// strictly decreasing (the remainder is O(log n / n)).
ResidualTable verify_gap_probability(const PrecContext& ctx, const BigReal& t, const BigReal& alpha,
                                     const std::vector<int>& ns);

}  // namespace fhlab
