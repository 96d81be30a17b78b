#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fhlab/big_real.hpp"

namespace fhlab {

/// Gaussian weight with a root and jump singularity at v:
///   w(x) = e^{-x^2} |x - v|^alpha * (s if x < v else 1).
struct FHWeight {
  BigReal v;
  BigReal s;
  BigReal alpha;

  /// Validates s in [0, 1] and alpha > -1.
  FHWeight(BigReal v, BigReal s, BigReal alpha);
  [[nodiscard]] mpfr_prec_t prec() const;
};

/// Scaled parameters: v = sqrt(2n) t, s = e^{-lambda n}. An empty lambda
/// means lambda = +inf (s = 0).
struct ScaledParams {
  BigReal t;
  std::optional<BigReal> lambda;
  int n = 1;

  [[nodiscard]] FHWeight to_weight(const BigReal& alpha) const;
  static ScaledParams from_weight(const FHWeight& w, int n);
};

enum class MomentMethod { Recurrence, Quadrature };
std::string to_string(MomentMethod m);

struct MomentTable {
  FHWeight weight;
  int k_max = 0;
  std::vector<BigReal> mu;
  /// int |x|^k w(x) dx, the natural scale for the absolute error of mu[k].
  std::vector<BigReal> scale;
  /// Absolute error bound per entry.
  std::vector<BigReal> err;
  MomentMethod method = MomentMethod::Recurrence;
  /// max_k err[k] / scale[k].
  BigReal err_bound;
};

/// w(x); at x = v the right limit is used (0 for alpha > 0, e^{-v^2} for
/// alpha = 0). Throws DomainError at x = v when alpha < 0.
BigReal eval_weight(const FHWeight& w, const BigReal& x);

/// I_j(c) = int_0^inf u^{alpha+j} e^{-u^2 - c u} du for j = 0..j_max.
std::vector<BigReal> base_integrals(const PrecContext& ctx, const BigReal& alpha, const BigReal& c, int j_max);

/// Moments mu_0..mu_kmax from the split x = v +- u. Cross-checked against
/// moments_oracle at k in {0, k_max/2, k_max}; throws InstabilityError when
/// the two disagree.
MomentTable moments(const PrecContext& ctx, const FHWeight& w, int k_max);
/// Same without the oracle cross-check.
MomentTable moments_unchecked(const PrecContext& ctx, const FHWeight& w, int k_max);

/// Direct quadrature of int x^k w(x) dx on both sides of v.
MomentTable moments_oracle(const PrecContext& ctx, const FHWeight& w, int k_max);
/// Oracle for selected indices only; entries not requested are left zero.
MomentTable moments_oracle_at(const PrecContext& ctx, const FHWeight& w, const std::vector<int>& ks);

}  // namespace fhlab
