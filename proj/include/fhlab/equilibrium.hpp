#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fhlab/big_real.hpp"

namespace fhlab {

enum class Regime { OneCut, TwoCut, Semicircle };
std::string to_string(Regime r);

/// Equilibrium measure for V(x) = 2x^2 + lambda 1_{x<t}.
///
/// The density is always written with three roots a <= b <= c:
///   OneCut:     a = b = b_bar, c = c_bar, support [t, c_bar]
///   TwoCut:     support [a, b] u [t, c]
///   Semicircle: a = -1, b = t, c = 1, support [-1, 1]
/// so that the tail form of the Euler-Lagrange constant applies uniformly.
struct EquilibriumData {
  Regime regime = Regime::Semicircle;
  BigReal t;
  BigReal lambda;
  BigReal a;
  BigReal b;
  BigReal c;
  BigReal b_bar;
  BigReal c_bar;
  BigReal ell;
  /// Mass on (a, b) for TwoCut, 0 for OneCut, left mass on [-1, t] for Semicircle.
  BigReal omega;

  /// Support intervals in increasing order.
  [[nodiscard]] std::vector<std::pair<BigReal, BigReal>> support() const;
  /// rho(x) for x strictly inside the support; throws DomainError otherwise.
  [[nodiscard]] BigReal density(const BigReal& x) const;
};

/// b_bar(t), c_bar(t).
std::pair<BigReal, BigReal> one_cut_endpoints(const PrecContext& ctx, const BigReal& t);

/// One-cut measure (lambda >= lambda_c(t)); lambda defaults to lambda_c(t).
EquilibriumData one_cut(const PrecContext& ctx, const BigReal& t, const std::optional<BigReal>& lambda = {});

/// Semicircle law (lambda = 0) with omega = left mass on [-1, t].
EquilibriumData semicircle(const PrecContext& ctx, const BigReal& t);

/// Closed form of lambda_c(t), cross-checked against the integral form.
BigReal lambda_crit(const PrecContext& ctx, const BigReal& t);
BigReal lambda_crit_closed(const PrecContext& ctx, const BigReal& t);
BigReal lambda_crit_integral(const PrecContext& ctx, const BigReal& t);

/// a(b), c(b) from t = a + b + c and 2 = a^2 + b^2 + c^2 - t^2.
std::pair<BigReal, BigReal> outer_endpoints(const BigReal& t, const BigReal& b);

/// lambda(b) = 4 int_b^t sqrt(c-x)/sqrt(t-x) sqrt(x-b) sqrt(x-a) dx.
BigReal lambda_of_b(const PrecContext& ctx, const BigReal& t, const BigReal& b);

/// Endpoints (a, b, c) for 0 < lambda < lambda_c(t), t in (-1, 1).
struct TwoCutEndpoints {
  BigReal a;
  BigReal b;
  BigReal c;
};
TwoCutEndpoints solve_two_cut_endpoints(const PrecContext& ctx, const BigReal& t, const BigReal& lambda);

/// Full two-cut solve: endpoints, ell (tail form), omega.
EquilibriumData two_cut(const PrecContext& ctx, const BigReal& t, const BigReal& lambda);

/// Dispatches on lambda: 0 -> Semicircle, >= lambda_c -> OneCut, else TwoCut.
EquilibriumData equilibrium(const PrecContext& ctx, const BigReal& t, const BigReal& lambda);

/// Residuals of the three defining equations of the two-cut endpoints.
struct EndpointResiduals {
  BigReal sum;
  BigReal squares;
  BigReal lambda;
};
EndpointResiduals endpoint_residuals(const PrecContext& ctx, const EquilibriumData& eq);

/// int_a^b rho (TwoCut) or the semicircle left mass.
BigReal omega_mass(const PrecContext& ctx, const EquilibriumData& eq);
/// int_S rho.
BigReal total_mass(const PrecContext& ctx, const EquilibriumData& eq);
/// int_S 2 x^2 rho.
BigReal second_moment_term(const PrecContext& ctx, const EquilibriumData& eq);
/// ell = -2 log|c| + 2c^2 + int_c^inf (4x - 2/x - 4 sqrt(x-c) sqrt(x-b) sqrt(x-a) / sqrt(x-t)) dx.
BigReal ell_tail_form(const PrecContext& ctx, const EquilibriumData& eq);
/// ell = -2 int_S log|x - t| rho + 2 t^2.
BigReal ell_log_form(const PrecContext& ctx, const EquilibriumData& eq);
/// Closed form of ell for the one-cut regime.
BigReal ell_one_cut_closed(const PrecContext& ctx, const BigReal& t);

/// F = ell + int_S 2 x^2 rho by quadrature; Semicircle returns 3/2 + 2 log 2.
BigReal capital_f(const PrecContext& ctx, const EquilibriumData& eq);
/// Closed form of F(t, lambda_c(t)).
BigReal capital_f_one_cut_closed(const PrecContext& ctx, const BigReal& t);

/// int_0^{upper} Omega(t, lambda) d lambda by Gauss-Legendre in theta with
/// lambda = upper sin^2(theta). The rule size doubles from grid_size until
/// two successive values agree to `tol` (or 8 doublings).
struct OmegaIntegral {
  BigReal value;
  BigReal change;  // |difference| between the last two rule sizes
  int nodes = 0;
};
OmegaIntegral omega_integral(const PrecContext& ctx, const BigReal& t, const BigReal& upper, int grid_size,
                             double tol = 1e-10);

/// Signed value -int_0^{lambda_c} Omega d lambda.
OmegaIntegral omega_lambda_integral(const PrecContext& ctx, const BigReal& t, int grid_size, double tol = 1e-10);

/// r(x) = 2 int_S log|x - y| rho(y) dy - V(x) + ell.
BigReal check_variational(const PrecContext& ctx, const EquilibriumData& eq, const BigReal& x);

/// Omega - [d ell + d int 2x^2 rho + lambda d Omega] with central differences of step h in lambda.
BigReal omega_relation_residual(const PrecContext& ctx, const BigReal& t, const BigReal& lambda, const BigReal& h);

/// Omega - d/d lambda of lambda^2 [F(lambda_c)/(2 lambda_c^2) + int_lambda^{lambda_c} F(u) u^{-3} du].
BigReal omega_derivative_residual(const PrecContext& ctx, const BigReal& t, const BigReal& lambda, int grid_size);

}  // namespace fhlab
