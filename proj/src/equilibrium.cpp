#include "fhlab/equilibrium.hpp"

#include <cmath>
#include <functional>

#include "fhlab/quadrature.hpp"
#include "fhlab/roots.hpp"

namespace fhlab {

std::string to_string(Regime r) {
  switch (r) {
    case Regime::OneCut:
      return "one_cut";
    case Regime::TwoCut:
      return "two_cut";
    case Regime::Semicircle:
      return "semicircle";
  }
  return "unknown";
}

namespace {

BigReal two_over_pi(mpfr_prec_t p) { return 2L / const_pi(p); }

BigReal default_rel(const PrecContext& ctx) { return ldexp_one(-ctx.work_bits / 2, ctx.bits()); }

void require_t(const BigReal& t, bool below_one) {
  if (!(t > -1.0)) throw DomainError("equilibrium: t must exceed -1");
  if (below_one && !(t < 1.0)) throw DomainError("equilibrium: t must lie in (-1, 1)");
}

// rho on support piece `piece` from y and the distances d1 = y - e1, d2 = e2 - y
// to the ends of that piece.
BigReal rho_piece(const EquilibriumData& eq, int piece, const BigReal& y, const BigReal& d1, const BigReal& d2) {
  const mpfr_prec_t p = y.prec();
  switch (eq.regime) {
    case Regime::OneCut:
      return two_over_pi(p) * (y - eq.b_bar) * sqrt(d2 / d1);
    case Regime::Semicircle:
      return two_over_pi(p) * sqrt(d1 * d2);
    case Regime::TwoCut:
      if (piece == 0) return two_over_pi(p) * sqrt((eq.c - y) / (eq.t - y)) * sqrt(d1 * d2);
      return two_over_pi(p) * sqrt(d2 / d1) * sqrt((y - eq.b) * (y - eq.a));
  }
  return BigReal(p);
}

// int_S h(y, |y - x|) rho(y) dy. When x lies strictly inside a support piece
// the piece is split there so that |y - x| is an exact endpoint distance.
using WeightedFn = std::function<BigReal(const BigReal& y, const BigReal& dist_x)>;
BigReal integrate_against_rho(const PrecContext& ctx, const EquilibriumData& eq, const std::optional<BigReal>& x,
                              const WeightedFn& h) {
  const BigReal rel = default_rel(ctx);
  BigReal total(ctx.bits());
  auto pieces = eq.support();
  for (int k = 0; k < static_cast<int>(pieces.size()); ++k) {
    const BigReal& e1 = pieces[static_cast<size_t>(k)].first;
    const BigReal& e2 = pieces[static_cast<size_t>(k)].second;
    std::vector<std::pair<BigReal, BigReal>> parts;
    if (x && *x > e1 && *x < e2) {
      parts.emplace_back(e1, *x);
      parts.emplace_back(*x, e2);
    } else {
      parts.emplace_back(e1, e2);
    }
    for (const auto& [lo, hi] : parts) {
      EndpointFn g = [&](const BigReal& y, const BigReal& dl, const BigReal& dr) {
        BigReal d1 = (lo == e1) ? dl : y - e1;
        BigReal d2 = (hi == e2) ? dr : e2 - y;
        BigReal dx(y.prec());
        if (x) dx = (hi == *x) ? dr : (lo == *x) ? dl : abs(y - *x);
        return h(y, dx) * rho_piece(eq, k, y, d1, d2);
      };
      total += quad_tanh_sinh_endpoint(ctx, g, lo, hi, rel).value;
    }
  }
  return total;
}

}  // namespace

std::vector<std::pair<BigReal, BigReal>> EquilibriumData::support() const {
  switch (regime) {
    case Regime::OneCut:
      return {{t, c_bar}};
    case Regime::Semicircle:
      return {{a, c}};
    case Regime::TwoCut:
      return {{a, b}, {t, c}};
  }
  return {};
}

BigReal EquilibriumData::density(const BigReal& x) const {
  auto pieces = support();
  for (int k = 0; k < static_cast<int>(pieces.size()); ++k) {
    const auto& [e1, e2] = pieces[static_cast<size_t>(k)];
    if (x > e1 && x < e2) return rho_piece(*this, k, x, x - e1, e2 - x);
  }
  throw DomainError("density: x is not strictly inside the support");
}

std::pair<BigReal, BigReal> one_cut_endpoints(const PrecContext& ctx, const BigReal& t_in) {
  BigReal t = t_in.to_prec(ctx.bits());
  BigReal r = sqrt(square(t) + 3L);
  return {(t - r) / 3L, (t + 2L * r) / 3L};
}

BigReal lambda_crit_closed(const PrecContext& ctx, const BigReal& t_in) {
  BigReal t = t_in.to_prec(ctx.bits());
  require_t(t, false);
  BigReal r = sqrt(square(t) + 3L);
  BigReal inner = sqrt(square(t) + 3L + 2L * t * r);
  BigReal s3 = sqrt(BigReal(3L, ctx.bits()));
  return 2L * t / s3 * inner + 2L * log(2L + square(t) + t * r + (r + t) / s3 * inner);
}

BigReal lambda_crit_integral(const PrecContext& ctx, const BigReal& t_in) {
  BigReal t = t_in.to_prec(ctx.bits());
  require_t(t, false);
  auto [bb, cb] = one_cut_endpoints(ctx, t);
  RealFn f = [&](const BigReal& x) { return sqrt(cb - x) * (x - bb); };
  return 4L * quad_half_exponents(ctx, f, bb, t, 0, -1).value;
}

BigReal lambda_crit(const PrecContext& ctx, const BigReal& t) {
  BigReal closed = lambda_crit_closed(ctx, t);
  BigReal integral = lambda_crit_integral(ctx, t);
  if (!(abs(closed - integral) < 1e-10)) throw NumericError("lambda_crit: closed and integral forms disagree");
  return closed;
}

BigReal ell_one_cut_closed(const PrecContext& ctx, const BigReal& t_in) {
  BigReal t = t_in.to_prec(ctx.bits());
  BigReal r = sqrt(square(t) + 3L);
  return 1L + 2L * t * (r + 2L * t) / 3L + 2L * log(2L * (t + r));
}

BigReal capital_f_one_cut_closed(const PrecContext& ctx, const BigReal& t_in) {
  BigReal t = t_in.to_prec(ctx.bits());
  BigReal r = sqrt(square(t) + 3L);
  BigReal t2 = square(t);
  return BigReal(1.5, ctx.bits()) + 2L * (4L * t2 / 3L + 5L * t * r / 9L) + 4L * t2 * t / 27L * (r - t) +
         2L * log(2L * (t + r));
}

EquilibriumData one_cut(const PrecContext& ctx, const BigReal& t_in, const std::optional<BigReal>& lambda) {
  const mpfr_prec_t p = ctx.bits();
  BigReal t = t_in.to_prec(p);
  require_t(t, false);
  EquilibriumData eq;
  eq.regime = Regime::OneCut;
  eq.t = t;
  auto [bb, cb] = one_cut_endpoints(ctx, t);
  eq.b_bar = bb;
  eq.c_bar = cb;
  eq.a = bb;
  eq.b = bb;
  eq.c = cb;
  eq.lambda = lambda ? lambda->to_prec(p) : lambda_crit_closed(ctx, t);
  eq.ell = ell_one_cut_closed(ctx, t);
  eq.omega = BigReal(p);
  return eq;
}

EquilibriumData semicircle(const PrecContext& ctx, const BigReal& t_in) {
  const mpfr_prec_t p = ctx.bits();
  BigReal t = t_in.to_prec(p);
  require_t(t, true);
  EquilibriumData eq;
  eq.regime = Regime::Semicircle;
  eq.t = t;
  eq.lambda = BigReal(p);
  eq.a = BigReal(-1L, p);
  eq.b = t;
  eq.c = BigReal(1L, p);
  auto [bb, cb] = one_cut_endpoints(ctx, t);
  eq.b_bar = bb;
  eq.c_bar = cb;
  eq.ell = 1L + log(BigReal(4L, p));
  // int_{-1}^t (2/pi) sqrt(1 - x^2) dx
  eq.omega = (2L * asin(t) + 2L * t * sqrt(1L - square(t)) + const_pi(p)) / (2L * const_pi(p));
  return eq;
}

std::pair<BigReal, BigReal> outer_endpoints(const BigReal& t, const BigReal& b) {
  BigReal disc = sqrt(4L - 3L * square(b) + 2L * t * b + square(t));
  BigReal mid = (t - b) / 2L;
  return {mid - disc / 2L, mid + disc / 2L};
}

BigReal lambda_of_b(const PrecContext& ctx, const BigReal& t_in, const BigReal& b_in) {
  BigReal t = t_in.to_prec(ctx.bits());
  BigReal b = b_in.to_prec(ctx.bits());
  auto [a, c] = outer_endpoints(t, b);
  RealFn f = [&](const BigReal& x) { return sqrt((c - x) * (x - a)); };
  return 4L * quad_half_exponents(ctx, f, b, t, 1, -1).value;
}

TwoCutEndpoints solve_two_cut_endpoints(const PrecContext& ctx, const BigReal& t_in, const BigReal& lambda_in) {
  const mpfr_prec_t p = ctx.bits();
  BigReal t = t_in.to_prec(p);
  BigReal lambda = lambda_in.to_prec(p);
  require_t(t, true);
  BigReal lc = lambda_crit_closed(ctx, t);
  if (!(lambda > 0.0) || !(lambda < lc)) throw DomainError("two_cut: lambda must lie in (0, lambda_c(t))");
  auto [bb, cb] = one_cut_endpoints(ctx, t);
  BigReal nudge = (t - bb) * 1e-12;
  BigReal lo = bb + nudge;
  BigReal hi = t - nudge;
  ScalarFn g = [&](const BigReal& b) { return lambda_of_b(ctx, t, b) - lambda; };
  BigReal tol = min(BigReal::parse("1e-30", p), ldexp(t - bb, -ctx.work_bits / 2));
  BigReal b = bisect_monotone(ctx, g, lo, hi, tol);
  auto [a, c] = outer_endpoints(t, b);
  return {a, b, c};
}

EquilibriumData two_cut(const PrecContext& ctx, const BigReal& t, const BigReal& lambda) {
  TwoCutEndpoints e = solve_two_cut_endpoints(ctx, t, lambda);
  EquilibriumData eq;
  eq.regime = Regime::TwoCut;
  eq.t = t.to_prec(ctx.bits());
  eq.lambda = lambda.to_prec(ctx.bits());
  eq.a = e.a;
  eq.b = e.b;
  eq.c = e.c;
  auto [bb, cb] = one_cut_endpoints(ctx, eq.t);
  eq.b_bar = bb;
  eq.c_bar = cb;
  eq.omega = omega_mass(ctx, eq);
  eq.ell = ell_tail_form(ctx, eq);
  return eq;
}

EquilibriumData equilibrium(const PrecContext& ctx, const BigReal& t, const BigReal& lambda) {
  if (!(lambda >= 0.0)) throw DomainError("equilibrium: lambda must be non-negative");
  if (lambda.is_zero()) return semicircle(ctx, t);
  if (lambda >= lambda_crit_closed(ctx, t)) return one_cut(ctx, t, lambda);
  return two_cut(ctx, t, lambda);
}

EndpointResiduals endpoint_residuals(const PrecContext& ctx, const EquilibriumData& eq) {
  if (eq.regime != Regime::TwoCut) throw DomainError("endpoint_residuals: two-cut data required");
  EndpointResiduals r;
  r.sum = abs(eq.t - (eq.a + eq.b + eq.c));
  r.squares = abs(2L - (square(eq.a) + square(eq.b) + square(eq.c) - square(eq.t)));
  r.lambda = abs(eq.lambda - lambda_of_b(ctx, eq.t, eq.b));
  return r;
}

BigReal omega_mass(const PrecContext& ctx, const EquilibriumData& eq) {
  const mpfr_prec_t p = ctx.bits();
  if (eq.regime == Regime::Semicircle) return semicircle(ctx, eq.t).omega;
  if (eq.regime == Regime::OneCut) return BigReal(p);
  RealFn f = [&](const BigReal& y) { return two_over_pi(p) * sqrt((eq.c - y) / (eq.t - y)); };
  return quad_half_exponents(ctx, f, eq.a, eq.b, 1, 1).value;
}

BigReal total_mass(const PrecContext& ctx, const EquilibriumData& eq) {
  return integrate_against_rho(ctx, eq, std::nullopt, [](const BigReal& y, const BigReal&) { return BigReal(1L, y.prec()); });
}

BigReal second_moment_term(const PrecContext& ctx, const EquilibriumData& eq) {
  return integrate_against_rho(ctx, eq, std::nullopt, [](const BigReal& y, const BigReal&) { return 2L * square(y); });
}

BigReal ell_tail_form(const PrecContext& ctx, const EquilibriumData& eq) {
  const mpfr_prec_t p = ctx.bits();
  const BigReal& a = eq.a;
  const BigReal& b = eq.b;
  const BigReal& c = eq.c;
  const BigReal& t = eq.t;
  // The integrand 4x - 2/x - 4 sqrt((x-a)(x-b)(x-c)/(x-t)) is O(1/x^2) but
  // each term grows like x. With a+b+c = t and ab+bc+ca = -1 (both exact for
  // a, c from outer_endpoints) the leading terms cancel symbolically:
  //   integrand = (2 D / (x^2 (x+t + (x-t) sqrt R)) + 4abc) / (x (x-t) (1 + sqrt R)),
  //   R = (x-a)(x-b)(x-c) / (x^2 (x-t)),  D = 4t x^3 + x^2 - (t - abc) x - t abc.
  // x = c + w/(1-w) maps [0, 1) onto [c, inf).
  BigReal e3 = a * b * c;
  EndpointFn g = [&](const BigReal&, const BigReal& dl, const BigReal& dr) {
    BigReal u = dl / dr;  // x - c
    BigReal x = c + u;
    BigReal xt = x - t;
    BigReal x2 = square(x);
    BigReal root = sqrt(u * (x - b) * (x - a) / (x2 * xt));
    BigReal d = ((4L * t * x + 1L) * x - (t - e3)) * x - t * e3;
    BigReal top = 2L * d / (x2 * (x + t + xt * root)) + 4L * e3;
    BigReal body = top / (x * xt * (1L + root));
    return body / square(dr);
  };
  BigReal tail = quad_tanh_sinh_endpoint(ctx, g, BigReal(p), BigReal(1L, p), default_rel(ctx)).value;
  return -2L * log(abs(c)) + 2L * square(c) + tail;
}

BigReal ell_log_form(const PrecContext& ctx, const EquilibriumData& eq) {
  BigReal integral = integrate_against_rho(ctx, eq, eq.t, [](const BigReal&, const BigReal& d) { return log(d); });
  return -2L * integral + 2L * square(eq.t);
}

BigReal capital_f(const PrecContext& ctx, const EquilibriumData& eq) {
  if (eq.regime == Regime::Semicircle) return BigReal(1.5, ctx.bits()) + 2L * const_log2(ctx.bits());
  return ell_tail_form(ctx, eq) + second_moment_term(ctx, eq);
}

namespace {

BigReal omega_at(const PrecContext& ctx, const BigReal& t, const BigReal& lambda) {
  EquilibriumData eq;
  eq.regime = Regime::TwoCut;
  eq.t = t;
  TwoCutEndpoints e = solve_two_cut_endpoints(ctx, t, lambda);
  eq.a = e.a;
  eq.b = e.b;
  eq.c = e.c;
  return omega_mass(ctx, eq);
}

// int_lo^hi f(u) du with u = lo + (hi - lo) sin^2(theta), Gauss-Legendre in
// theta, doubling the rule until successive values agree to tol.
OmegaIntegral sin2_integral(const PrecContext& ctx, const BigReal& lo, const BigReal& hi,
                            const std::function<BigReal(const BigReal&)>& f, int grid_size, double tol) {
  const mpfr_prec_t p = ctx.bits();
  BigReal width = hi - lo;
  BigReal top = const_pi(p) / 2L;
  auto run = [&](int n) {
    GaussLegendreRule rule = gauss_legendre_rule(p, n);
    RealFn g = [&](const BigReal& theta) {
      BigReal s = sin(theta);
      BigReal cth = cos(theta);
      return f(lo + width * square(s)) * width * 2L * s * cth;
    };
    return apply_gauss_legendre(rule, g, BigReal(p), top);
  };
  int n = std::max(grid_size, 4);
  BigReal prev = run(n);
  int used = n;
  for (int level = 0; level < 8; ++level) {
    n *= 2;
    BigReal cur = run(n);
    used += n;
    BigReal change = abs(cur - prev);
    if (change < tol) return {cur, change, used};
    prev = cur;
  }
  throw NumericError("omega integral: Gauss-Legendre refinement did not reach the tolerance");
}

}  // namespace

OmegaIntegral omega_integral(const PrecContext& ctx, const BigReal& t_in, const BigReal& upper, int grid_size,
                             double tol) {
  BigReal t = t_in.to_prec(ctx.bits());
  require_t(t, true);
  BigReal lc = lambda_crit_closed(ctx, t);
  if (!(upper >= 0.0) || upper > lc) throw DomainError("omega_integral: upper limit must lie in [0, lambda_c]");
  if (upper.is_zero()) return {BigReal(ctx.bits()), BigReal(ctx.bits()), 0};
  auto f = [&](const BigReal& lambda) {
    if (!(lambda < lc)) return BigReal(ctx.bits());
    return omega_at(ctx, t, lambda);
  };
  return sin2_integral(ctx, BigReal(ctx.bits()), upper.to_prec(ctx.bits()), f, grid_size, tol);
}

OmegaIntegral omega_lambda_integral(const PrecContext& ctx, const BigReal& t, int grid_size, double tol) {
  OmegaIntegral r = omega_integral(ctx, t, lambda_crit_closed(ctx, t), grid_size, tol);
  r.value = -r.value;
  return r;
}

BigReal check_variational(const PrecContext& ctx, const EquilibriumData& eq, const BigReal& x_in) {
  const mpfr_prec_t p = ctx.bits();
  BigReal x = x_in.to_prec(p);
  for (const auto& [e1, e2] : eq.support()) {
    if (x == e1 || x == e2) throw DomainError("check_variational: x must not be a support endpoint");
  }
  BigReal potential = 2L * square(x);
  if (x < eq.t) potential += eq.lambda;
  BigReal logpot = integrate_against_rho(ctx, eq, x, [](const BigReal&, const BigReal& d) { return log(d); });
  return 2L * logpot - potential + eq.ell;
}

BigReal omega_relation_residual(const PrecContext& ctx, const BigReal& t, const BigReal& lambda, const BigReal& h) {
  auto parts = [&](const BigReal& l) {
    EquilibriumData eq = two_cut(ctx, t, l);
    return std::tuple{eq.ell, second_moment_term(ctx, eq), eq.omega};
  };
  auto [l_p, m_p, o_p] = parts(lambda + h);
  auto [l_m, m_m, o_m] = parts(lambda - h);
  BigReal omega = two_cut(ctx, t, lambda).omega;
  BigReal two_h = 2L * h;
  BigReal rhs = (l_p - l_m) / two_h + (m_p - m_m) / two_h + lambda * (o_p - o_m) / two_h;
  return abs(omega - rhs);
}

BigReal omega_derivative_residual(const PrecContext& ctx, const BigReal& t_in, const BigReal& lambda_in,
                                  int grid_size) {
  const mpfr_prec_t p = ctx.bits();
  BigReal t = t_in.to_prec(p);
  BigReal lambda = lambda_in.to_prec(p);
  BigReal lc = lambda_crit_closed(ctx, t);
  BigReal f_crit = capital_f_one_cut_closed(ctx, t);
  auto f_over_cube = [&](const BigReal& u) {
    BigReal fu = (u < lc) ? capital_f(ctx, two_cut(ctx, t, u)) : f_crit;
    return fu / (square(u) * u);
  };
  BigReal tail = sin2_integral(ctx, lambda, lc, f_over_cube, grid_size, 1e-9).value;
  // d/d lambda of lambda^2 [F(lambda_c) / (2 lambda_c^2) + int_lambda^{lambda_c} F(u) u^{-3} du]
  BigReal f_here = capital_f(ctx, two_cut(ctx, t, lambda));
  BigReal derivative = lambda * f_crit / square(lc) + 2L * lambda * tail - f_here / lambda;
  return abs(two_cut(ctx, t, lambda).omega - derivative);
}

}  // namespace fhlab
