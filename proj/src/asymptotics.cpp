#include "fhlab/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "fhlab/equilibrium.hpp"
#include "fhlab/opkernel.hpp"
#include "fhlab/special.hpp"

namespace fhlab {

std::string to_string(Expansion e) {
  switch (e) {
    case Expansion::HardEdge:
      return "hard_edge";
    case Expansion::RootSingularity:
      return "root_singularity";
    case Expansion::GapAtZero:
      return "gap_at_zero";
    case Expansion::Thinned:
      return "thinned";
    case Expansion::GapProbability:
      return "gap_probability";
  }
  return "unknown";
}

BigReal ExpansionCoeffs::evaluate(long n) const {
  const mpfr_prec_t p = c_n2.prec();
  BigReal nn(n, p);
  BigReal logn = log(nn);
  BigReal r = c_n2 * square(nn) + c_nlogn * nn * logn + c_n * nn + c_logn * logn;
  if (c_const) r += *c_const;
  return r;
}

namespace {

void require_above_minus_one(const BigReal& t) {
  if (!(t > -1.0)) throw DomainError("asymptotics: t must exceed -1");
}

void require_bulk(const BigReal& t) {
  if (!(t > -1.0) || !(t < 1.0)) throw DomainError("asymptotics: t must lie in (-1, 1)");
}

// log((t + sqrt(3 + t^2)) / sqrt 3)
BigReal log_ratio(const BigReal& t, const BigReal& r) { return log((t + r) / sqrt(BigReal(3L, t.prec()))); }

BigReal zero_at(const PrecContext& ctx) { return BigReal(ctx.bits()); }

}  // namespace

CCoeffs c_coeffs(const PrecContext& ctx, const BigReal& t_in, const BigReal& alpha_in) {
  const mpfr_prec_t p = ctx.bits();
  BigReal t = t_in.to_prec(p);
  BigReal alpha = alpha_in.to_prec(p);
  require_above_minus_one(t);
  BigReal r = sqrt(square(t) + 3L);
  BigReal lg = log_ratio(t, r);
  BigReal t2 = square(t);
  BigReal a2 = square(alpha);
  CCoeffs c;
  c.c1 = -2L * t2 * t / 27L * (r - t) - (4L * t2 / 3L + 5L * t * r / 9L) - lg;
  c.c2 = alpha * t / 3L * (t - r) - alpha * lg;
  c.c3 = (1L - 3L * a2) / 6L * lg - log((3L + t2) / 3L) / 48L -
         (1L - 4L * a2) / 16L * log((3L + 5L * t2 + 4L * t * r) / 3L);
  return c;
}

UCoeffs u_coeffs(const PrecContext& ctx, const BigReal& t_in, const BigReal& alpha_in) {
  const mpfr_prec_t p = ctx.bits();
  BigReal t = t_in.to_prec(p);
  BigReal alpha = alpha_in.to_prec(p);
  require_above_minus_one(t);
  BigReal r = sqrt(square(t) + 3L);
  BigReal t2 = square(t);
  UCoeffs u;
  u.u1 = -8L * (r - t) * (3L + 5L * t2 + 4L * t * r) / 27L;
  u.u2 = -2L * alpha * (r - t) / 3L;
  u.u3 = (r - t) * (t + r * (6L * square(alpha) - 1L)) / (12L * (3L + t2) * (2L * t + r));
  return u;
}

BigReal c0_constant(const PrecContext& ctx, const BigReal& alpha_in) {
  const mpfr_prec_t p = ctx.bits();
  BigReal alpha = alpha_in.to_prec(p);
  BigReal a2 = square(alpha);
  BigReal l2 = const_log2(p);
  BigReal l3 = log(BigReal(3L, p));
  return alpha / 2L * log(2L * const_pi(p)) + (a2 / 4L - BigReal::ratio(1, 6, p)) * l2 +
         (BigReal::ratio(1, 8, p) - a2 / 2L) * l3 + zeta_prime_minus_one(ctx) -
         2L * log_barnes_g(ctx, 1L + alpha / 2L);
}

ExpansionCoeffs expansion(const PrecContext& ctx, Expansion which, const BigReal& t_in, const BigReal& alpha_in,
                          const std::optional<BigReal>& s) {
  const mpfr_prec_t p = ctx.bits();
  BigReal t = t_in.to_prec(p);
  BigReal alpha = alpha_in.to_prec(p);
  BigReal a2 = square(alpha);
  BigReal l3 = log(BigReal(3L, p));
  ExpansionCoeffs e;
  e.which = which;
  e.c_n2 = zero_at(ctx);
  e.c_nlogn = zero_at(ctx);
  e.c_n = zero_at(ctx);
  e.c_logn = zero_at(ctx);
  switch (which) {
    case Expansion::HardEdge: {
      CCoeffs c = c_coeffs(ctx, t, alpha);
      e.c_n2 = c.c1;
      e.c_n = c.c2;
      e.c_const = c.c3;
      e.error_order = "O(1/n)";
      break;
    }
    case Expansion::RootSingularity: {
      require_bulk(t);
      e.c_nlogn = alpha / 2L;
      e.c_n = -alpha / 2L * (1L - 2L * square(t) + const_log2(p));
      e.c_logn = a2 / 4L;
      e.c_const = a2 / 4L * log(2L * sqrt(1L - square(t))) + 2L * log_barnes_g(ctx, 1L + alpha / 2L) -
                  log_barnes_g(ctx, 1L + alpha);
      e.error_order = "O(log n / n)";
      break;
    }
    case Expansion::GapAtZero:
      e.c_n2 = -l3 / 2L;
      e.c_n = -alpha * l3 / 2L;
      e.c_logn = a2 / 4L - BigReal::ratio(1, 12, p);
      e.c_const = c0_constant(ctx, alpha);
      e.error_order = "O(1/n)";
      break;
    case Expansion::Thinned: {
      require_bulk(t);
      if (!s || !(*s > 0.0) || *s > 1.0) throw DomainError("thinned expansion: s must lie in (0, 1]");
      BigReal pi = const_pi(p);
      BigReal ls = log(s->to_prec(p));
      e.c_n = (2L * asin(t) + 2L * t * sqrt(1L - square(t)) + pi) * ls / (2L * pi);
      e.c_logn = square(ls) / (4L * square(pi));
      e.error_order = "O(log n / n)";
      break;
    }
    case Expansion::GapProbability: {
      require_bulk(t);
      CCoeffs c = c_coeffs(ctx, t, alpha);
      e.c_n2 = c.c1 - l3 / 2L;
      e.c_n = c.c2 - alpha * l3 / 2L - alpha * square(t);
      e.c_logn = a2 / 4L - BigReal::ratio(1, 12, p);
      e.c_const = c.c3 + c0_constant(ctx, alpha) - a2 / 8L * log(1L - square(t));
      e.error_order = "O(log n / n)";
      break;
    }
  }
  return e;
}

BigReal reference_log_ratio(const PrecContext& ctx, Expansion which, long n, const BigReal& t, const BigReal& alpha,
                            const std::optional<BigReal>& s) {
  if (n < 1) throw DomainError("reference_log_ratio: n must be positive");
  return expansion(ctx, which, t, alpha, s).evaluate(n);
}

BigReal prob_xmin_asymptotic(const PrecContext& ctx, long n, const BigReal& t, const BigReal& alpha) {
  return reference_log_ratio(ctx, Expansion::GapProbability, n, t, alpha);
}

BigReal gue_asymptotic(const PrecContext& ctx, long n) {
  if (n < 1) throw DomainError("gue_asymptotic: n must be positive");
  const mpfr_prec_t p = ctx.bits();
  BigReal nn(n, p);
  BigReal n2 = square(nn);
  return n2 / 2L * log(nn / 2L) - 3L * n2 / 4L + nn * log(2L * const_pi(p)) - log(nn) / 12L +
         zeta_prime_minus_one(ctx);
}

LogHankel log_hankel(int n, const BigReal& t, const JumpSpec& s, const BigReal& alpha, int min_bits) {
  if (n < 1) throw DomainError("log_hankel: n must be positive");
  WeightFactory make = [&](mpfr_prec_t p) {
    BigReal v = sqrt(BigReal(2L * n, p)) * t.to_prec(p);
    BigReal jump(p);
    switch (s.kind) {
      case JumpSpec::Kind::Zero:
        break;
      case JumpSpec::Kind::One:
        jump = BigReal(1L, p);
        break;
      case JumpSpec::Kind::Exponential:
        jump = exp(-(s.value.to_prec(p) * static_cast<long>(n)));
        break;
      case JumpSpec::Kind::Fixed:
        jump = s.value.to_prec(p);
        break;
    }
    return FHWeight(v, jump, alpha.to_prec(p));
  };
  HankelRun run = hankel_adaptive(make, n, min_bits);
  return {run.sys.log_det, run.ctx.work_bits};
}

std::vector<double> doubling_ratios(const ResidualTable& table) {
  std::vector<double> out;
  for (const auto& a : table.rows) {
    for (const auto& b : table.rows) {
      if (b.n == 2 * a.n) out.push_back(std::exp2(log2_abs(b.residual) - log2_abs(a.residual)));
    }
  }
  return out;
}

namespace {

// Identically vanishing residuals (e.g. t = 0 in the hard-edge ratio) satisfy
// every trend contract trivially.
bool all_exact_zero(const ResidualTable& table) {
  if (table.rows.empty()) return false;
  for (const auto& row : table.rows) {
    if (!row.residual.is_zero()) return false;
  }
  return true;
}

bool ratio_contract(const ResidualTable& table) {
  if (all_exact_zero(table)) return true;
  std::vector<double> ratios = doubling_ratios(table);
  if (ratios.empty()) return false;
  for (double r : ratios) {
    if (!(r >= 0.25 && r <= 0.9)) return false;
  }
  double lo = INFINITY;
  double hi = 0;
  for (const auto& row : table.rows) {
    double v = std::fabs(row.scaled_residual.to_double());
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi <= 4.0 * lo;
}

bool decreasing_contract(const ResidualTable& table) {
  if (all_exact_zero(table)) return true;
  if (table.rows.size() < 2) return false;
  for (size_t i = 1; i < table.rows.size(); ++i) {
    if (!(abs(table.rows[i].residual) < abs(table.rows[i - 1].residual))) return false;
  }
  return true;
}

std::vector<int> sorted(std::vector<int> ns) {
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  for (int n : ns) {
    if (n < 1) throw DomainError("verify: n must be positive");
  }
  return ns;
}

ResidualRow make_row(long n, BigReal lhs, BigReal prediction, long scale_power) {
  ResidualRow row;
  row.n = n;
  row.residual = lhs - prediction;
  row.scaled_residual = row.residual * pow(BigReal(n, row.residual.prec()), scale_power);
  row.lhs = std::move(lhs);
  row.prediction = std::move(prediction);
  return row;
}

}  // namespace

ResidualTable verify_thm1(const PrecContext& ctx, const BigReal& t, const BigReal& alpha, const std::vector<int>& ns) {
  ExpansionCoeffs e = expansion(ctx, Expansion::HardEdge, t, alpha);
  ResidualTable table;
  table.name = "hard_edge";
  table.t = t;
  table.alpha = alpha;
  table.scaling = "n * residual";
  BigReal zero(ctx.bits());
  for (int n : sorted(ns)) {
    LogHankel num = log_hankel(n, t, JumpSpec::zero(), alpha);
    LogHankel den = log_hankel(n, zero, JumpSpec::zero(), alpha);
    table.prec_bits = std::max({table.prec_bits, num.prec_bits, den.prec_bits});
    table.rows.push_back(make_row(n, (num.value - den.value).to_prec(ctx.bits()), e.evaluate(n), 1));
  }
  table.contract = "doubling ratios in [0.25, 0.9] and max |n r_n| <= 4 min |n r_n|";
  table.contract_ok = ratio_contract(table);
  return table;
}

ResidualTable verify_thm2_supercritical(const PrecContext& ctx, const BigReal& t, const std::optional<BigReal>& lambda,
                                        const BigReal& alpha, const std::vector<int>& ns) {
  require_bulk(t);
  BigReal lc = lambda_crit_closed(ctx, t);
  if (lambda && *lambda < lc) throw DomainError("verify_thm2_supercritical: lambda must be at least lambda_c(t)");
  ResidualTable table;
  table.name = "supercritical";
  table.t = t;
  table.alpha = alpha;
  table.lambda = lambda;
  table.scaling = "d_n * sqrt(n) * exp(n (lambda - lambda_c))";
  for (int n : sorted(ns)) {
    LogHankel base = log_hankel(n, t, JumpSpec::zero(), alpha);
    LogHankel with = log_hankel(n, t, lambda ? JumpSpec::exponential(*lambda) : JumpSpec::zero(), alpha);
    table.prec_bits = std::max({table.prec_bits, base.prec_bits, with.prec_bits});
    ResidualRow row;
    row.n = n;
    row.lhs = with.value.to_prec(ctx.bits());
    row.prediction = base.value.to_prec(ctx.bits());
    row.residual = abs(row.lhs - row.prediction);
    if (lambda) {
      BigReal nn(static_cast<long>(n), ctx.bits());
      row.scaled_residual = row.residual * sqrt(nn) * exp(nn * (*lambda - lc));
    } else {
      row.scaled_residual = row.residual;
    }
    table.rows.push_back(std::move(row));
  }
  table.contract = "scaled values finite and at most 4 times the first";
  table.contract_ok = !table.rows.empty();
  for (const auto& row : table.rows) {
    if (!row.scaled_residual.is_finite() || row.scaled_residual > 4L * table.rows.front().scaled_residual) {
      table.contract_ok = false;
    }
  }
  if (!lambda) {
    for (const auto& row : table.rows) table.contract_ok = table.contract_ok && row.residual.is_zero();
  }
  return table;
}

ResidualTable verify_thm2_subcritical(const PrecContext& ctx, const BigReal& t, const BigReal& lambda,
                                      const BigReal& alpha, const std::vector<int>& ns) {
  require_bulk(t);
  BigReal lc = lambda_crit_closed(ctx, t);
  if (!(lambda > 0.0) || !(lambda < lc)) throw DomainError("verify_thm2_subcritical: lambda must lie in (0, lambda_c)");
  BigReal limit = -omega_integral(ctx, t, lambda, 8, 1e-12).value;
  ResidualTable table;
  table.name = "subcritical";
  table.t = t;
  table.alpha = alpha;
  table.lambda = lambda;
  table.scaling = "residual";
  for (int n : sorted(ns)) {
    LogHankel num = log_hankel(n, t, JumpSpec::exponential(lambda), alpha);
    LogHankel den = log_hankel(n, t, JumpSpec::one(), alpha);
    table.prec_bits = std::max({table.prec_bits, num.prec_bits, den.prec_bits});
    BigReal lhs = ((num.value - den.value) / static_cast<long>(n) / static_cast<long>(n)).to_prec(ctx.bits());
    table.rows.push_back(make_row(n, lhs, limit, 0));
  }
  table.contract = "|r_n| strictly decreasing";
  table.contract_ok = decreasing_contract(table);
  return table;
}

ResidualTable verify_gap_at_zero(const PrecContext& ctx, const BigReal& alpha, const std::vector<int>& ns) {
  BigReal zero(ctx.bits());
  ExpansionCoeffs e = expansion(ctx, Expansion::GapAtZero, zero, alpha);
  ResidualTable table;
  table.name = "gap_at_zero";
  table.t = zero;
  table.alpha = alpha;
  table.scaling = "n * residual";
  for (int n : sorted(ns)) {
    LogHankel num = log_hankel(n, zero, JumpSpec::zero(), alpha);
    LogHankel den = log_hankel(n, zero, JumpSpec::one(), alpha);
    table.prec_bits = std::max({table.prec_bits, num.prec_bits, den.prec_bits});
    table.rows.push_back(make_row(n, (num.value - den.value).to_prec(ctx.bits()), e.evaluate(n), 1));
  }
  table.contract = "doubling ratios in [0.25, 0.9] and max |n r_n| <= 4 min |n r_n|";
  table.contract_ok = ratio_contract(table);
  return table;
}

ResidualTable verify_gue_exact(const std::vector<int>& ns) {
  ResidualTable table;
  table.name = "gue_exact";
  table.scaling = "residual / |exact|";
  table.contract = "relative residual < 2^{-p/2}, p = max(256, 24 n)";
  table.contract_ok = true;
  for (int n : sorted(ns)) {
    BigReal zero(64);
    LogHankel run = log_hankel(n, zero, JumpSpec::one(), zero);
    table.prec_bits = std::max(table.prec_bits, run.prec_bits);
    PrecContext at(run.prec_bits);
    ResidualRow row = make_row(n, run.value, gue_logdet_exact(at, n), 0);
    if (!row.prediction.is_zero()) row.scaled_residual = abs(row.residual) / abs(row.prediction);
    int p = std::max(256, 24 * n);
    if (!(abs(row.scaled_residual) < ldexp_one(-p / 2, at.bits()))) table.contract_ok = false;
    table.rows.push_back(std::move(row));
  }
  return table;
}

ResidualTable verify_gue_asymptotic(const PrecContext& ctx, const std::vector<int>& ns) {
  ResidualTable table;
  table.name = "gue_asymptotic";
  table.scaling = "n * residual";
  table.prec_bits = ctx.work_bits;
  for (int n : sorted(ns)) {
    table.rows.push_back(make_row(n, gue_logdet_exact(ctx, n), gue_asymptotic(ctx, n), 1));
  }
  table.contract = "doubling ratios in [0.25, 0.9] and max |n r_n| <= 4 min |n r_n|";
  table.contract_ok = ratio_contract(table);
  return table;
}

ResidualTable verify_thinned_slope(const PrecContext& ctx, const BigReal& t, const BigReal& s, const BigReal& alpha,
                                   const std::vector<int>& ns) {
  ExpansionCoeffs e = expansion(ctx, Expansion::Thinned, t, alpha, s);
  ResidualTable table;
  table.name = "thinned_slope";
  table.t = t;
  table.alpha = alpha;
  table.scaling = "n * residual";
  auto ratio = [&](int n) {
    LogHankel num = log_hankel(n, t, JumpSpec::fixed(s), alpha);
    LogHankel den = log_hankel(n, t, JumpSpec::one(), alpha);
    table.prec_bits = std::max({table.prec_bits, num.prec_bits, den.prec_bits});
    return (num.value - den.value).to_prec(ctx.bits());
  };
  for (int n : sorted(ns)) {
    BigReal increment = ratio(n + 1) - ratio(n);
    BigReal predicted = e.evaluate(n + 1) - e.evaluate(n);
    table.rows.push_back(make_row(n, increment, predicted, 1));
  }
  table.contract = "|residual| strictly decreasing";
  table.contract_ok = decreasing_contract(table);
  return table;
}

ResidualTable verify_gap_probability(const PrecContext& ctx, const BigReal& t, const BigReal& alpha,
                                     const std::vector<int>& ns) {
  ExpansionCoeffs e = expansion(ctx, Expansion::GapProbability, t, alpha);
  ResidualTable table;
  table.name = "gap_probability";
  table.t = t;
  table.alpha = alpha;
  table.scaling = "n * residual";
  for (int n : sorted(ns)) {
    LogHankel num = log_hankel(n, t, JumpSpec::zero(), alpha);
    LogHankel den = log_hankel(n, t, JumpSpec::one(), alpha);
    table.prec_bits = std::max({table.prec_bits, num.prec_bits, den.prec_bits});
    table.rows.push_back(make_row(n, (num.value - den.value).to_prec(ctx.bits()), e.evaluate(n), 1));
  }
  table.contract = "|residual| strictly decreasing";
  table.contract_ok = decreasing_contract(table);
  return table;
}

}  // namespace fhlab
