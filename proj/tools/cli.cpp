#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fhlab/asymptotics.hpp"
#include "fhlab/equilibrium.hpp"
#include "fhlab/errors.hpp"
#include "fhlab/opkernel.hpp"
#include "fhlab/painleve.hpp"
#include "fhlab/rhmodels.hpp"
#include "fhlab/weight.hpp"

namespace fhlab::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct Options {
  std::optional<std::string> t, v, s, lambda, alpha;
  std::optional<int> n, n_max, k_max;
  std::vector<int> ns;
  int prec_bits = 256;
  std::string format;
  std::string out;
  std::string report;
  int threads = 1;
  std::string which;
};

// Output of a command: either a table or a JSON object, plus the contract
// verdict that decides the exit code.
struct Output {
  bool is_table = true;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  Json meta = Json::object();
  Json object = Json::object();
  std::string contract;  // empty when the command has none
  bool ok = true;
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

BigReal parse_real(const std::string& text, mpfr_prec_t p, const char* name) {
  try {
    return BigReal::parse(text, p);
  } catch (const DomainError&) {
    throw UsageError(std::string("--") + name + ": not a number: " + text);
  }
}

BigReal need(const std::optional<std::string>& x, const char* name, mpfr_prec_t p) {
  if (!x) throw UsageError(std::string("--") + name + " is required");
  return parse_real(*x, p, name);
}

BigReal value_or(const std::optional<std::string>& x, const char* fallback, const char* name, mpfr_prec_t p) {
  return parse_real(x ? *x : fallback, p, name);
}

bool is_inf(const std::optional<std::string>& x) { return x && (*x == "inf" || *x == "+inf" || *x == "infinity"); }

/// Optional lambda; absent or "inf" means +infinity.
std::optional<BigReal> lambda_opt(const Options& o, mpfr_prec_t p) {
  if (!o.lambda || is_inf(o.lambda)) return std::nullopt;
  return parse_real(*o.lambda, p, "lambda");
}

int need_n(const Options& o) {
  if (!o.n) throw UsageError("--n is required");
  if (*o.n < 1) throw UsageError("--n must be positive");
  return *o.n;
}

/// Weight from either (v, s, alpha) or (t, lambda, n).
FHWeight weight_from(const Options& o, mpfr_prec_t p, int n) {
  const bool vs = o.v || o.s;
  const bool tl = o.t || o.lambda;
  if (vs && tl) throw UsageError("use either --v/--s or --t/--lambda, not both");
  BigReal alpha = value_or(o.alpha, "0", "alpha", p);
  if (tl) {
    ScaledParams sp{value_or(o.t, "0", "t", p), lambda_opt(o, p), n};
    return sp.to_weight(alpha);
  }
  return FHWeight(value_or(o.v, "0", "v", p), value_or(o.s, "1", "s", p), alpha);
}

std::vector<int> ladder(const Options& o, std::vector<int> fallback) {
  if (!o.ns.empty()) return o.ns;
  if (!o.n && !o.n_max) return fallback;
  int lo = o.n.value_or(8);
  int hi = o.n_max.value_or(std::max(lo, 32));
  if (lo < 1 || hi < lo) throw UsageError("need 1 <= --n <= --n-max");
  std::vector<int> out;
  for (int k = lo; k <= hi; k *= 2) out.push_back(k);
  return out;
}

// ---------------------------------------------------------------------------
// Commands

Output cmd_moments(const Options& o, const PrecContext& ctx) {
  int n = o.n.value_or(5);
  int k_max = o.k_max.value_or(2 * n);
  if (k_max < 0) throw UsageError("--k-max must be non-negative");
  MomentTable m = moments(ctx, weight_from(o, ctx.bits(), n), k_max);
  Output r;
  r.header = {"k", "mu", "method", "err_bound"};
  for (int k = 0; k <= k_max; ++k) {
    const auto i = static_cast<size_t>(k);
    r.rows.push_back({std::to_string(k), m.mu[i].to_string(ctx), to_string(m.method),
                      (i < m.err.size() ? m.err[i] : m.err_bound).to_string(6)});
  }
  r.meta["prec_bits"] = ctx.work_bits;
  return r;
}

Output cmd_hankel(const Options& o, const PrecContext& ctx) {
  const int n = need_n(o);
  HankelRun run = hankel_adaptive([&](mpfr_prec_t p) { return weight_from(o, p, n); }, n, ctx.work_bits);
  const PrecContext& used = run.ctx;
  Output r;
  r.is_table = false;
  r.object["n"] = n;
  r.object["log_det"] = run.sys.log_det.to_string(used);
  Json h = Json::array(), beta = Json::array();
  for (const auto& x : run.sys.h) h.push_back(x.to_string(used));
  for (const auto& x : run.sys.beta) beta.push_back(x.to_string(used));
  r.object["h"] = h;
  r.object["beta"] = beta;
  r.object["sigma_n"] = run.sys.sigma[static_cast<size_t>(n)].to_string(used);
  r.object["prec_bits"] = used.work_bits;
  return r;
}

Output cmd_identities(const Options& o, const PrecContext& ctx) {
  const int n = o.n.value_or(4);
  const mpfr_prec_t p = ctx.bits();
  FHWeight base = weight_from(o, p, n);
  BigReal s = o.s ? base.s : BigReal(0.5, p);
  if (!(s > 0.0) || !(s < 1.0)) throw UsageError("the s-identity needs s in (0, 1)");
  BigReal step = default_fd_step(ctx);
  BigReal dv = check_dv_identity(ctx, FHWeight(base.v, BigReal(p), base.alpha), n, step);
  BigReal ds = check_ds_identity(ctx, FHWeight(base.v, s, base.alpha), n, step);
  Output r;
  r.header = {"identity", "residual", "step", "prec_bits"};
  r.rows.push_back({"dv_logH_eq_2sigma", dv.to_string(6), step.to_string(6), std::to_string(ctx.work_bits)});
  r.rows.push_back({"ds_logH_eq_kernel_mass", ds.to_string(6), step.to_string(6), std::to_string(ctx.work_bits)});
  r.contract = "both residuals below 1e-12";
  r.ok = dv < 1e-12 && ds < 1e-12;
  return r;
}

Output cmd_equilibrium(const Options& o, const PrecContext& ctx) {
  const mpfr_prec_t p = ctx.bits();
  BigReal t = need(o.t, "t", p);
  std::optional<BigReal> lam = lambda_opt(o, p);
  EquilibriumData eq = lam ? equilibrium(ctx, t, *lam) : one_cut(ctx, t);
  Output r;
  r.is_table = false;
  r.object["regime"] = to_string(eq.regime);
  if (eq.regime == Regime::TwoCut) {
    r.object["a"] = eq.a.to_string(ctx);
    r.object["b"] = eq.b.to_string(ctx);
    r.object["c"] = eq.c.to_string(ctx);
  } else if (eq.regime == Regime::OneCut) {
    r.object["b_bar"] = eq.b_bar.to_string(ctx);
    r.object["c_bar"] = eq.c_bar.to_string(ctx);
  }
  r.object["ell"] = eq.ell.to_string(ctx);
  r.object["omega"] = eq.omega.to_string(ctx);
  r.object["lambda_crit"] = lambda_crit(ctx, t).to_string(ctx);
  BigReal mass = total_mass(ctx, eq);
  r.object["mass"] = mass.to_string(ctx);
  r.object["prec_bits"] = ctx.work_bits;
  r.contract = "total mass 1 to 1e-10";
  r.ok = abs(mass - 1L) < 1e-10;
  return r;
}

Output cmd_lambda_crit(const Options& o, const PrecContext& ctx) {
  BigReal t = need(o.t, "t", ctx.bits());
  BigReal closed = lambda_crit_closed(ctx, t);
  BigReal integral = lambda_crit_integral(ctx, t);
  BigReal res = abs(closed - integral);
  Output r;
  r.header = {"t", "lambda_crit", "integral_form", "residual"};
  r.rows.push_back({t.to_string(ctx), closed.to_string(ctx), integral.to_string(ctx), res.to_string(6)});
  r.meta["prec_bits"] = ctx.work_bits;
  r.contract = "closed and integral forms agree to 1e-10";
  r.ok = res < 1e-10;
  return r;
}

Output cmd_omega_integral(const Options& o, const PrecContext& ctx) {
  const mpfr_prec_t p = ctx.bits();
  BigReal t = value_or(o.t, "0", "t", p);
  OmegaIntegral in = omega_lambda_integral(ctx, t, 8, 1e-9);
  BigReal rhs = c_coeffs(ctx, t, BigReal(p)).c1 - log(BigReal(3L, p)) / 2L;
  BigReal res = abs(in.value - rhs);
  Output r;
  r.header = {"t", "integral", "identity_rhs", "residual"};
  r.rows.push_back({t.to_string(ctx), in.value.to_string(ctx), rhs.to_string(ctx), res.to_string(6)});
  r.meta["prec_bits"] = ctx.work_bits;
  r.contract = "|integral - identity_rhs| < 1e-6";
  r.ok = res < 1e-6;
  return r;
}

Output from_residual_table(const ResidualTable& tab, int digits) {
  Output r;
  r.header = {"n", "lhs", "prediction", "residual", "scaled_residual"};
  for (const auto& row : tab.rows) {
    r.rows.push_back({std::to_string(row.n), row.lhs.to_string(digits), row.prediction.to_string(digits),
                      row.residual.to_string(digits), row.scaled_residual.to_string(digits)});
  }
  r.meta["name"] = tab.name;
  r.meta["t"] = tab.t.to_string(digits);
  r.meta["alpha"] = tab.alpha.to_string(digits);
  if (tab.lambda) r.meta["lambda"] = tab.lambda->to_string(digits);
  r.meta["prec_bits"] = tab.prec_bits;
  r.meta["scaling"] = tab.scaling;
  Json ratios = Json::array();
  for (double x : doubling_ratios(tab)) ratios.push_back(num(x));
  r.meta["doubling_ratios"] = ratios;
  r.contract = tab.contract;
  r.ok = tab.contract_ok;
  return r;
}

Output cmd_verify(const Options& o, const PrecContext& ctx, std::ostream& err) {
  const mpfr_prec_t p = ctx.bits();
  BigReal t = value_or(o.t, "0", "t", p);
  BigReal alpha = value_or(o.alpha, "0", "alpha", p);
  const std::string& w = o.which;
  std::vector<int> ns = ladder(o, w == "thm2sup" ? std::vector<int>{6, 10, 14} : std::vector<int>{8, 16, 32});
  err << "verify " << w << ": n in {";
  for (size_t i = 0; i < ns.size(); ++i) err << (i ? "," : "") << ns[i];
  err << "}\n";
  ResidualTable tab;
  if (w == "thm1") {
    tab = verify_thm1(ctx, t, alpha, ns);
  } else if (w == "thm2sup") {
    tab = verify_thm2_supercritical(ctx, t, lambda_opt(o, p), alpha, ns);
  } else if (w == "thm2sub") {
    tab = verify_thm2_subcritical(ctx, t, need(o.lambda, "lambda", p), alpha, ns);
  } else if (w == "gap-zero") {
    tab = verify_gap_at_zero(ctx, alpha, ns);
  } else if (w == "gue") {
    tab = verify_gue_asymptotic(ctx, ns);
  } else if (w == "gue-exact") {
    tab = verify_gue_exact(ns);
  } else if (w == "thinned") {
    tab = verify_thinned_slope(ctx, t, need(o.s, "s", p), alpha, ns);
  } else {
    tab = verify_gap_probability(ctx, t, alpha, ns);
  }
  return from_residual_table(tab, 20);
}

Output cmd_tau(const Options& o, const PrecContext& ctx) {
  const int n = need_n(o);
  const mpfr_prec_t p = ctx.bits();
  if (o.t || o.lambda) throw UsageError("tau takes --v/--s/--alpha");
  BigReal v = value_or(o.v, "0", "v", p);
  BigReal s = value_or(o.s, "1", "s", p);
  BigReal alpha = value_or(o.alpha, "0.5", "alpha", p);
  SeedFunction seed(alpha, -1, s);
  BigReal tau = tau_wronskian(ctx, seed, v, n);
  TauBridge b = tau_hankel_bridge(ctx, v, s, alpha, n);
  Output r;
  r.is_table = false;
  r.object["n"] = n;
  r.object["nu"] = alpha.to_string(ctx);
  r.object["z"] = v.to_string(ctx);
  r.object["tau"] = tau.to_string(ctx);
  r.object["hankel_bridge_residual"] = b.residual.to_string(6);
  r.object["minus_branch_residual"] = b.minus_residual.to_string(6);
  r.object["plus_branch_residual"] = b.plus_residual.to_string(6);
  r.object["prec_bits"] = ctx.work_bits;
  BigReal tol = ldexp_one(-ctx.work_bits / 2, p);
  r.contract = "both branches match the Hankel determinant to 2^-(prec/2)";
  r.ok = b.residual < tol;
  return r;
}

Output cmd_rh_check(const Options& o) {
  double alpha = 0;
  if (o.alpha) {
    try {
      alpha = std::stod(*o.alpha);
    } catch (const std::exception&) {
      throw UsageError("--alpha: not a number: " + *o.alpha);
    }
  }
  std::vector<CheckRow> rows = o.which == "airy" ? rh_check_airy() : rh_check_bessel(alpha);
  Output r;
  r.header = {"check", "location", "residual", "pass"};
  r.ok = true;
  for (const auto& row : rows) {
    r.rows.push_back({row.check, row.location, num(row.residual), row.pass ? "true" : "false"});
    r.ok = r.ok && row.pass;
  }
  r.meta["model"] = o.which;
  if (o.which == "bessel") r.meta["alpha"] = num(alpha);
  r.contract = "every check passes";
  return r;
}

// ---------------------------------------------------------------------------
// Rendering

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void flatten(const Json& j, const std::string& key, std::vector<std::vector<std::string>>& rows) {
  if (j.is_array()) {
    for (size_t i = 0; i < j.size(); ++i) flatten(j[i], key + "[" + std::to_string(i) + "]", rows);
  } else if (j.is_string()) {
    rows.push_back({key, j.get<std::string>()});
  } else {
    rows.push_back({key, j.dump()});
  }
}

std::string render(const Output& r, const std::string& format) {
  std::ostringstream os;
  const std::string verdict = r.contract.empty() ? "" : (r.ok ? "PASS" : "FAIL");
  if (format == "json") {
    Json j;
    if (r.is_table) {
      j = r.meta;
      Json rows = Json::array();
      for (const auto& row : r.rows) {
        Json obj = Json::object();
        for (size_t i = 0; i < r.header.size(); ++i) obj[r.header[i]] = row[i];
        rows.push_back(obj);
      }
      j["rows"] = rows;
    } else {
      j = r.object;
    }
    if (!r.contract.empty()) {
      j["contract"] = r.contract;
      j["pass"] = r.ok;
    }
    os << j.dump(2) << "\n";
    return os.str();
  }
  std::vector<std::string> header = r.header;
  std::vector<std::vector<std::string>> rows = r.rows;
  if (!r.is_table) {
    header = {"key", "value"};
    rows.clear();
    for (const auto& [k, v] : r.object.items()) flatten(v, k, rows);
  }
  for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << csv_field(header[i]);
  os << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
    os << "\n";
  }
  if (!verdict.empty()) os << "# " << verdict << ": " << r.contract << "\n";
  return os.str();
}

template <class F>
Output with_retries(int bits, std::ostream& err, F&& f) {
  for (int attempt = 0;; ++attempt) {
    try {
      return f(PrecContext(bits));
    } catch (const InstabilityError& e) {
      if (attempt == 3) throw;
      err << "unstable at " << bits << " bits (" << e.what() << "); retrying at " << 2 * bits << "\n";
    } catch (const NumericError& e) {
      if (attempt == 3) throw;
      err << "numeric failure at " << bits << " bits (" << e.what() << "); retrying at " << 2 * bits << "\n";
    }
    bits *= 2;
  }
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--t", o.t, "scaled singularity position, v = sqrt(2n) t");
  sub->add_option("--v", o.v, "singularity position");
  sub->add_option("--s", o.s, "jump height in [0, 1]");
  sub->add_option("--lambda", o.lambda, "jump rate, s = e^{-lambda n}; 'inf' for s = 0");
  sub->add_option("--alpha", o.alpha, "root exponent, > -1");
  sub->add_option("--n", o.n, "size");
  sub->add_option("--n-max", o.n_max, "largest size of a doubling ladder");
  sub->add_option("--prec-bits", o.prec_bits, "working precision in bits (default $FHLAB_PREC_BITS or 256)");
  sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", o.out, "output file (default stdout)");
  sub->add_option("--threads", o.threads, "worker count; output does not depend on it");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  if (const char* env = std::getenv("FHLAB_PREC_BITS")) {
    try {
      o.prec_bits = std::stoi(env);
    } catch (const std::exception&) {
      err << "FHLAB_PREC_BITS is not an integer: " << env << "\n";
      return kUsage;
    }
  }

  CLI::App app{"Hankel determinants with a Fisher-Hartwig jump and root: numerics and checks"};
  app.name("fhlab");
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* help;
    const char* format;
  };
  const Sub subs[] = {
      {"moments", "moments of the weight (CSV k,mu,method,err_bound)", "csv"},
      {"hankel", "log H_n with recurrence data (JSON)", "json"},
      {"identities", "differential identities in v and s (CSV)", "csv"},
      {"equilibrium", "equilibrium measure data (JSON)", "json"},
      {"lambda-crit", "critical jump rate, closed vs integral form (CSV)", "csv"},
      {"omega-integral", "integral of Omega up to lambda_c against its closed form (CSV)", "csv"},
      {"verify", "asymptotic residual tables (CSV n,lhs,prediction,residual,scaled_residual)", "csv"},
      {"tau", "Wronskian tau function and its Hankel bridge (JSON)", "json"},
      {"rh-check", "model Riemann-Hilbert problem checks (CSV check,location,residual,pass)", "csv"},
  };
  std::map<std::string, std::string> default_format;
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(sub, o);
    default_format[s.name] = s.format;
    if (std::string(s.name) == "moments") sub->add_option("--k-max", o.k_max, "largest moment index");
    if (std::string(s.name) == "verify") {
      sub->add_option("which", o.which, "thm1|thm2sup|thm2sub|gap-zero|gue|gue-exact|thinned|gap-prob")
          ->required()
          ->check(CLI::IsMember({"thm1", "thm2sup", "thm2sub", "gap-zero", "gue", "gue-exact", "thinned", "gap-prob"}));
      sub->add_option("--ns", o.ns, "explicit list of sizes")->delimiter(',');
    }
    if (std::string(s.name) == "rh-check") {
      sub->add_option("model", o.which, "airy|bessel")->required()->check(CLI::IsMember({"airy", "bessel"}));
      sub->add_option("--report", o.report, "CSV report file");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  if (o.prec_bits < 64) {
    err << "--prec-bits must be at least 64\n";
    return kUsage;
  }
  if (o.threads < 1) {
    err << "--threads must be positive\n";
    return kUsage;
  }
  const std::string format = o.format.empty() ? default_format[cmd] : o.format;

  Output result;
  try {
    if (cmd == "rh-check") {
      result = cmd_rh_check(o);
    } else {
      result = with_retries(o.prec_bits, err, [&](const PrecContext& ctx) -> Output {
        if (cmd == "moments") return cmd_moments(o, ctx);
        if (cmd == "hankel") return cmd_hankel(o, ctx);
        if (cmd == "identities") return cmd_identities(o, ctx);
        if (cmd == "equilibrium") return cmd_equilibrium(o, ctx);
        if (cmd == "lambda-crit") return cmd_lambda_crit(o, ctx);
        if (cmd == "omega-integral") return cmd_omega_integral(o, ctx);
        if (cmd == "verify") return cmd_verify(o, ctx, err);
        return cmd_tau(o, ctx);
      });
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumeric;
  }

  const std::string text = render(result, format);
  const std::string path = !o.report.empty() ? o.report : o.out;
  if (path.empty()) {
    out << text;
  } else {
    std::ofstream f(path);
    if (!f) {
      err << "cannot write " << path << "\n";
      return kUsage;
    }
    f << text;
    if (!result.contract.empty()) out << (result.ok ? "PASS" : "FAIL") << ": " << result.contract << "\n";
  }
  return result.ok ? kOk : kContractFailed;
}

}  // namespace fhlab::cli
