#include <fmt/core.h>
#include <fmt/ranges.h>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "spbzo/catalog.hpp"
#include "spbzo/constants.hpp"
#include "spbzo/errors.hpp"
#include "spbzo/harness.hpp"
#include "spbzo/json_io.hpp"
#include "spbzo/lambert_w.hpp"
#include "spbzo/smoothing.hpp"
#include "spbzo/stationarity.hpp"
#include "spbzo/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace spbzo;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

Vec parse_csv(const std::string& text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw InputError("bad number list: '" + text + "'");
    }
    values.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return Eigen::Map<const Vec>(values.data(), static_cast<Eigen::Index>(values.size()));
}

std::string fmt_vec(const Vec& v) { return fmt::format("[{}]", fmt::join(v.begin(), v.end(), ", ")); }

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt::format("{:.10g}", *v) : "n/a"; }

fs::path default_output_root() {
  if (const char* env = std::getenv("SPBZO_OUTPUT_DIR"); env && *env) return env;
  return "spbzo_runs";
}

// Labeled rows printed as an aligned table or as a JSON object.
class Table {
 public:
  void add(std::string symbol, std::string key, std::optional<double> value) {
    rows_.push_back({std::move(symbol), std::move(key), value});
  }

  void print(bool as_json) const {
    if (as_json) {
      json j = json::object();
      for (const auto& r : rows_) j[r.key] = r.value ? json(*r.value) : json(nullptr);
      fmt::print("{}\n", j.dump(2));
      return;
    }
    for (const auto& r : rows_) fmt::print("  {:<14} {:<28} {}\n", r.symbol, r.key, fmt_opt(r.value));
  }

 private:
  struct Row {
    std::string symbol;
    std::string key;
    std::optional<double> value;
  };
  std::vector<Row> rows_;
};

int cmd_catalog(bool as_json) {
  json arr = json::array();
  if (!as_json) fmt::print("{:<10} {:>3} {:>2} {:>7} {:>6}  {:<6} {}\n", "id", "d", "m", "R1", "R2", "convex", "description");
  for (const auto& info : catalog_listing()) {
    const auto fn = make_function(info.id);
    const auto& c = fn->certificate;
    if (as_json) {
      arr.push_back({{"id", info.id},
                     {"dim", info.default_dim},
                     {"variable_dim", info.variable_dim},
                     {"m", c.m()},
                     {"R1", c.r1()},
                     {"R2", c.r2()},
                     {"convex", fn->convex},
                     {"closed_form_smoothing", fn->has_gs_closed_form()},
                     {"pieces", fn->has_pieces()},
                     {"description", info.description}});
    } else {
      fmt::print("{:<10} {:>3} {:>2} {:>7.4g} {:>6.4g}  {:<6} {}\n", info.id, info.default_dim, c.m(), c.r1(),
                 c.r2(), fn->convex ? "yes" : "no", info.description);
    }
  }
  if (as_json) fmt::print("{}\n", arr.dump(2));
  return 0;
}

struct ConstantsArgs {
  std::string fn = "QUAD";
  double sigma = 0.1;
  std::optional<int> dim;
  std::string x0;
  std::optional<double> eps;
  std::optional<double> delta;
  std::optional<double> gamma;
  std::optional<int> horizon;
  bool json = false;
};

int cmd_constants(const ConstantsArgs& a) {
  const auto fn = make_function(a.fn, a.dim);
  const auto& cert = fn->certificate;
  const int d = fn->dim;
  const Vec x0 = a.x0.empty() ? Vec(Vec::Zero(d)) : parse_csv(a.x0);
  require_dim(x0, d, "x0");

  Table t;
  t.add("R1", "R1", cert.r1());
  t.add("R2", "R2", cert.r2());
  t.add("m", "m", cert.m());
  t.add("d", "d", d);
  t.add("sigma", "sigma", a.sigma);
  const auto sc = smoothing_constants(cert, a.sigma, d);
  t.add("𝔄", "frak_A", sc.frak_a);
  t.add("𝔅", "frak_B", sc.frak_b);
  t.add("ℭ", "frak_C", sc.frak_c);
  t.add("𝒜", "cal_A", sc.cal_a);
  t.add("ℬ", "cal_B", sc.cal_b);
  t.add("𝒞", "cal_C", sc.cal_c);
  t.add("ℳ(x0)", "M_x0", approx_error_coeff(cert, a.sigma, d, x0));
  t.add("ℳ̆(x0)", "M_breve_x0", approx_error_coeff_breve(cert, d, x0));
  for (int p : {1, 2, 4}) {
    t.add(fmt::format("ℋ({})", p), fmt::format("H_{}", p), moment_coeff(cert, a.sigma, d, p));
    t.add(fmt::format("ℋ̆({})", p), fmt::format("H_breve_{}", p), moment_coeff_breve(cert, d, p));
  }
  if (a.eps && a.delta) {
    const auto r = goldstein_sigma_rule(cert, d, *a.eps, *a.delta);
    t.add("𝒫", "cal_P", r.cal_p);
    t.add("η₁", "eta1", r.eta1);
    t.add("H", "H", r.h);
    t.add("σ̄", "sigma_bar", r.sigma_bar);
    t.add("σ̄ (simplified)", "sigma_bar_simplified", r.simplified_bound);
    t.add("𝔐₁", "frak_M1", r.m1);
    t.add("𝔐₂", "frak_M2", r.m2);
  }
  if (a.gamma && a.horizon) {
    RateInputs in;
    in.gamma = *a.gamma;
    in.horizon = *a.horizon;
    in.sigma = a.sigma;
    in.x0 = x0;
    in.xstar = fn->minimizer;
    in.inf_value = fn->inf_value;
    in.f_x0 = fn->eval(x0);
    in.mu = fn->growth_mu;
    in.sup_s_norm = fn->sup_minimizer_norm;
    if (in.xstar) t.add("convex RHS", "convex_rate_rhs", convex_rate_rhs(cert, in, d));
    if (in.xstar && fn->level_radius) {
      const auto c = corollary47_constants(*fn, in);
      t.add("M_bd", "M_bd", c.m_bd);
      t.add("C_bd", "C_bd", c.c_bd);
      t.add("C_lev", "C_lev", c.c_lev);
      t.add("final bound", "convex_final_bound", c.final_bound);
    }
    if (in.inf_value) {
      t.add("unconstr. RHS", "unconstrained_rate_rhs", unconstrained_rate_rhs(cert, in, d));
      if (in.mu && in.sup_s_norm) {
        const auto c = corollary410_constants(cert, in, d);
        t.add("C̃_Ω", "C_tilde_omega", c.c_tilde_omega);
        t.add("M̃_Ω", "M_tilde_omega", c.m_tilde_omega);
      }
    }
  }
  if (a.delta && a.horizon && fn->inf_value) {
    Theorem52Inputs in;
    in.x0 = x0;
    in.f_x0 = fn->eval(x0);
    in.inf_value = *fn->inf_value;
    in.mu = fn->growth_mu;
    in.sup_s_norm = fn->sup_minimizer_norm;
    const auto s = theorem52_schedule(cert, d, *a.delta, *a.horizon, in);
    t.add("κ", "kappa", s.kappa);
    t.add("κ₁", "kappa1", s.kappa1);
    t.add("κ₂", "kappa2", s.kappa2);
    t.add("σ̆", "sigma_breve", s.sigma_breve);
    t.add("𝒩̆", "N_breve", s.n_breve);
    t.add("𝒩̆ (simplified)", "N_breve_simplified", s.n_breve_simplified);
    t.add("ε̆", "eps_breve", s.eps_breve);
    t.add("K", "K", s.k_const);
    t.add("K̃_Ω", "K_tilde_omega", s.k_tilde_omega);
    t.add("T ≥ 𝒩̆", "horizon_ok", s.horizon_ok ? 1.0 : 0.0);
    t.add("Goldstein RHS", "goldstein_rate_rhs", s.rhs);
  }
  if (!a.json) fmt::print("{} (d = {})\n", fn->id, d);
  t.print(a.json);
  return 0;
}

int cmd_lambert(double t) {
  const auto w = w_minus1(t);
  fmt::print("W_-1({:.17g}) = {:.17g}\nresidual = {:.3e}\nconverged = {}\n", t, w.value, w.residual, w.converged);
  return w.converged ? 0 : kExitFail;
}

struct SmoothArgs {
  std::string fn;
  std::string x;
  double sigma = 0.1;
  int n = 100000;
  std::uint64_t seed = 1;
  std::string grad = "none";
};

int cmd_smooth(const SmoothArgs& a) {
  const auto fn = make_function_from_spec(a.fn);
  const Vec x = parse_csv(a.x);
  require_dim(x, fn->dim, "x");
  const bool oracle_ok = fn->has_gs_closed_form() || fn->dim <= 2;
  if (a.grad == "none") {
    const auto est = gs_value_mc(*fn, x, a.sigma, a.n, a.seed);
    fmt::print("f_sigma MC     mean {:.12g}  stderr {:.3e}  (n = {})\n", est.mean, est.stderr_, est.n);
    if (oracle_ok) {
      const auto o = gs_value_oracle(*fn, x, a.sigma);
      fmt::print("f_sigma oracle {:.15g}  (error <= {:.1e})\n", o.value, o.error);
    }
    return 0;
  }
  const auto est = a.grad == "one" ? gs_grad_onepoint_mc(*fn, x, a.sigma, a.n, a.seed)
                                   : gs_grad_twopoint_mc(*fn, x, a.sigma, a.n, a.seed);
  fmt::print("grad f_sigma MC ({}-point) mean {}  stderr {}  (n = {})\n", a.grad, fmt_vec(est.mean),
             fmt_vec(est.stderr_), est.n);
  if (oracle_ok) {
    const auto o = gs_grad_oracle(*fn, x, a.sigma);
    fmt::print("grad f_sigma oracle {}  (error <= {:.1e})\n", fmt_vec(o.value), o.error);
  }
  return 0;
}

struct GoldsteinArgs {
  std::string fn;
  std::string x;
  double delta = 0.1;
  std::optional<double> sigma;
  std::optional<double> eps;
  int budget = 200;
  std::uint64_t seed = 0;
};

int cmd_goldstein(const GoldsteinArgs& a) {
  const auto fn = make_function_from_spec(a.fn);
  const Vec x = parse_csv(a.x);
  require_dim(x, fn->dim, "x");
  const bool exact = fn->dim == 1 && fn->has_pieces();
  if (exact) {
    const auto set = goldstein_interval_1d(*fn, x[0], a.delta);
    fmt::print("Goldstein set (delta = {}): [{:.15g}, {:.15g}]\n", a.delta, set.lo, set.hi);
  } else {
    const auto set = goldstein_hull(*fn, x, a.delta, a.budget, a.seed);
    fmt::print("Goldstein set (delta = {}): hull of {} sampled gradients (inner approximation)\n", a.delta,
               set.points.size());
  }
  const auto dist = goldstein_distance(*fn, x, a.delta, a.budget, a.seed);
  fmt::print("dist(0, set) = {:.15g} ({})\n", dist.value,
             dist.exactness == Exactness::exact ? "exact" : "upper bound");
  if (!a.eps) {
    if (a.sigma) fmt::print("grad f_sigma(x) = {}\n", fmt_vec(gs_grad_oracle(*fn, x, *a.sigma).value));
    return 0;
  }
  if (!exact) throw UnsupportedError(fn->id + ": the inclusion check needs an exact 1-D set");
  const double sigma = a.sigma.value_or(goldstein_sigma_rule(fn->certificate, 1, *a.eps, a.delta).sigma_bar);
  const auto chk = check_inclusion_thm38(*fn, x[0], sigma, a.delta, *a.eps);
  fmt::print("sigma = {:.10g} (rule sigma_bar = {:.10g}{})\n", sigma, chk.sigma_bar,
             chk.sigma_within_rule ? "" : ", ABOVE the rule");
  fmt::print("inclusion: dist(grad f_sigma, set) = {:.6e}  bound = {:.6e}  margin = {:.6e}  {}\n", chk.lhs,
             chk.rhs, chk.margin, chk.satisfied ? "PASS" : "FAIL");
  return chk.satisfied ? 0 : kExitFail;
}

int report_run(const RunRecord& rec, const fs::path& dir) {
  const auto& r = rec.resolved;
  for (const auto& w : r.warnings) fmt::print(stderr, "warning: {}\n", w);
  fmt::print("config_hash  {}\noutput       {}\n", rec.config_hash, dir.string());
  fmt::print("sigma        {:.10g}\ngamma        {:.10g}\nmetric       {}\n", r.sigma, r.gamma, r.metric);
  const auto& g = rec.aggregate;
  fmt::print("seeds        {}\nmean min_k   {:.10g} +- {:.3g}\n", g.seeds, g.mean_min, g.stderr_min);
  fmt::print("{:<12} {}\n", r.theorem, fmt_opt(r.theorem_rhs));
  if (!rec.passed) {
    fmt::print("result       no bound applies\n");
    return 0;
  }
  fmt::print("result       {}\n", *rec.passed ? "PASS" : "FAIL");
  return *rec.passed ? 0 : kExitFail;
}

int cmd_aggregate(const fs::path& dir) {
  const auto g = aggregate(dir);
  if (g.malformed > 0) fmt::print(stderr, "warning: skipped {} malformed records\n", g.malformed);
  fmt::print("seeds           {}\nmean min_k      {:.10g} +- {:.3g}\nargmin of mean  {}\nrhs             {}\n",
             g.seeds, g.mean_min, g.stderr_min, g.argmin_of_mean, fmt_opt(g.theorem_rhs));
  fmt::print("wrote {}\n", (dir / "aggregate.csv").string());
  if (!g.theorem_rhs) return 0;
  const bool ok = g.mean_min <= *g.theorem_rhs + 4.0 * g.stderr_min;
  fmt::print("result          {}\n", ok ? "PASS" : "FAIL");
  return ok ? 0 : kExitFail;
}

int cmd_verify(const std::string& suite, const VerifyOptions& opt, const std::string& json_out) {
  const auto rep = verify_suite(suite, opt);
  for (const auto& c : rep.checks) {
    fmt::print("{} {:<36} margin {:>12.4e}  {}\n", c.passed ? "PASS" : "FAIL", c.name, c.margin, c.detail);
  }
  fmt::print("{}: {} checks, {} failed\n", rep.suite, rep.checks.size(), rep.failures());
  if (!json_out.empty()) write_text(json_out, rep.to_json() + "\n");
  return rep.passed() ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zeroth-order Gaussian-smoothing toolkit for SPB functions"};
  app.require_subcommand(1);

  bool catalog_json = false;
  auto* catalog = app.add_subcommand("catalog", "List catalog functions");
  catalog->add_flag("--json", catalog_json, "Machine-readable output");

  ConstantsArgs ca;
  auto* constants = app.add_subcommand("constants", "Print every derived constant for a function");
  constants->add_option("--fn", ca.fn, "Catalog id")->required();
  constants->add_option("--sigma", ca.sigma, "Smoothing parameter")->required();
  constants->add_option("--d", ca.dim, "Dimension (variable-dimension members)");
  constants->add_option("--x0", ca.x0, "Initial point, comma separated (default 0)");
  constants->add_option("--eps", ca.eps, "Goldstein epsilon");
  constants->add_option("--delta", ca.delta, "Goldstein delta");
  constants->add_option("--gamma", ca.gamma, "Stepsize scale");
  constants->add_option("--T", ca.horizon, "Horizon");
  constants->add_flag("--json", ca.json, "Machine-readable output");

  double lambert_t = 0.0;
  auto* lambert = app.add_subcommand("lambert", "Evaluate the lower branch W_-1");
  lambert->add_option("--t", lambert_t, "Argument in [-1/e, 0)")->required();

  SmoothArgs sa;
  auto* smooth = app.add_subcommand("smooth", "Monte Carlo estimates of f_sigma or its gradient");
  smooth->add_option("--fn", sa.fn, "Catalog id")->required();
  smooth->add_option("--x", sa.x, "Point, comma separated")->required();
  smooth->add_option("--sigma", sa.sigma, "Smoothing parameter")->required();
  smooth->add_option("--n", sa.n, "Samples");
  smooth->add_option("--seed", sa.seed, "Seed");
  smooth->add_option("--grad", sa.grad, "Estimate the gradient")->check(CLI::IsMember({"none", "one", "two"}));

  GoldsteinArgs ga;
  auto* goldstein = app.add_subcommand("goldstein", "Goldstein subdifferential and inclusion margin");
  goldstein->add_option("--fn", ga.fn, "Catalog id")->required();
  goldstein->add_option("--x", ga.x, "Point, comma separated")->required();
  goldstein->add_option("--delta", ga.delta, "Radius")->required();
  goldstein->add_option("--sigma", ga.sigma, "Smoothing parameter (default: the rule's sigma_bar)");
  goldstein->add_option("--eps", ga.eps, "Tolerance for the inclusion check");
  goldstein->add_option("--budget", ga.budget, "Gradient samples for multi-dimensional hulls");
  goldstein->add_option("--seed", ga.seed, "Sampling seed");

  ExperimentConfig cfg;
  std::string config_file, sigma_rule, out_dir, x0_text;
  std::optional<double> sigma_value, eps, delta;
  auto* optimize = app.add_subcommand("optimize", "Run Algorithm 1 or 2 over many seeds");
  optimize->add_option("--config", config_file, "JSON config; other flags override it");
  auto* o_alg = optimize->add_option("--alg", cfg.algorithm, "1 (projected) or 2 (unconstrained)")
                    ->check(CLI::IsMember({1, 2}));
  auto* o_fn = optimize->add_option("--fn", cfg.fn_id, "Catalog id, optionally ID:dim");
  auto* o_x0 = optimize->add_option("--x0", x0_text, "Initial point, comma separated");
  optimize->add_option("--sigma", sigma_value, "Explicit smoothing parameter");
  optimize->add_option("--sigma-rule", sigma_rule, "thm38 or thm52")->check(CLI::IsMember({"thm38", "thm52"}));
  optimize->add_option("--eps", eps, "Epsilon for the thm38 rule");
  optimize->add_option("--delta", delta, "Delta for the sigma rules");
  auto* o_gamma = optimize->add_option("--gamma", cfg.gamma, "Stepsize scale in (0, 1]");
  auto* o_t = optimize->add_option("--T", cfg.horizon, "Horizon");
  auto* o_seeds = optimize->add_option("--seeds", cfg.seeds, "Number of seeds");
  auto* o_master = optimize->add_option("--master-seed", cfg.master_seed, "Master seed");
  auto* o_set = optimize->add_option("--set", cfg.set, "whole | ball:R | ball:c:R | box:lo:hi");
  std::optional<double> gdelta;
  optimize->add_option("--goldstein-delta", gdelta, "Track dist(0, Goldstein set) with this delta");
  auto* o_mc = optimize->add_option("--wtilde-mc-n", cfg.wtilde_mc_n, "MC draws per iterate for w~");
  auto* o_threads = optimize->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
  optimize->add_option("--out", out_dir, "Output directory (default $SPBZO_OUTPUT_DIR/<fn>-alg<k>-<hash>)");

  std::string suite;
  VerifyOptions vopt;
  std::string verify_json;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", suite, "lemmas | goldstein | all");
  verify->add_option("--seed", vopt.seed, "Seed");
  verify->add_option("--corrupt-scale", vopt.certificate_scale, "Multiply R1 and R2 of every certificate");
  verify->add_flag("--quick", vopt.quick, "Fewer samples");
  verify->add_option("--json", verify_json, "Also write the report to this file");

  std::string agg_dir;
  auto* agg = app.add_subcommand("aggregate", "Recompute aggregates from per-seed files");
  agg->add_option("--dir", agg_dir, "Run directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (catalog->parsed()) return cmd_catalog(catalog_json);
    if (constants->parsed()) return cmd_constants(ca);
    if (lambert->parsed()) return cmd_lambert(lambert_t);
    if (smooth->parsed()) return cmd_smooth(sa);
    if (goldstein->parsed()) return cmd_goldstein(ga);
    if (verify->parsed()) return cmd_verify(suite, vopt, verify_json);
    if (agg->parsed()) return cmd_aggregate(agg_dir);
    if (optimize->parsed()) {
      ExperimentConfig run = cfg;
      if (!config_file.empty()) {
        run = config_from_json(read_text(config_file));
        // Explicit flags win over the file.
        if (o_alg->count()) run.algorithm = cfg.algorithm;
        if (o_fn->count()) run.fn_id = cfg.fn_id;
        if (o_gamma->count()) run.gamma = cfg.gamma;
        if (o_t->count()) run.horizon = cfg.horizon;
        if (o_seeds->count()) run.seeds = cfg.seeds;
        if (o_master->count()) run.master_seed = cfg.master_seed;
        if (o_set->count()) run.set = cfg.set;
        if (o_mc->count()) run.wtilde_mc_n = cfg.wtilde_mc_n;
        if (o_threads->count()) run.threads = cfg.threads;
      }
      if (o_x0->count()) {
        run.x0 = parse_csv(x0_text);
      } else if (run.x0.size() == 0) {
        run.x0 = Vec::Zero(make_function_from_spec(run.fn_id)->dim);
      }
      if (!sigma_rule.empty()) {
        run.sigma.kind = sigma_rule == "thm38" ? SigmaSpec::Kind::thm38 : SigmaSpec::Kind::thm52;
        run.sigma.epsilon = eps.value_or(0.0);
        run.sigma.delta = delta.value_or(0.0);
      } else if (sigma_value) {
        run.sigma = SigmaSpec{SigmaSpec::Kind::explicit_value, *sigma_value, 0.0, 0.0};
      } else if (config_file.empty()) {
        throw ConfigError("pass --sigma or --sigma-rule");
      }
      if (gdelta) run.goldstein_delta = gdelta;
      if (!out_dir.empty()) {
        run.output_dir = out_dir;
      } else if (run.output_dir.empty()) {
        std::string stem = run.fn_id;
        for (char& c : stem) c = (c == ':') ? '_' : c;
        run.output_dir = default_output_root() / fmt::format("{}-alg{}-{}", stem, run.algorithm, config_hash(run));
      }
      const auto rec = run_experiment(run);
      return report_run(rec, run.output_dir);
    }
  } catch (const InputError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kExitUsage;
  } catch (const DomainError& e) {
    fmt::print(stderr, "domain error: {}\n", e.what());
    return kExitUsage;
  } catch (const UnsupportedError& e) {
    fmt::print(stderr, "unsupported: {}\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitFail;
  }
  return kExitUsage;
}
