#include "spbzo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "json.hpp"
#include "spbzo/catalog.hpp"
#include "spbzo/json_io.hpp"
#include "spbzo/optimizers.hpp"
#include "spbzo/rng.hpp"
#include "spbzo/stationarity.hpp"

namespace spbzo {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const char* sigma_kind_name(SigmaSpec::Kind k) {
  switch (k) {
    case SigmaSpec::Kind::explicit_value:
      return "explicit";
    case SigmaSpec::Kind::thm38:
      return "thm38";
    case SigmaSpec::Kind::thm52:
      return "thm52";
  }
  return "explicit";
}

SigmaSpec::Kind sigma_kind_from(const std::string& s) {
  if (s == "explicit") return SigmaSpec::Kind::explicit_value;
  if (s == "thm38") return SigmaSpec::Kind::thm38;
  if (s == "thm52") return SigmaSpec::Kind::thm52;
  throw ConfigError("unknown sigma rule: " + s);
}

json vec_json(const Vec& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Vec json_vec(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Vec>(values.data(), static_cast<Eigen::Index>(values.size()));
}

template <typename T>
json opt_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json semantic_json(const ExperimentConfig& cfg) {
  json j;
  j["fn"] = cfg.fn_id;
  j["algorithm"] = cfg.algorithm;
  j["x0"] = vec_json(cfg.x0);
  j["sigma"] = {{"rule", sigma_kind_name(cfg.sigma.kind)},
                {"value", cfg.sigma.value},
                {"epsilon", cfg.sigma.epsilon},
                {"delta", cfg.sigma.delta}};
  j["gamma"] = cfg.gamma;
  j["T"] = cfg.horizon;
  j["seeds"] = cfg.seeds;
  j["master_seed"] = cfg.master_seed;
  j["set"] = cfg.set;
  j["goldstein_delta"] = opt_json(cfg.goldstein_delta);
  j["wtilde_mc_n"] = cfg.wtilde_mc_n;
  return j;
}

std::string seed_stem(int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "seed_%05d", index);
  return buf;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double stderr_of(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

json resolved_json(const ResolvedExperiment& r) {
  json j;
  j["sigma"] = r.sigma;
  j["gamma"] = r.gamma;
  j["metric"] = r.metric;
  j["delta"] = opt_json(r.delta);
  j["theorem"] = r.theorem;
  j["theorem_rhs"] = opt_json(r.theorem_rhs);
  j["warnings"] = r.warnings;
  if (r.sigma_rule) {
    const auto& s = *r.sigma_rule;
    j["sigma_rule"] = {{"cal_p", s.cal_p},         {"eta1", s.eta1}, {"H", s.h},
                       {"sigma_bar", s.sigma_bar}, {"m1", s.m1},     {"m2", s.m2},
                       {"simplified_bound", opt_json(s.simplified_bound)}};
  }
  if (r.schedule52) {
    const auto& s = *r.schedule52;
    j["schedule"] = {{"kappa", s.kappa},
                     {"kappa1", opt_json(s.kappa1)},
                     {"kappa2", s.kappa2},
                     {"sigma_breve", s.sigma_breve},
                     {"n_breve", s.n_breve},
                     {"eps_breve", s.eps_breve},
                     {"K", s.k_const},
                     {"K_tilde_omega", opt_json(s.k_tilde_omega)},
                     {"horizon_ok", s.horizon_ok},
                     {"rhs", opt_json(s.rhs)}};
  }
  return j;
}

}  // namespace

std::string config_to_json(const ExperimentConfig& cfg) {
  json j = semantic_json(cfg);
  j["output_dir"] = cfg.output_dir.string();
  j["threads"] = cfg.threads;
  return j.dump(2);
}

ExperimentConfig config_from_json(const std::string& text) {
  const json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ConfigError("config is not a JSON object");
  ExperimentConfig cfg;
  try {
    cfg.fn_id = j.value("fn", cfg.fn_id);
    cfg.algorithm = j.value("algorithm", cfg.algorithm);
    if (j.contains("x0")) cfg.x0 = json_vec(j["x0"]);
    if (j.contains("sigma")) {
      const auto& s = j["sigma"];
      if (s.is_number()) {
        cfg.sigma.value = s.get<double>();
      } else {
        cfg.sigma.kind = sigma_kind_from(s.value("rule", std::string("explicit")));
        cfg.sigma.value = s.value("value", 0.0);
        cfg.sigma.epsilon = s.value("epsilon", 0.0);
        cfg.sigma.delta = s.value("delta", 0.0);
      }
    }
    cfg.gamma = j.value("gamma", cfg.gamma);
    cfg.horizon = j.value("T", cfg.horizon);
    cfg.seeds = j.value("seeds", cfg.seeds);
    cfg.master_seed = j.value("master_seed", cfg.master_seed);
    cfg.set = j.value("set", cfg.set);
    if (j.contains("goldstein_delta") && !j["goldstein_delta"].is_null()) {
      cfg.goldstein_delta = j["goldstein_delta"].get<double>();
    }
    cfg.wtilde_mc_n = j.value("wtilde_mc_n", cfg.wtilde_mc_n);
    cfg.output_dir = j.value("output_dir", std::string());
    cfg.threads = j.value("threads", cfg.threads);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config field: ") + e.what());
  }
  return cfg;
}

std::string config_hash(const ExperimentConfig& cfg) {
  const std::string canon = semantic_json(cfg).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ResolvedExperiment resolve_experiment(const ExperimentConfig& cfg) {
  SpbFunctionPtr fn;
  try {
    fn = make_function_from_spec(cfg.fn_id);
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
  if (cfg.x0.size() != fn->dim) {
    throw ConfigError("x0 has dimension " + std::to_string(cfg.x0.size()) + ", " + fn->id + " needs " +
                      std::to_string(fn->dim));
  }
  if (cfg.algorithm != 1 && cfg.algorithm != 2) throw ConfigError("algorithm must be 1 or 2");
  if (cfg.horizon < 0) throw ConfigError("T must be >= 0");
  if (cfg.seeds < 1) throw ConfigError("seeds must be >= 1");
  FeasibleSet set;
  try {
    set = FeasibleSet::parse(cfg.set, fn->dim);
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
  if (cfg.algorithm == 2 && set.kind != FeasibleSet::Kind::whole_space) {
    throw ConfigError("algorithm 2 is unconstrained; use set \"whole\"");
  }
  if (cfg.algorithm == 1 && !set.contains(cfg.x0)) throw ConfigError("x0 is not in the feasible set");

  ResolvedExperiment r;
  const auto& cert = fn->certificate;
  const int d = fn->dim;
  switch (cfg.sigma.kind) {
    case SigmaSpec::Kind::explicit_value:
      if (!(cfg.sigma.value > 0.0)) throw ConfigError("explicit sigma must be positive");
      r.sigma = cfg.sigma.value;
      r.gamma = cfg.gamma;
      r.delta = cfg.goldstein_delta;
      break;
    case SigmaSpec::Kind::thm38: {
      if (!(cfg.sigma.epsilon > 0.0) || !(cfg.sigma.delta > 0.0)) {
        throw ConfigError("thm38 rule needs epsilon > 0 and delta > 0");
      }
      r.sigma_rule = goldstein_sigma_rule(cert, d, cfg.sigma.epsilon, cfg.sigma.delta);
      if (!r.sigma_rule->simplified_bound) {
        r.warnings.push_back("epsilon/delta outside 0 < epsilon < min{5 R2, 1}, 0 < delta < 1");
      }
      r.sigma = r.sigma_rule->sigma_bar;
      r.gamma = cfg.gamma;
      r.delta = cfg.goldstein_delta ? cfg.goldstein_delta : cfg.sigma.delta;
      break;
    }
    case SigmaSpec::Kind::thm52: {
      if (!(cfg.sigma.delta > 0.0 && cfg.sigma.delta < 1.0)) throw ConfigError("thm52 rule needs delta in (0, 1)");
      if (cfg.horizon < 1) throw ConfigError("thm52 rule needs T >= 1");
      if (!fn->inf_value) throw ConfigError(fn->id + ": thm52 rule needs a known infimum");
      Theorem52Inputs in;
      in.x0 = cfg.x0;
      in.f_x0 = fn->eval(cfg.x0);
      in.inf_value = *fn->inf_value;
      in.mu = fn->growth_mu;
      in.sup_s_norm = fn->sup_minimizer_norm;
      r.schedule52 = theorem52_schedule(cert, d, cfg.sigma.delta, cfg.horizon, in);
      if (!r.schedule52->horizon_ok) {
        throw ConfigError("thm52 rule needs T >= " + std::to_string(r.schedule52->n_breve) +
                          "; pass an explicit sigma to run anyway");
      }
      r.sigma = r.schedule52->sigma_breve;
      r.gamma = r.sigma;
      r.delta = cfg.sigma.delta;
      break;
    }
  }
  if (!(r.gamma > 0.0 && r.gamma <= 1.0)) throw ConfigError("gamma must lie in (0, 1]");

  RateInputs rin;
  rin.gamma = r.gamma;
  rin.horizon = cfg.horizon;
  rin.sigma = r.sigma;
  rin.x0 = cfg.x0;
  rin.xstar = fn->minimizer;
  rin.inf_value = fn->inf_value;
  rin.f_x0 = fn->eval(cfg.x0);

  if (cfg.sigma.kind == SigmaSpec::Kind::thm52 || (cfg.goldstein_delta && r.delta)) {
    r.metric = "goldstein";
    r.theorem = "goldstein_rate";
    if (cfg.sigma.kind == SigmaSpec::Kind::thm52) r.theorem_rhs = r.schedule52->rhs;
    if (!(fn->dim == 1 && fn->has_pieces())) {
      r.warnings.push_back("Goldstein distances are sampled upper bounds for " + fn->id);
    }
  } else if (cfg.algorithm == 1) {
    if (!fn->inf_value) throw ConfigError(fn->id + ": relative gap needs a known optimal value");
    r.metric = "relative_gap";
    r.theorem = "convex_rate";
    if (fn->minimizer) r.theorem_rhs = convex_rate_rhs(cert, rin, d);
    if (!fn->convex) r.warnings.push_back(fn->id + " is not flagged convex");
  } else {
    r.metric = "wtilde";
    r.theorem = "unconstrained_rate";
    if (fn->inf_value) r.theorem_rhs = unconstrained_rate_rhs(cert, rin, d);
  }
  return r;
}

AggregateResult aggregate(const fs::path& run_dir) {
  if (!fs::is_directory(run_dir)) throw InputError("not a directory: " + run_dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(run_dir)) {
    const auto name = entry.path().filename().string();
    if (name.rfind("seed_", 0) == 0 && entry.path().extension() == ".jsonl") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  AggregateResult agg;
  std::map<int, std::vector<double>> per_k;
  std::vector<double> mins;
  for (const auto& f : files) {
    const auto mf = read_metric_jsonl(f);
    agg.malformed += mf.malformed;
    if (mf.points.empty()) continue;
    double best = mf.points[0].metric;
    int best_k = mf.points[0].k;
    for (const auto& p : mf.points) {
      per_k[p.k].push_back(p.metric);
      if (p.metric < best || (p.metric == best && p.k < best_k)) {
        best = p.metric;
        best_k = p.k;
      }
    }
    mins.push_back(best);
  }
  agg.seeds = static_cast<int>(mins.size());
  if (agg.seeds == 0) throw InputError("no trajectory records in " + run_dir.string());
  agg.mean_min = mean_of(mins);
  agg.stderr_min = stderr_of(mins, agg.mean_min);

  const fs::path run_json = run_dir / "run.json";
  if (fs::exists(run_json)) {
    const json j = json::parse(read_text(run_json), nullptr, false);
    if (!j.is_discarded() && j.contains("resolved") && j["resolved"]["theorem_rhs"].is_number()) {
      agg.theorem_rhs = j["resolved"]["theorem_rhs"].get<double>();
    }
  }

  std::vector<std::vector<double>> rows;
  double best_mean = std::numeric_limits<double>::infinity();
  for (const auto& [k, vals] : per_k) {
    const double mean = mean_of(vals);
    const double se = stderr_of(vals, mean);
    agg.mean_metric.push_back(mean);
    agg.stderr_metric.push_back(se);
    if (mean < best_mean) {
      best_mean = mean;
      agg.argmin_of_mean = k;
    }
    rows.push_back({static_cast<double>(k), mean, se, agg.theorem_rhs.value_or(std::nan(""))});
  }
  write_csv(run_dir / "aggregate.csv", {"k", "mean_metric", "stderr", "theorem_rhs"}, rows);
  return agg;
}

std::string run_record_to_json(const RunRecord& rec) {
  json j;
  j["config_hash"] = rec.config_hash;
  j["config"] = semantic_json(rec.config);
  j["resolved"] = resolved_json(rec.resolved);
  json seeds = json::array();
  for (const auto& s : rec.per_seed) {
    seeds.push_back({{"index", s.index},
                     {"seed", s.seed},
                     {"argmin_k", s.argmin_k},
                     {"min_metric", s.min_metric},
                     {"goldstein_at_argmin", opt_json(s.goldstein_at_argmin)},
                     {"goldstein_exact", s.goldstein_exact},
                     {"oracle_calls", s.oracle_calls}});
  }
  j["per_seed"] = seeds;
  const auto& a = rec.aggregate;
  j["aggregate"] = {{"seeds", a.seeds},
                    {"malformed", a.malformed},
                    {"mean_min", a.mean_min},
                    {"stderr_min", a.stderr_min},
                    {"argmin_of_mean", a.argmin_of_mean},
                    {"theorem_rhs", opt_json(a.theorem_rhs)}};
  j["passed"] = opt_json(rec.passed);
  return j.dump(2);
}

RunRecord run_experiment(const ExperimentConfig& cfg) {
  const auto resolved = resolve_experiment(cfg);
  if (cfg.output_dir.empty()) throw ConfigError("output_dir is required");
  const auto fn = make_function_from_spec(cfg.fn_id);
  const auto set = FeasibleSet::parse(cfg.set, fn->dim);
  const fs::path dir = cfg.output_dir;
  fs::create_directories(dir);
  // Stale files from an earlier run in the same directory would leak into the aggregate.
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().filename().string().rfind("seed_", 0) == 0) fs::remove(entry.path());
  }

  RunRecord rec;
  rec.config = cfg;
  rec.config_hash = config_hash(cfg);
  rec.resolved = resolved;
  {
    json run;
    run["config_hash"] = rec.config_hash;
    run["config"] = semantic_json(cfg);
    run["resolved"] = resolved_json(resolved);
    write_text(dir / "run.json", run.dump(2) + "\n");
  }

  const Schedule schedule = Schedule::constant_over_sqrt(resolved.gamma);
  rec.per_seed.resize(cfg.seeds);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= cfg.seeds) return;
      try {
        const std::uint64_t seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(i));
        Trajectory traj = cfg.algorithm == 1
                              ? run_algorithm1(*fn, set, cfg.x0, resolved.sigma, schedule, cfg.horizon, seed)
                              : run_algorithm2(*fn, cfg.x0, resolved.sigma, schedule, cfg.horizon, seed);
        traj.config_hash = rec.config_hash;
        std::vector<double> metric;
        if (resolved.metric == "relative_gap") {
          metric = relative_gap_series(traj, *fn);
        } else if (resolved.metric == "wtilde") {
          metric = wtilde_series(traj, *fn, resolved.sigma, cfg.wtilde_mc_n, splitmix64(seed));
        } else {
          metric.reserve(traj.fvals.size());
          for (std::size_t k = 0; k < traj.fvals.size(); ++k) {
            metric.push_back(goldstein_distance(*fn, traj.xs[k], *resolved.delta, 200, seed + k).value);
          }
        }
        const std::string stem = seed_stem(i);
        write_trajectory_jsonl(dir / (stem + ".jsonl"), traj, metric);

        SeedSummary s;
        s.index = i;
        s.seed = seed;
        s.argmin_k = static_cast<int>(argmin_first(metric));
        s.min_metric = metric[s.argmin_k];
        s.oracle_calls = traj.oracle_calls;
        if (resolved.delta && (fn->has_pieces() || fn->has_analytic_grad())) {
          const auto gd = goldstein_distance(*fn, traj.xs[s.argmin_k], *resolved.delta, 200, seed);
          s.goldstein_at_argmin = gd.value;
          s.goldstein_exact = gd.exactness == Exactness::exact;
        }
        json sj = {{"index", s.index},
                   {"seed", s.seed},
                   {"config_hash", rec.config_hash},
                   {"argmin_k", s.argmin_k},
                   {"min_metric", s.min_metric},
                   {"final_x", vec_json(traj.xs.back())},
                   {"oracle_calls", s.oracle_calls},
                   {"goldstein_at_argmin", opt_json(s.goldstein_at_argmin)},
                   {"warnings", traj.warnings}};
        write_text(dir / (stem + ".summary.json"), sj.dump(2) + "\n");
        rec.per_seed[i] = s;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  int threads = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, cfg.seeds);
  {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  rec.aggregate = aggregate(dir);
  if (rec.aggregate.theorem_rhs) {
    rec.passed = rec.aggregate.mean_min <= *rec.aggregate.theorem_rhs + 4.0 * rec.aggregate.stderr_min;
  }
  write_text(dir / "summary.json", run_record_to_json(rec) + "\n");
  return rec;
}

}  // namespace spbzo
