#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "spbzo/errors.hpp"
#include "spbzo/harness.hpp"
#include "spbzo/json_io.hpp"

using namespace spbzo;
namespace fs = std::filesystem;

namespace {

Vec v1(double a) { return Vec::Constant(1, a); }
Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("spbzo_test_" + name);
  fs::remove_all(p);
  return p;
}

ExperimentConfig small_quad() {
  ExperimentConfig cfg;
  cfg.fn_id = "QUAD";
  cfg.algorithm = 1;
  cfg.x0 = v2(2, 1);
  cfg.sigma.value = 0.1;
  cfg.gamma = 1.0;
  cfg.horizon = 40;
  cfg.seeds = 6;
  cfg.master_seed = 5;
  cfg.set = "ball:5";
  return cfg;
}

std::string bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Config, JsonRoundTrip) {
  auto cfg = small_quad();
  cfg.goldstein_delta = 0.25;
  cfg.output_dir = "/tmp/x";
  cfg.threads = 3;
  const auto back = config_from_json(config_to_json(cfg));
  EXPECT_EQ(back.fn_id, cfg.fn_id);
  EXPECT_EQ(back.x0, cfg.x0);
  EXPECT_EQ(back.sigma.value, cfg.sigma.value);
  EXPECT_EQ(back.horizon, cfg.horizon);
  EXPECT_EQ(back.set, cfg.set);
  EXPECT_EQ(back.goldstein_delta, cfg.goldstein_delta);
  EXPECT_EQ(back.output_dir, cfg.output_dir);
  EXPECT_EQ(back.threads, 3);
  EXPECT_EQ(config_hash(back), config_hash(cfg));
}

TEST(Config, PlainNumberSigma) {
  const auto cfg = config_from_json(R"({"fn":"ABS1D","x0":[1],"sigma":0.5})");
  EXPECT_EQ(cfg.sigma.kind, SigmaSpec::Kind::explicit_value);
  EXPECT_EQ(cfg.sigma.value, 0.5);
}

TEST(Config, BadJsonIsAConfigError) {
  EXPECT_THROW(config_from_json("[1,2]"), ConfigError);
  EXPECT_THROW(config_from_json("{"), ConfigError);
  EXPECT_THROW(config_from_json(R"({"T":"many"})"), ConfigError);
  EXPECT_THROW(config_from_json(R"({"sigma":{"rule":"magic"}})"), ConfigError);
}

TEST(Config, HashIgnoresOutputDirAndThreads) {
  auto a = small_quad();
  auto b = a;
  b.output_dir = "/elsewhere";
  b.threads = 7;
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).size(), 16u);
  b.horizon = 41;
  EXPECT_NE(config_hash(a), config_hash(b));
  b = a;
  b.master_seed = 6;
  EXPECT_NE(config_hash(a), config_hash(b));
}

TEST(Resolve, ConvexRunGetsTheConvexRate) {
  const auto r = resolve_experiment(small_quad());
  EXPECT_EQ(r.metric, "relative_gap");
  EXPECT_EQ(r.theorem, "convex_rate");
  ASSERT_TRUE(r.theorem_rhs);
  EXPECT_GT(*r.theorem_rhs, 0.0);
}

TEST(Resolve, RejectsBadConfigs) {
  auto c = small_quad();
  c.x0 = v1(1);
  EXPECT_THROW(resolve_experiment(c), ConfigError);
  c = small_quad();
  c.fn_id = "NOPE";
  EXPECT_THROW(resolve_experiment(c), ConfigError);
  c = small_quad();
  c.algorithm = 3;
  EXPECT_THROW(resolve_experiment(c), ConfigError);
  c = small_quad();
  c.algorithm = 2;
  EXPECT_THROW(resolve_experiment(c), ConfigError);
  c = small_quad();
  c.x0 = v2(10, 0);
  EXPECT_THROW(resolve_experiment(c), ConfigError);
  c = small_quad();
  c.sigma.value = 0.0;
  EXPECT_THROW(resolve_experiment(c), ConfigError);
  c = small_quad();
  c.gamma = 2.0;
  EXPECT_THROW(resolve_experiment(c), ConfigError);
  c = small_quad();
  c.seeds = 0;
  EXPECT_THROW(resolve_experiment(c), ConfigError);
  c = small_quad();
  c.set = "ball:";
  EXPECT_THROW(resolve_experiment(c), ConfigError);
}

TEST(Resolve, Theorem52RuleNeedsALongEnoughHorizon) {
  ExperimentConfig c;
  c.fn_id = "QUAD";
  c.algorithm = 2;
  c.x0 = v2(2, 1);
  c.sigma.kind = SigmaSpec::Kind::thm52;
  c.sigma.delta = 0.5;
  c.horizon = 10;
  EXPECT_THROW(resolve_experiment(c), ConfigError);
  c.horizon = 200;
  const auto r = resolve_experiment(c);
  EXPECT_EQ(r.metric, "goldstein");
  EXPECT_EQ(r.sigma, r.gamma);
  ASSERT_TRUE(r.schedule52);
  EXPECT_EQ(r.sigma, r.schedule52->sigma_breve);
  c.sigma.delta = 1.0;
  EXPECT_THROW(resolve_experiment(c), ConfigError);
  c.fn_id = "RELU-NET";
  c.sigma.delta = 0.5;
  EXPECT_THROW(resolve_experiment(c), ConfigError);
}

TEST(Resolve, Theorem38RuleUsesSigmaBar) {
  ExperimentConfig c;
  c.fn_id = "ABS1D";
  c.algorithm = 2;
  c.x0 = v1(1);
  c.sigma.kind = SigmaSpec::Kind::thm38;
  c.sigma.epsilon = 0.1;
  c.sigma.delta = 0.5;
  const auto r = resolve_experiment(c);
  ASSERT_TRUE(r.sigma_rule);
  EXPECT_EQ(r.sigma, r.sigma_rule->sigma_bar);
  EXPECT_EQ(r.metric, "wtilde");
  EXPECT_EQ(r.delta, 0.5);
  c.sigma.epsilon = 0.0;
  EXPECT_THROW(resolve_experiment(c), ConfigError);
}

TEST(Run, RequiresAnOutputDirectory) { EXPECT_THROW(run_experiment(small_quad()), ConfigError); }

TEST(Run, WritesEveryArtifact) {
  auto cfg = small_quad();
  cfg.output_dir = scratch("artifacts");
  const auto rec = run_experiment(cfg);
  for (const char* f : {"run.json", "aggregate.csv", "summary.json", "seed_00000.jsonl", "seed_00005.jsonl",
                        "seed_00003.summary.json"}) {
    EXPECT_TRUE(fs::exists(cfg.output_dir / f)) << f;
  }
  EXPECT_EQ(rec.aggregate.seeds, 6);
  EXPECT_EQ(rec.aggregate.malformed, 0);
  EXPECT_EQ(rec.aggregate.mean_metric.size(), 41u);
  ASSERT_TRUE(rec.passed);
  EXPECT_TRUE(*rec.passed);

  std::ifstream in(cfg.output_dir / "seed_00000.jsonl");
  std::string line;
  std::getline(in, line);
  const auto j = nlohmann::json::parse(line);
  EXPECT_EQ(j["k"], 0);
  EXPECT_EQ(j["x"][0], 2.0);
  EXPECT_EQ(line.rfind("{\"k\":0,\"x\":", 0), 0u);

  const auto s = nlohmann::json::parse(read_text(cfg.output_dir / "seed_00002.summary.json"));
  EXPECT_EQ(s["config_hash"], config_hash(cfg));
  EXPECT_EQ(s["index"], 2);
}

TEST(Run, ZeroHorizonSingleSeed) {
  auto cfg = small_quad();
  cfg.horizon = 0;
  cfg.seeds = 1;
  cfg.output_dir = scratch("t0");
  const auto rec = run_experiment(cfg);
  EXPECT_EQ(rec.aggregate.mean_metric.size(), 1u);
  EXPECT_EQ(rec.aggregate.stderr_min, 0.0);
  // (f(x0) - 0) / (||x0|| + 1)
  EXPECT_DOUBLE_EQ(rec.aggregate.mean_min, 2.5 / (std::sqrt(5.0) + 1.0));
}

TEST(Run, OutputDoesNotDependOnThreadCount) {
  auto a = small_quad();
  a.output_dir = scratch("threads1");
  a.threads = 1;
  auto b = a;
  b.output_dir = scratch("threads4");
  b.threads = 4;
  run_experiment(a);
  run_experiment(b);
  for (const char* f : {"seed_00000.jsonl", "seed_00004.jsonl", "aggregate.csv", "run.json"}) {
    EXPECT_EQ(bytes(a.output_dir / f), bytes(b.output_dir / f)) << f;
  }
}

TEST(Run, RerunRemovesStaleSeedFiles) {
  auto cfg = small_quad();
  cfg.output_dir = scratch("stale");
  run_experiment(cfg);
  cfg.seeds = 2;
  const auto rec = run_experiment(cfg);
  EXPECT_FALSE(fs::exists(cfg.output_dir / "seed_00005.jsonl"));
  EXPECT_EQ(rec.aggregate.seeds, 2);
}

TEST(Aggregate, IsIdempotent) {
  auto cfg = small_quad();
  cfg.output_dir = scratch("idem");
  const auto rec = run_experiment(cfg);
  const std::string first = bytes(cfg.output_dir / "aggregate.csv");
  const auto again = aggregate(cfg.output_dir);
  EXPECT_EQ(bytes(cfg.output_dir / "aggregate.csv"), first);
  EXPECT_EQ(again.mean_min, rec.aggregate.mean_min);
  EXPECT_EQ(again.stderr_min, rec.aggregate.stderr_min);
  EXPECT_EQ(again.theorem_rhs, rec.aggregate.theorem_rhs);
}

TEST(Aggregate, IdenticalSeedsHaveZeroStderr) {
  auto cfg = small_quad();
  cfg.seeds = 1;
  cfg.output_dir = scratch("dup");
  run_experiment(cfg);
  fs::copy_file(cfg.output_dir / "seed_00000.jsonl", cfg.output_dir / "seed_00001.jsonl");
  const auto a = aggregate(cfg.output_dir);
  EXPECT_EQ(a.seeds, 2);
  EXPECT_EQ(a.stderr_min, 0.0);
  for (double s : a.stderr_metric) EXPECT_EQ(s, 0.0);
}

TEST(Aggregate, CountsMalformedLines) {
  auto cfg = small_quad();
  cfg.seeds = 2;
  cfg.output_dir = scratch("malformed");
  const auto rec = run_experiment(cfg);
  {
    std::ofstream out(cfg.output_dir / "seed_00001.jsonl", std::ios::app);
    out << "{not json\n" << R"({"k":"x"})" << "\n";
  }
  const auto a = aggregate(cfg.output_dir);
  EXPECT_EQ(a.malformed, 2);
  EXPECT_EQ(a.mean_min, rec.aggregate.mean_min);
}

TEST(Aggregate, MissingDirectoryThrows) {
  EXPECT_ANY_THROW(aggregate(fs::temp_directory_path() / "spbzo_test_does_not_exist"));
}
