#include "spbzo/optimizers.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "spbzo/rng.hpp"
#include "spbzo/smoothing.hpp"

namespace spbzo {

namespace {

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    const auto item = text.substr(start, end - start);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw InputError("bad number list: " + std::string(text));
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Vec broadcast(const std::vector<double>& values, int dim) {
  if (values.size() == 1) return Vec::Constant(dim, values[0]);
  if (static_cast<int>(values.size()) != dim) throw InputError("set spec has the wrong dimension");
  return Eigen::Map<const Vec>(values.data(), dim);
}

std::string join(const Vec& v) {
  std::ostringstream os;
  os.precision(17);
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

}  // namespace

FeasibleSet FeasibleSet::whole_space() { return FeasibleSet{}; }

FeasibleSet FeasibleSet::box(Vec lo, Vec hi) {
  if (lo.size() != hi.size()) throw InputError("box: bound dimensions differ");
  if ((lo.array() > hi.array()).any()) throw InputError("box: need lo <= hi");
  FeasibleSet s;
  s.kind = Kind::box;
  s.lo = std::move(lo);
  s.hi = std::move(hi);
  return s;
}

FeasibleSet FeasibleSet::ball(Vec center, double radius) {
  if (!(radius > 0.0)) throw InputError("ball: radius must be positive");
  FeasibleSet s;
  s.kind = Kind::ball;
  s.center = std::move(center);
  s.radius = radius;
  return s;
}

FeasibleSet FeasibleSet::parse(std::string_view spec, int dim) {
  if (spec.empty() || spec == "whole" || spec == "whole_space") return whole_space();
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = spec.find(':', start);
    parts.push_back(spec.substr(start, colon == std::string_view::npos ? spec.npos : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts[0] == "ball") {
    if (parts.size() == 2) return ball(Vec::Zero(dim), parse_list(parts[1]).at(0));
    if (parts.size() == 3) return ball(broadcast(parse_list(parts[1]), dim), parse_list(parts[2]).at(0));
  } else if (parts[0] == "box" && parts.size() == 3) {
    return box(broadcast(parse_list(parts[1]), dim), broadcast(parse_list(parts[2]), dim));
  }
  throw InputError("unrecognized feasible set: " + std::string(spec));
}

std::string FeasibleSet::to_string() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case Kind::whole_space:
      return "whole";
    case Kind::box:
      return "box:" + join(lo) + ":" + join(hi);
    case Kind::ball:
      os << "ball:" << join(center) << ":" << radius;
      return os.str();
  }
  return "whole";
}

bool FeasibleSet::contains(const Vec& x, double tol) const {
  switch (kind) {
    case Kind::whole_space:
      return true;
    case Kind::box:
      require_dim(x, lo.size(), "box");
      return ((x.array() >= lo.array() - tol) && (x.array() <= hi.array() + tol)).all();
    case Kind::ball:
      require_dim(x, center.size(), "ball");
      return (x - center).norm() <= radius * (1.0 + tol) + tol;
  }
  return false;
}

Vec project(const FeasibleSet& set, const Vec& x) {
  switch (set.kind) {
    case FeasibleSet::Kind::whole_space:
      return x;
    case FeasibleSet::Kind::box:
      require_dim(x, set.lo.size(), "project");
      return x.cwiseMax(set.lo).cwiseMin(set.hi);
    case FeasibleSet::Kind::ball: {
      require_dim(x, set.center.size(), "project");
      const Vec diff = x - set.center;
      const double r = diff.norm();
      if (r <= set.radius) return x;
      return set.center + diff * (set.radius / r);
    }
  }
  return x;
}

Schedule Schedule::constant_over_sqrt(double gamma) {
  Schedule s;
  s.gamma = gamma;
  return s;
}

Schedule Schedule::explicit_list(std::vector<double> taus) {
  Schedule s;
  s.kind = Kind::explicit_list;
  s.taus = std::move(taus);
  return s;
}

double Schedule::tau(int k, int horizon) const {
  if (kind == Kind::explicit_list) return taus.at(static_cast<std::size_t>(k));
  return gamma / std::sqrt(horizon + 1.0);
}

void Schedule::validate(int horizon) const {
  if (horizon < 0) throw InputError("horizon T must be >= 0");
  if (kind == Kind::constant_over_sqrt) {
    if (!(gamma > 0.0 && gamma <= 1.0)) throw InputError("gamma must lie in (0, 1]");
    return;
  }
  if (static_cast<int>(taus.size()) != horizon + 1) throw InputError("schedule needs T + 1 stepsizes");
  for (double t : taus) {
    if (!(t > 0.0 && t <= 1.0)) throw InputError("stepsizes must lie in (0, 1]");
  }
}

namespace {

template <typename Step>
Trajectory run(const SpbFunction& fn, const Vec& x0, double sigma, const Schedule& schedule,
               int horizon, std::uint64_t seed, int power, Step&& finish_step) {
  require_dim(x0, fn.dim, "x0");
  if (!(sigma > 0.0)) throw InputError("sigma must be positive");
  schedule.validate(horizon);
  const int m = fn.certificate.m();
  Trajectory traj;
  traj.seed = seed;
  traj.xs.reserve(horizon + 2);
  traj.xs.push_back(x0);
  NormalStream rng(seed);
  Vec x = x0;
  for (int k = 0; k <= horizon; ++k) {
    const Vec u = rng.normal_vec(fn.dim);
    const double fx = fn.eval(x);
    const double fp = fn.eval(x + sigma * u);
    traj.oracle_calls += 2;
    Vec v = (fp - fx) / sigma * u;
    const double tau = schedule.tau(k, horizon);
    const double step = tau / (norm_pow(x, power * m) + 1.0);
    x = finish_step(Vec(x - step * v));
    traj.fvals.push_back(fx);
    traj.taus.push_back(tau);
    traj.steps.push_back(step);
    traj.vs.push_back(std::move(v));
    traj.xs.push_back(x);
  }
  return traj;
}

}  // namespace

Trajectory run_algorithm1(const SpbFunction& fn, const FeasibleSet& set, const Vec& x0, double sigma,
                          const Schedule& schedule, int horizon, std::uint64_t seed) {
  require_dim(x0, fn.dim, "x0");
  if (!set.contains(x0)) throw InputError("x0 is not in the feasible set");
  auto traj = run(fn, x0, sigma, schedule, horizon, seed, 1,
                  [&](const Vec& y) { return project(set, y); });
  traj.algorithm = 1;
  if (!fn.convex) traj.warnings.push_back(fn.id + " is not flagged convex");
  return traj;
}

Trajectory run_algorithm2(const SpbFunction& fn, const Vec& x0, double sigma,
                          const Schedule& schedule, int horizon, std::uint64_t seed) {
  auto traj = run(fn, x0, sigma, schedule, horizon, seed, 2, [](const Vec& y) { return y; });
  traj.algorithm = 2;
  return traj;
}

std::vector<double> relative_gap_series(const Trajectory& traj, const SpbFunction& fn,
                                        std::optional<double> f_star) {
  if (!f_star) f_star = fn.inf_value;
  if (!f_star) throw InputError(fn.id + ": optimal value unknown");
  const int m = fn.certificate.m();
  std::vector<double> out;
  out.reserve(traj.fvals.size());
  for (std::size_t k = 0; k < traj.fvals.size(); ++k) {
    out.push_back((traj.fvals[k] - *f_star) / (norm_pow(traj.xs[k], m) + 1.0));
  }
  return out;
}

std::vector<double> wtilde_series(const Trajectory& traj, const SpbFunction& fn, double sigma,
                                  int mc_n, std::uint64_t mc_seed) {
  const int m = fn.certificate.m();
  const bool closed = fn.has_gs_closed_form();
  std::vector<double> out;
  out.reserve(traj.fvals.size());
  for (std::size_t k = 0; k < traj.fvals.size(); ++k) {
    const Vec& x = traj.xs[k];
    const Vec g = closed ? gs_grad_oracle(fn, x, sigma).value
                         : gs_grad_twopoint_mc(fn, x, sigma, mc_n, derive_seed(mc_seed, k)).mean;
    const double denom = norm_pow(x, m) + 1.0;
    out.push_back(g.squaredNorm() / (denom * denom));
  }
  return out;
}

std::size_t argmin_first(const std::vector<double>& series) {
  if (series.empty()) throw InputError("argmin of an empty series");
  std::size_t best = 0;
  for (std::size_t k = 1; k < series.size(); ++k) {
    if (series[k] < series[best]) best = k;
  }
  return best;
}

}  // namespace spbzo
