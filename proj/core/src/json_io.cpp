#include "spbzo/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace spbzo {

using nlohmann::json;

namespace {

json vec_json(const Vec& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trajectory_jsonl(const std::filesystem::path& path, const Trajectory& traj,
                            const std::vector<double>& metric) {
  const auto n = traj.fvals.size();
  if (metric.size() != n) throw InputError("metric series length does not match the trajectory");
  auto out = open_out(path);
  for (std::size_t k = 0; k < n; ++k) {
    nlohmann::ordered_json rec;
    rec["k"] = k;
    rec["x"] = vec_json(traj.xs[k]);
    rec["f"] = traj.fvals[k];
    rec["tau"] = traj.taus[k];
    rec["step"] = traj.steps[k];
    rec["v"] = vec_json(traj.vs[k]);
    rec["metric"] = std::isfinite(metric[k]) ? json(metric[k]) : json(nullptr);
    out << rec.dump() << '\n';
  }
}

MetricFile read_metric_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  MetricFile out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json rec = json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object() || !rec.contains("k") || !rec.contains("metric") ||
        !rec["k"].is_number_integer() || !rec["metric"].is_number()) {
      ++out.malformed;
      continue;
    }
    out.points.push_back({rec["k"].get<int>(), rec["metric"].get<double>()});
  }
  return out;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  auto out = open_out(path);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_number(row[i]);
    out << '\n';
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace spbzo
