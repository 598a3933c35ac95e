#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "spbzo/optimizers.hpp"

namespace spbzo {

// %.17g
std::string csv_number(double v);

// One JSON object per iterate k = 0..T: {"k", "x", "f", "tau", "step", "v", "metric"}.
void write_trajectory_jsonl(const std::filesystem::path& path, const Trajectory& traj,
                            const std::vector<double>& metric);

struct MetricPoint {
  int k = 0;
  double metric = 0.0;
};

struct MetricFile {
  std::vector<MetricPoint> points;
  int malformed = 0;
};

// Reads the (k, metric) pairs of a trajectory file; unparsable lines are counted and skipped.
MetricFile read_metric_jsonl(const std::filesystem::path& path);

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace spbzo
