#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "xorgames/rigidity.hpp"

namespace xorgames {

enum class ReportFormat { Json, Csv };

struct SweepConfig {
  std::string game = "chsh";         // "chsh" | "ffl"
  std::vector<int> n_values = {2, 3, 4};
  std::vector<double> theta_grid = {0.0, 0.001, 0.01, 0.05, 0.1};
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<BoundId> bounds = all_bound_ids();
  std::string output;                // empty = stdout
  ReportFormat format = ReportFormat::Json;
  int workers = 0;                   // 0 = XORGAMES_WORKERS env or 1
  bool timings = false;              // include wall-clock in the JSON
};

struct SweepPointTiming {
  int n = 0;
  double theta = 0.0;
  std::uint64_t seed = 0;
  double seconds = 0.0;
};

struct RunReport {
  SweepConfig config;
  std::vector<BoundReport> reports;
  std::vector<SweepPointTiming> timings;
  int points = 0;
  int failures = 0;
  bool capacity_error = false;
  std::string version;
};

SweepConfig sweep_config_from_json(const std::string& text);
std::string sweep_config_to_json(const SweepConfig& config);

// Builds the canonical and perturbed strategies per (n, theta, seed) point,
// measures epsilon, and evaluates every selected bound.  Points run in a
// deterministic order; with workers > 1 they are evaluated in parallel and
// merged back in order.  Capacity violations are recorded per point and the
// run continues.
RunReport run_sweep(const SweepConfig& config);

// Byte-stable serializations: identical (config, version) inputs produce
// identical bytes (timings are included only when config.timings is set).
void write_report_json(const RunReport& report, std::ostream& os);
void write_report_csv(const RunReport& report, std::ostream& os);

}  // namespace xorgames
