#include "xorgames/sweep.hpp"

#include <chrono>
#include <cstdlib>
#include <map>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "xorgames/games.hpp"
#include "xorgames/serialize.hpp"

namespace xorgames {

using ordered_json = nlohmann::ordered_json;

namespace {

struct SweepPoint {
  int n = 0;
  double theta = 0.0;
  std::uint64_t seed = 0;
};

bool wants(const SweepConfig& config, BoundId id) {
  for (BoundId b : config.bounds) {
    if (b == id) return true;
  }
  return false;
}

// One sweep point: canonical system, perturbation, epsilon, all selected
// bound checks.  The ffl mode runs the same machinery on the n=2 system and
// is gated by the FFL constants.
std::vector<BoundReport> evaluate_point(const SweepConfig& config, const SweepPoint& pt) {
  const Strategy canonical = build_optimal_chsh_strategy(pt.n);
  auto perturbed = perturb_strategy(canonical, pt.theta, pt.seed);
  const Strategy& s = perturbed.strategy;

  CheckContext ctx;
  ctx.epsilon = perturbed.epsilon;
  ctx.seed = pt.seed;
  ctx.theta = pt.theta;
  ctx.game = config.game;

  std::vector<BoundReport> out;
  if (wants(config, BoundId::Thm1R1) || wants(config, BoundId::Thm1R2)) {
    const auto [r1, r2] = theorem1_residuals(s, pt.n);
    const double bound = bounds::thm1(pt.n, ctx.epsilon);
    if (wants(config, BoundId::Thm1R1)) {
      out.push_back(make_bound_report(BoundId::Thm1R1, pt.n, ctx.epsilon, r1, bound,
                                      pt.seed, pt.theta, config.game));
    }
    if (wants(config, BoundId::Thm1R2)) {
      out.push_back(make_bound_report(BoundId::Thm1R2, pt.n, ctx.epsilon, r2, bound,
                                      pt.seed, pt.theta, config.game));
    }
  }
  if (wants(config, BoundId::Lemma3Xor)) {
    out.push_back(lemma3_anticommutator_residual(s, BoundVariant::XOR, ctx).report);
  }
  if (wants(config, BoundId::Lemma3Ffl)) {
    out.push_back(lemma3_anticommutator_residual(s, BoundVariant::FFL, ctx).report);
  }
  if (wants(config, BoundId::Lemma4)) {
    out.push_back(lemma4_check(s, 1, 2, ctx));
  }
  if (wants(config, BoundId::Lemma5)) {
    // the configuration where the exact relations hold: j = (1, 0, ..., 0)
    std::vector<int> j(size_t(pt.n), 0);
    j[0] = 1;
    out.push_back(lemma5_check(s, j, ctx));
  }
  if (wants(config, BoundId::Lemma7)) {
    const std::vector<int> j(size_t(pt.n), 0);
    out.push_back(lemma7_check(s, j, 1, 2, ctx).report);
  }

  const bool needs_t = wants(config, BoundId::Thm2Alice) || wants(config, BoundId::Thm2Bob) ||
                       wants(config, BoundId::FflAlice) || wants(config, BoundId::FflBob) ||
                       wants(config, BoundId::TUnitNorm);
  if (needs_t) {
    const Strategy reference = build_reference_strategy(pt.n, /*doubled=*/pt.n % 2 == 1);
    const IntertwinerT t = build_intertwiner(s, reference, pt.n);
    if (wants(config, BoundId::Thm2Alice) || wants(config, BoundId::Thm2Bob)) {
      auto [ra, rb] = theorem2_frobenius_check(t, s, reference, BoundVariant::XOR, ctx);
      if (wants(config, BoundId::Thm2Alice)) out.push_back(std::move(ra));
      if (wants(config, BoundId::Thm2Bob)) out.push_back(std::move(rb));
    }
    if (wants(config, BoundId::FflAlice) || wants(config, BoundId::FflBob)) {
      auto [ra, rb] = theorem2_frobenius_check(t, s, reference, BoundVariant::FFL, ctx);
      if (wants(config, BoundId::FflAlice)) out.push_back(std::move(ra));
      if (wants(config, BoundId::FflBob)) out.push_back(std::move(rb));
    }
    if (wants(config, BoundId::TUnitNorm)) {
      const double residual = std::abs(t.matrix.norm() - 1.0);
      out.push_back(make_bound_report(BoundId::TUnitNorm, pt.n, ctx.epsilon, residual,
                                      1e-9, pt.seed, pt.theta, config.game));
    }
  }
  if (wants(config, BoundId::Lemma6Identity) && pt.n % 2 == 1) {
    auto result = lemma6_product_identity(pt.n);
    result.report.seed = pt.seed;
    result.report.theta = pt.theta;
    result.report.epsilon = ctx.epsilon;
    result.report.game = config.game;
    out.push_back(std::move(result.report));
  }
  return out;
}

int resolve_workers(const SweepConfig& config) {
  if (config.workers > 0) return config.workers;
  if (const char* env = std::getenv("XORGAMES_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  return 1;
}

ordered_json report_to_json(const BoundReport& r) {
  ordered_json j;
  j["bound_id"] = to_string(r.bound_id);
  j["n"] = r.n;
  j["epsilon"] = decimal_string(r.epsilon);
  j["residual"] = decimal_string(r.residual);
  j["stated_bound"] = decimal_string(r.stated_bound);
  j["slack"] = decimal_string(r.slack);
  j["passed"] = r.passed;
  j["seed"] = r.seed;
  j["theta"] = decimal_string(r.theta);
  j["game"] = r.game;
  return j;
}

}  // namespace

SweepConfig sweep_config_from_json(const std::string& text) {
  const ordered_json j = ordered_json::parse(text);
  SweepConfig config;
  if (j.contains("game")) config.game = j.at("game").get<std::string>();
  if (j.contains("n_values")) config.n_values = j.at("n_values").get<std::vector<int>>();
  if (j.contains("theta_grid")) {
    config.theta_grid.clear();
    for (const auto& t : j.at("theta_grid")) {
      config.theta_grid.push_back(t.is_string() ? parse_decimal(t.get<std::string>())
                                                : t.get<double>());
    }
  }
  if (j.contains("seeds")) config.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  if (j.contains("bounds")) {
    config.bounds.clear();
    for (const auto& b : j.at("bounds")) {
      config.bounds.push_back(bound_id_from_string(b.get<std::string>()));
    }
  }
  if (j.contains("output")) config.output = j.at("output").get<std::string>();
  if (j.contains("format")) {
    config.format = j.at("format").get<std::string>() == "csv" ? ReportFormat::Csv
                                                               : ReportFormat::Json;
  }
  if (j.contains("workers")) config.workers = j.at("workers").get<int>();
  if (j.contains("timings")) config.timings = j.at("timings").get<bool>();
  return config;
}

std::string sweep_config_to_json(const SweepConfig& config) {
  ordered_json j;
  j["game"] = config.game;
  j["n_values"] = config.n_values;
  ordered_json thetas = ordered_json::array();
  for (double t : config.theta_grid) thetas.push_back(decimal_string(t));
  j["theta_grid"] = thetas;
  j["seeds"] = config.seeds;
  ordered_json bounds = ordered_json::array();
  for (BoundId b : config.bounds) bounds.push_back(to_string(b));
  j["bounds"] = bounds;
  j["format"] = config.format == ReportFormat::Csv ? "csv" : "json";
  return j.dump();
}

RunReport run_sweep(const SweepConfig& config) {
  for (double theta : config.theta_grid) {
    if (theta < 0) throw DomainError("run_sweep: theta grid must be nonnegative");
  }
  SweepConfig effective = config;
  if (config.game == "ffl") {
    // FFL mode: the transplanted n=2 machinery gated by the FFL constants.
    effective.n_values = {2};
    if (effective.bounds == all_bound_ids()) {
      effective.bounds = {BoundId::Thm1R1, BoundId::Thm1R2,  BoundId::Lemma3Ffl,
                          BoundId::Lemma4, BoundId::Lemma5,  BoundId::Lemma7,
                          BoundId::FflAlice, BoundId::FflBob, BoundId::TUnitNorm};
    }
  } else if (config.game != "chsh") {
    throw DomainError("run_sweep: game must be 'chsh' or 'ffl'");
  }

  std::vector<SweepPoint> points;
  for (int n : effective.n_values) {
    for (double theta : effective.theta_grid) {
      for (std::uint64_t seed : effective.seeds) points.push_back({n, theta, seed});
    }
  }

  RunReport run;
  run.config = effective;
  run.version = kToolkitVersion;
  run.points = int(points.size());

  std::vector<std::vector<BoundReport>> per_point(points.size());
  std::vector<double> seconds(points.size(), 0.0);
  std::vector<std::string> errors(points.size());

  const auto work = [&](size_t begin, size_t step) {
    for (size_t idx = begin; idx < points.size(); idx += step) {
      const auto start = std::chrono::steady_clock::now();
      try {
        per_point[idx] = evaluate_point(effective, points[idx]);
      } catch (const CapacityError& e) {
        errors[idx] = e.what();
      }
      seconds[idx] = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start).count();
    }
  };

  const int workers = resolve_workers(effective);
  if (workers <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back(work, size_t(w), size_t(workers));
    }
    for (auto& th : pool) th.join();
  }

  for (size_t idx = 0; idx < points.size(); ++idx) {
    if (!errors[idx].empty()) run.capacity_error = true;
    for (auto& r : per_point[idx]) {
      if (!r.passed) ++run.failures;
      run.reports.push_back(std::move(r));
    }
    run.timings.push_back({points[idx].n, points[idx].theta, points[idx].seed,
                           seconds[idx]});
  }
  return run;
}

void write_report_json(const RunReport& report, std::ostream& os) {
  ordered_json j;
  j["version"] = report.version;
  j["config"] = ordered_json::parse(sweep_config_to_json(report.config));
  ordered_json reports = ordered_json::array();
  for (const auto& r : report.reports) reports.push_back(report_to_json(r));
  j["reports"] = reports;

  // summary: binding margin per bound id (minimum slack over the grid), failures
  std::map<std::string, double> worst;
  for (const auto& r : report.reports) {
    const std::string key = to_string(r.bound_id);
    const auto it = worst.find(key);
    if (it == worst.end() || r.slack < it->second) worst[key] = r.slack;
  }
  ordered_json summary;
  summary["points"] = report.points;
  summary["failures"] = report.failures;
  summary["capacity_error"] = report.capacity_error;
  ordered_json worst_json;
  for (const auto& [key, value] : worst) worst_json[key] = decimal_string(value);
  summary["min_slack"] = worst_json;
  j["summary"] = summary;

  if (report.config.timings) {
    ordered_json timings = ordered_json::array();
    for (const auto& t : report.timings) {
      timings.push_back({{"n", t.n},
                         {"theta", decimal_string(t.theta)},
                         {"seed", t.seed},
                         {"seconds", decimal_string(t.seconds)}});
    }
    j["timings"] = timings;
  }
  os << j.dump(2) << "\n";
}

void write_report_csv(const RunReport& report, std::ostream& os) {
  os << "bound_id,n,theta,seed,epsilon,residual,stated_bound,slack,passed\n";
  for (const auto& r : report.reports) {
    os << to_string(r.bound_id) << ',' << r.n << ',' << decimal_string(r.theta) << ','
       << r.seed << ',' << decimal_string(r.epsilon) << ',' << decimal_string(r.residual)
       << ',' << decimal_string(r.stated_bound) << ',' << decimal_string(r.slack) << ','
       << (r.passed ? "true" : "false") << "\n";
  }
}

}  // namespace xorgames
