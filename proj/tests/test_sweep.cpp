#include <doctest.h>

#include <sstream>

#include "xorgames/serialize.hpp"
#include "xorgames/sweep.hpp"

using namespace xorgames;

namespace {

SweepConfig small_config() {
  SweepConfig config;
  config.n_values = {2, 3};
  config.theta_grid = {0.0, 0.01};
  config.seeds = {1, 2};
  return config;
}

std::string render_json(const RunReport& report) {
  std::ostringstream os;
  write_report_json(report, os);
  return os.str();
}

}  // namespace

TEST_CASE("default configuration matches the documented grid") {
  const SweepConfig config;
  CHECK(config.n_values == std::vector<int>{2, 3, 4});
  CHECK(config.theta_grid.size() == 5);
  CHECK(config.seeds.size() == 10);
  CHECK(config.bounds == all_bound_ids());
  // 3 x 5 x 10 = 150 points
  CHECK(config.n_values.size() * config.theta_grid.size() * config.seeds.size() == 150);
}

TEST_CASE("small sweep passes every bound") {
  const RunReport run = run_sweep(small_config());
  CHECK(run.points == 8);
  CHECK(run.failures == 0);
  CHECK_FALSE(run.capacity_error);
  CHECK(run.reports.size() > 0);
  for (const auto& r : run.reports) CHECK(r.passed);
}

TEST_CASE("theta = 0 rows collapse to tiny residuals") {
  SweepConfig config = small_config();
  config.theta_grid = {0.0};
  const RunReport run = run_sweep(config);
  for (const auto& r : run.reports) {
    CHECK(r.residual <= 1e-8);
  }
}

TEST_CASE("sweep output is byte-identical across runs and worker counts") {
  SweepConfig config = small_config();
  const std::string first = render_json(run_sweep(config));
  const std::string second = render_json(run_sweep(config));
  CHECK(first == second);

  config.workers = 4;
  const std::string parallel = render_json(run_sweep(config));
  config.workers = 1;
  const std::string serial = render_json(run_sweep(config));
  CHECK(parallel == serial);
}

TEST_CASE("csv schema") {
  SweepConfig config = small_config();
  config.n_values = {2};
  config.theta_grid = {0.01};
  config.seeds = {1};
  const RunReport run = run_sweep(config);
  std::ostringstream os;
  write_report_csv(run, os);
  const std::string text = os.str();
  CHECK(text.rfind("bound_id,n,theta,seed,epsilon,residual,stated_bound,slack,passed\n", 0) == 0);
  CHECK(text.find("THM1_R1,2,0.01,1,") != std::string::npos);
  CHECK(text.find(",true") != std::string::npos);
}

TEST_CASE("json report carries the pinned keys in order") {
  SweepConfig config = small_config();
  config.n_values = {2};
  config.theta_grid = {0.01};
  config.seeds = {1};
  const std::string text = render_json(run_sweep(config));
  const auto pos = text.find("\"bound_id\"");
  REQUIRE(pos != std::string::npos);
  const char* keys[] = {"\"bound_id\"", "\"n\"",     "\"epsilon\"", "\"residual\"",
                        "\"stated_bound\"", "\"slack\"", "\"passed\"",  "\"seed\"",
                        "\"theta\"",    "\"game\""};
  size_t cursor = pos;
  for (const char* key : keys) {
    const auto found = text.find(key, cursor);
    REQUIRE(found != std::string::npos);
    cursor = found;
  }
  // numeric payloads are decimal strings
  CHECK(text.find("\"epsilon\": \"") != std::string::npos);
}

TEST_CASE("config round trip") {
  SweepConfig config = small_config();
  config.bounds = {BoundId::Lemma4, BoundId::Thm1R1};
  config.format = ReportFormat::Csv;
  const SweepConfig back = sweep_config_from_json(sweep_config_to_json(config));
  CHECK(back.n_values == config.n_values);
  CHECK(back.theta_grid == config.theta_grid);
  CHECK(back.seeds == config.seeds);
  CHECK(back.bounds == config.bounds);
  CHECK(back.format == ReportFormat::Csv);
}

TEST_CASE("ffl sweep mode uses the transplanted system with FFL constants") {
  SweepConfig config;
  config.game = "ffl";
  config.theta_grid = {0.0, 0.01};
  config.seeds = {1, 2};
  const RunReport run = run_sweep(config);
  CHECK(run.failures == 0);
  bool saw_ffl_constant = false;
  for (const auto& r : run.reports) {
    CHECK(r.n == 2);
    CHECK(r.game == "ffl");
    if (r.bound_id == BoundId::FflAlice || r.bound_id == BoundId::Lemma3Ffl) {
      saw_ffl_constant = true;
    }
    CHECK(r.bound_id != BoundId::Thm2Alice);
  }
  CHECK(saw_ffl_constant);
}

TEST_CASE("negative theta is rejected") {
  SweepConfig config = small_config();
  config.theta_grid = {-0.1};
  CHECK_THROWS_AS((void)run_sweep(config), DomainError);
}

TEST_CASE("strategy json requires the version field") {
  std::string text = strategy_to_json(build_optimal_chsh_strategy(2));
  const auto pos = text.find("\"version\": \"0.1.0\",\n");
  REQUIRE(pos != std::string::npos);
  text.erase(pos, std::string("\"version\": \"0.1.0\",\n").size());
  CHECK_THROWS_AS((void)strategy_from_json(text), DomainError);
}

TEST_CASE("decimal strings round trip") {
  for (double x : {0.0, 1.0, 0.1, 1.0 / 3.0, 0.7071067811865476, 1e-300, -2.5e17}) {
    CHECK(parse_decimal(decimal_string(x)) == x);
  }
}

TEST_CASE("serialization round trips for games and strategies") {
  const GameMatrix g = build_chsh_game(3);
  const GameMatrix g2 = game_from_json(game_to_json(g));
  CHECK(g2.alice_labels == g.alice_labels);
  CHECK(g2.bob_labels == g.bob_labels);
  CHECK((g2.entries - g.entries).cwiseAbs().maxCoeff() == 0.0);
  CHECK(g2.denominator == g.denominator);

  const BinaryGame ffl = build_ffl_game();
  const BinaryGame ffl2 = binary_game_from_json(binary_game_to_json(ffl));
  CHECK(ffl2.questions == ffl.questions);
  CHECK(ffl2.prob_den == ffl.prob_den);
  CHECK(ffl2.win == ffl.win);

  const Strategy s = build_optimal_chsh_strategy(2);
  const Strategy s2 = strategy_from_json(strategy_to_json(s));
  CHECK((s2.state.amplitudes - s.state.amplitudes).norm() == 0.0);
  for (const auto& [label, obs] : s.alice) {
    CHECK((s2.alice.at(label) - obs).cwiseAbs().maxCoeff() == 0.0);
  }
  for (const auto& [label, obs] : s.bob_pairs) {
    CHECK((s2.bob_pairs.at(label) - obs).cwiseAbs().maxCoeff() == 0.0);
  }
}
