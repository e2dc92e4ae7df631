// xorgames: build XOR-type games, evaluate strategies, run the rigidity
// sweep and emit SDP certificates.
//
// Exit codes: 0 success / all bounds passed, 1 bound failure, 2 usage or
// input error, 3 capacity error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "xorgames/games.hpp"
#include "xorgames/rigidity.hpp"
#include "xorgames/sdp.hpp"
#include "xorgames/serialize.hpp"
#include "xorgames/strategies.hpp"
#include "xorgames/sweep.hpp"

namespace {

using namespace xorgames;

constexpr int kExitOk = 0;
constexpr int kExitBoundFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot open output file '" + path + "'");
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct GameBuildArgs {
  std::string kind;
  int n = 2;
  std::string out;
};

int cmd_game_build(const GameBuildArgs& args) {
  if (args.kind == "chsh") {
    const GameMatrix g = build_chsh_game(args.n);
    write_text(args.out, game_to_json(g));
    std::cerr << "chsh(" << args.n << "): " << g.rows() << " x " << g.cols()
              << ", signed sum " << decimal_string(g.signed_sum()) << ", absolute sum "
              << decimal_string(g.abs_sum()) << "\n";
    return kExitOk;
  }
  if (args.kind == "ffl") {
    const BinaryGame bg = build_ffl_game();
    write_text(args.out, binary_game_to_json(bg));
    const auto values = binary_game_values(bg);
    std::cerr << "ffl: " << bg.questions.size() << " question pairs, classical value "
              << values.classical_value.str() << "\n";
    return kExitOk;
  }
  throw DomainError("unknown game kind '" + args.kind + "' (expected chsh or ffl)");
}

struct EvaluateArgs {
  std::string kind;
  int n = 2;
  bool canonical = false;
  bool classical = false;
  bool sdp = false;
  std::string game_file;
  std::string strategy_file;
};

int cmd_evaluate(const EvaluateArgs& args) {
  if (args.kind == "ffl") {
    const BinaryGame bg = args.game_file.empty()
                              ? build_ffl_game()
                              : binary_game_from_json(read_text(args.game_file));
    const auto values = binary_game_values(bg);
    if (args.canonical || !args.strategy_file.empty()) {
      const Strategy s = args.strategy_file.empty()
                             ? build_ffl_strategy()
                             : strategy_from_json(read_text(args.strategy_file));
      const double omega = binary_game_value(bg, s);
      std::cout << "value: " << decimal_string(omega) << "\n";
      std::cout << "bias: " << decimal_string(2.0 * omega - 1.0) << "\n";
    }
    std::cout << "classical value: " << values.classical_value.str() << " ("
              << decimal_string(values.classical_value.value()) << ")\n";
    return kExitOk;
  }
  if (args.kind != "chsh") {
    throw DomainError("unknown game kind '" + args.kind + "' (expected chsh or ffl)");
  }

  const GameMatrix g = args.game_file.empty() ? build_chsh_game(args.n)
                                              : game_from_json(read_text(args.game_file));
  if (args.canonical || !args.strategy_file.empty()) {
    const Strategy s = args.strategy_file.empty()
                           ? build_optimal_chsh_strategy(int(g.rows()))
                           : strategy_from_json(read_text(args.strategy_file));
    const double beta = bias(g, s);
    std::cout << "bias: " << decimal_string(beta) << "\n";
    std::cout << "win probability: " << decimal_string(win_probability(beta)) << "\n";
    if (args.sdp) {
      const SdpCertificate cert = certify(g, s);
      std::cout << "dual objective: " << decimal_string(cert.objective) << "\n";
      std::cout << "duality gap: " << decimal_string(cert.gap) << "\n";
    }
  }
  if (args.classical) {
    const auto brute = classical_bias_bruteforce(g);
    std::cout << "classical bias: "
              << (g.has_exact() ? brute.exact.str() + " (" + decimal_string(brute.value) + ")"
                                : decimal_string(brute.value))
              << "\n";
  }
  return kExitOk;
}

struct SweepArgs {
  std::string config_file;
  std::string game = "chsh";
  std::vector<int> n_values;
  std::vector<double> thetas;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> bounds;
  std::string out;
  std::string format;  // empty = keep the config file's choice
  int workers = 0;
  bool timings = false;
};

int cmd_rigidity_sweep(const SweepArgs& args) {
  SweepConfig config;
  if (!args.config_file.empty()) config = sweep_config_from_json(read_text(args.config_file));
  if (args.game != "chsh") config.game = args.game;
  if (!args.n_values.empty()) config.n_values = args.n_values;
  if (!args.thetas.empty()) config.theta_grid = args.thetas;
  if (!args.seeds.empty()) config.seeds = args.seeds;
  if (!args.bounds.empty()) {
    config.bounds.clear();
    for (const auto& name : args.bounds) config.bounds.push_back(bound_id_from_string(name));
  }
  if (!args.out.empty()) config.output = args.out;
  if (!args.format.empty()) {
    if (args.format == "csv") config.format = ReportFormat::Csv;
    else if (args.format == "json") config.format = ReportFormat::Json;
    else throw DomainError("unknown format '" + args.format + "' (expected json or csv)");
  }
  if (args.workers > 0) config.workers = args.workers;
  config.timings = config.timings || args.timings;

  const RunReport run = run_sweep(config);

  std::ostringstream ss;
  if (config.format == ReportFormat::Csv) write_report_csv(run, ss);
  else write_report_json(run, ss);
  write_text(config.output, ss.str());

  double total_seconds = 0.0;
  for (const auto& t : run.timings) total_seconds += t.seconds;
  std::cerr << run.points << " points, " << run.reports.size() << " reports, "
            << run.failures << " failures, " << decimal_string(total_seconds) << " s\n";

  if (run.failures > 0) return kExitBoundFailure;
  if (run.capacity_error) return kExitCapacity;
  return kExitOk;
}

struct CertifyArgs {
  int n = 2;
  double theta = 0.0;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_sdp_certify(const CertifyArgs& args) {
  const GameMatrix g = build_chsh_game(args.n);
  const auto p = perturb_strategy(build_optimal_chsh_strategy(args.n), args.theta, args.seed);
  const SdpCertificate cert = certify(g, p.strategy);
  const auto lemma2 = lemma2_equality_check(g, p.strategy, cert.y);

  std::cout << "dual objective: " << decimal_string(cert.objective) << "\n";
  std::cout << "duality gap: " << decimal_string(cert.gap) << "\n";
  std::cout << "epsilon: " << decimal_string(p.epsilon) << "\n";
  std::cout << "residual identity: lhs " << decimal_string(lemma2.lhs) << ", rhs "
            << decimal_string(lemma2.rhs) << ", |lhs-rhs| " << decimal_string(lemma2.diff)
            << "\n";
  if (!args.out.empty()) write_text(args.out, certificate_to_json(cert));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification toolkit for XOR-type nonlocal games"};
  app.require_subcommand(1);

  GameBuildArgs game_args;
  auto* game = app.add_subcommand("game", "build game definitions");
  auto* game_build = game->add_subcommand("build", "construct a game and write it as JSON");
  game_build->add_option("kind", game_args.kind, "chsh | ffl")->required();
  game_build->add_option("--n", game_args.n, "question count for chsh");
  game_build->add_option("--out", game_args.out, "output file (default stdout)");

  EvaluateArgs eval_args;
  auto* evaluate = app.add_subcommand("evaluate", "evaluate a strategy on a game");
  evaluate->add_option("kind", eval_args.kind, "chsh | ffl")->required();
  evaluate->add_option("--n", eval_args.n, "question count for chsh");
  evaluate->add_flag("--canonical", eval_args.canonical, "use the built-in optimal strategy");
  evaluate->add_flag("--classical", eval_args.classical, "also run the classical brute force");
  evaluate->add_flag("--sdp", eval_args.sdp, "also print the dual objective and duality gap");
  evaluate->add_option("--game", eval_args.game_file, "game JSON file");
  evaluate->add_option("--strategy", eval_args.strategy_file, "strategy JSON file");

  SweepArgs sweep_args;
  auto* rigidity = app.add_subcommand("rigidity", "rigidity bound checks");
  auto* sweep = rigidity->add_subcommand("sweep", "run the bound sweep over (n, theta, seed)");
  sweep->add_option("--config", sweep_args.config_file, "sweep config JSON file");
  sweep->add_option("--game", sweep_args.game, "chsh | ffl");
  sweep->add_option("--n", sweep_args.n_values, "n values")->delimiter(',');
  sweep->add_option("--theta", sweep_args.thetas, "perturbation angles")->delimiter(',');
  sweep->add_option("--seeds", sweep_args.seeds, "rng seeds")->delimiter(',');
  sweep->add_option("--bounds", sweep_args.bounds, "bound ids (default all)")->delimiter(',');
  sweep->add_option("--out", sweep_args.out, "output file (default stdout)");
  sweep->add_option("--format", sweep_args.format, "json | csv");
  sweep->add_option("--workers", sweep_args.workers, "parallel workers (default 1)");
  sweep->add_flag("--timings", sweep_args.timings, "include wall-clock timings in the JSON");

  CertifyArgs certify_args;
  auto* sdp = app.add_subcommand("sdp", "semidefinite programming certificates");
  auto* certify_cmd = sdp->add_subcommand("certify", "emit a primal/dual certificate");
  certify_cmd->add_option("--n", certify_args.n, "question count");
  certify_cmd->add_option("--theta", certify_args.theta, "perturbation angle");
  certify_cmd->add_option("--seed", certify_args.seed, "rng seed");
  certify_cmd->add_option("--out", certify_args.out, "certificate JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (game_build->parsed()) return cmd_game_build(game_args);
    if (evaluate->parsed()) return cmd_evaluate(eval_args);
    if (sweep->parsed()) return cmd_rigidity_sweep(sweep_args);
    if (certify_cmd->parsed()) return cmd_sdp_certify(certify_args);
    std::cerr << app.help();
    return kExitUsage;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
