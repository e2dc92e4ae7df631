#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "xorgames/games.hpp"

using namespace xorgames;
using namespace xorgames::testing;

namespace {

constexpr double kInvSqrt2 = 0.7071067811865476;

// Independent oracle: enumerate both sign vectors in full.
double brute_force_full(const GameMatrix& g) {
  const Index n = g.rows();
  const Index m = g.cols();
  double best = -1e300;
  for (std::uint64_t am = 0; am < (std::uint64_t(1) << n); ++am) {
    for (std::uint64_t bm = 0; bm < (std::uint64_t(1) << m); ++bm) {
      double total = 0.0;
      for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < m; ++j) {
          const int a = (am >> i) & 1 ? -1 : 1;
          const int b = (bm >> j) & 1 ? -1 : 1;
          total += g.entries(i, j) * a * b;
        }
      }
      best = std::max(best, total);
    }
  }
  return best;
}

}  // namespace

TEST_CASE("build_chsh_game n=2 support") {
  const GameMatrix g = build_chsh_game(2);
  REQUIRE(g.rows() == 2);
  REQUIRE(g.cols() == 2);
  REQUIRE(g.bob_labels == std::vector<PairLabel>{{1, 2}, {2, 1}});
  CHECK(g.entries(0, 0) == doctest::Approx(0.25));
  CHECK(g.entries(1, 0) == doctest::Approx(0.25));
  CHECK(g.entries(0, 1) == doctest::Approx(0.25));
  CHECK(g.entries(1, 1) == doctest::Approx(-0.25));
  CHECK(g.signed_sum() == doctest::Approx(0.5));
  CHECK(g.abs_sum() == doctest::Approx(1.0));
}

TEST_CASE("build_chsh_game n=3 support count") {
  const GameMatrix g = build_chsh_game(3);
  REQUIRE(g.rows() == 3);
  REQUIRE(g.cols() == 6);
  int nonzero = 0;
  for (Index i = 0; i < g.rows(); ++i) {
    for (Index j = 0; j < g.cols(); ++j) {
      if (g.entries(i, j) != 0.0) {
        ++nonzero;
        CHECK(std::abs(std::abs(g.entries(i, j)) - 1.0 / 12.0) < 1e-15);
      }
    }
  }
  CHECK(nonzero == 12);
}

TEST_CASE("build_chsh_game normalization and domain") {
  for (int n = 2; n <= 6; ++n) {
    CHECK(std::abs(build_chsh_game(n).abs_sum() - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS((void)build_chsh_game(1), DomainError);
}

TEST_CASE("build_ffl_game distribution and predicate") {
  const BinaryGame ffl = build_ffl_game();
  REQUIRE(ffl.questions == std::vector<PairLabel>{{0, 0}, {0, 1}, {1, 0}});
  CHECK(ffl.prob_den == 3);
  for (auto num : ffl.prob_num) CHECK(num == 1);

  // direct enumeration oracle for the deterministic strategy a=0, b=1
  std::int64_t wins = 0;
  for (size_t q = 0; q < ffl.questions.size(); ++q) {
    if (ffl.win[q][0][1]) wins += ffl.prob_num[q];
  }
  CHECK(Fraction{wins, ffl.prob_den} == Fraction{2, 3});
}

TEST_CASE("binary_game_values on FFL and fixtures") {
  const auto ffl = binary_game_values(build_ffl_game());
  CHECK(ffl.classical_value == Fraction{2, 3});
  CHECK(ffl.classical_bias == Fraction{1, 3});

  const auto trivial = binary_game_values(
      build_ffl_game([](int, int, int, int) { return true; }));
  CHECK(trivial.classical_value == Fraction{1, 1});

  // CHSH as a binary game: uniform questions over {0,1}^2, win iff a^b = s&t
  BinaryGame chsh;
  chsh.questions = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  chsh.prob_num = {1, 1, 1, 1};
  chsh.prob_den = 4;
  for (const auto& [s, t] : chsh.questions) {
    std::array<std::array<bool, 2>, 2> w{};
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) w[a][b] = (a ^ b) == (s & t);
    }
    chsh.win.push_back(w);
  }
  // independent oracle: enumerate all 16 deterministic strategies explicitly
  std::int64_t best = 0;
  for (int am = 0; am < 4; ++am) {
    for (int bm = 0; bm < 4; ++bm) {
      std::int64_t wins = 0;
      for (size_t q = 0; q < chsh.questions.size(); ++q) {
        const auto [s, t] = chsh.questions[q];
        if (chsh.win[q][(am >> s) & 1][(bm >> t) & 1]) ++wins;
      }
      best = std::max(best, wins);
    }
  }
  CHECK(best == 3);
  CHECK(binary_game_values(chsh).classical_value == Fraction{3, 4});
}

TEST_CASE("bias of canonical and identity strategies") {
  for (int n = 2; n <= 5; ++n) {
    const double beta = bias(build_chsh_game(n), build_optimal_chsh_strategy(n));
    CHECK(std::abs(beta - kInvSqrt2) < 1e-9);
  }
  CHECK(bias(build_chsh_game(2), identity_strategy(2)) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("bias reports missing labels and shape problems") {
  const GameMatrix g = build_chsh_game(2);
  Strategy s = build_optimal_chsh_strategy(2);
  s.alice.erase(1);
  CHECK_THROWS_AS((void)bias(g, s), LabelError);

  Strategy s2 = build_optimal_chsh_strategy(2);
  s2.alice[1] = CMatrix::Identity(4, 4);
  CHECK_THROWS_AS((void)bias(g, s2), ShapeError);
}

TEST_CASE("bias stays in [-1, 1] for random valid strategies") {
  std::mt19937_64 rng(53);
  const GameMatrix g = build_chsh_game(2);
  for (int trial = 0; trial < 30; ++trial) {
    Strategy s(random_state(2, 2, rng));
    for (int i = 1; i <= 2; ++i) s.alice[i] = random_observable(2, rng);
    for (const auto& label : g.bob_labels) s.bob_pairs[label] = random_observable(2, rng);
    const double beta = bias(g, s);
    CHECK(beta <= 1.0 + 1e-9);
    CHECK(beta >= -1.0 - 1e-9);
  }
}

TEST_CASE("win_probability") {
  CHECK(win_probability(kInvSqrt2) == doctest::Approx(0.85355339).epsilon(1e-8));
  CHECK(win_probability(0.0) == 0.5);
  CHECK(win_probability(1.0) == 1.0);
  CHECK_THROWS_AS((void)win_probability(1.1), DomainError);
}

TEST_CASE("classical_bias_bruteforce CHSH(2) exact") {
  const auto result = classical_bias_bruteforce(build_chsh_game(2));
  CHECK(result.exact == Fraction{1, 2});
  CHECK(result.alice_signs == std::vector<int>{1, 1});
  CHECK(result.bob_signs == std::vector<int>{1, 1});
  CHECK(result.value == doctest::Approx(brute_force_full(build_chsh_game(2))).epsilon(1e-12));
}

TEST_CASE("classical_bias_bruteforce CHSH(3) against the full oracle") {
  const GameMatrix g = build_chsh_game(3);
  const auto result = classical_bias_bruteforce(g);
  CHECK(result.value == doctest::Approx(brute_force_full(g)).epsilon(1e-12));
  CHECK(result.value <= kInvSqrt2 + 1e-12);
}

TEST_CASE("classical values stay below the canonical quantum bias") {
  for (int n : {2, 3, 4}) {
    const GameMatrix g = build_chsh_game(n);
    const double classical = classical_bias_bruteforce(g).value;
    const double quantum = bias(g, build_optimal_chsh_strategy(n));
    CHECK(classical <= quantum + 1e-9);
  }
}

TEST_CASE("classical_bias_bruteforce trivial game and capacity") {
  GameMatrix g;
  g.alice_labels = {1};
  g.bob_labels = {{1, 2}};
  g.entries = RMatrix::Constant(1, 1, 1.0);
  g.numerators = Eigen::MatrixX<std::int64_t>::Constant(1, 1, 1);
  g.denominator = 1;
  const auto result = classical_bias_bruteforce(g);
  CHECK(result.exact == Fraction{1, 1});

  GameMatrix big;
  big.alice_labels.resize(27);
  big.bob_labels = {{1, 2}};
  big.entries = RMatrix::Zero(27, 1);
  CHECK_THROWS_AS((void)classical_bias_bruteforce(big), CapacityError);
}

TEST_CASE("quantum binary value matches classical one for embedded strategies") {
  const BinaryGame ffl = build_ffl_game();
  const auto values = binary_game_values(ffl);
  const Strategy embedded = embed_deterministic_strategy(values.alice_bits, values.bob_bits);
  CHECK(binary_game_value(ffl, embedded) ==
        doctest::Approx(values.classical_value.value()).epsilon(1e-12));
}

TEST_CASE("approximation sandwich around the optimal bias") {
  const GameMatrix g = build_chsh_game(2);
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const auto perturbed = perturb_strategy(build_optimal_chsh_strategy(2), 0.05, seed);
    const double beta = bias(g, perturbed.strategy);
    CHECK(beta <= kInvSqrt2 + 1e-9);
    CHECK(beta >= (1.0 - perturbed.epsilon) * kInvSqrt2 - 1e-9);
  }
}
