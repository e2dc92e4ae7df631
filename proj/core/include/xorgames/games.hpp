#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "xorgames/strategies.hpp"
#include "xorgames/tensor.hpp"

namespace xorgames {

enum class GameKind { XOR, BinaryPredicate };

// Exact rational value (used wherever the game data is rational).
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return double(num) / double(den); }
  Fraction reduced() const;
  bool operator==(const Fraction& o) const {
    return std::int64_t(num) * o.den == std::int64_t(o.num) * den;
  }
  std::string str() const;
};

// G_st = V(s,t) pi(s,t), normalized so sum_st |G_st| = 1.
struct GameMatrix {
  std::vector<int> alice_labels;
  std::vector<PairLabel> bob_labels;
  RMatrix entries;  // n x m
  GameKind kind = GameKind::XOR;

  // Exact representation when available: entries = numerators / denominator.
  Eigen::MatrixX<std::int64_t> numerators;
  std::int64_t denominator = 0;

  Index rows() const { return entries.rows(); }
  Index cols() const { return entries.cols(); }
  bool has_exact() const { return denominator > 0; }
  double signed_sum() const { return entries.sum(); }
  double abs_sum() const { return entries.cwiseAbs().sum(); }
};

// Binary game: question pairs with exact rational weights and a win predicate
// over answer bits.
struct BinaryGame {
  std::vector<PairLabel> questions;      // (s, t)
  std::vector<std::int64_t> prob_num;    // pi(s,t) = prob_num[q] / prob_den
  std::int64_t prob_den = 1;
  // win[q][a][b] for answer bits a, b
  std::vector<std::array<std::array<bool, 2>, 2>> win;

  int alice_question_count() const;
  int bob_question_count() const;
};

using BinaryPredicate = std::function<bool(int a, int b, int s, int t)>;

// n Alice questions, n(n-1) Bob questions (ordered pairs, lexicographic).
// For each i<j: entries +w at (i,(i,j)), (j,(i,j)), (i,(j,i)) and -w at
// (j,(j,i)) with w = 1/(4*C(n,2)).
GameMatrix build_chsh_game(int n);

// Questions uniform over {(0,0),(0,1),(1,0)}; default predicate
// a|s != b|t.  The brute-force optimum of the default is 2/3.
BinaryGame build_ffl_game();
BinaryGame build_ffl_game(const BinaryPredicate& predicate);

// sum_st G_st <psi| A_s (x) B_t |psi>.  Each correlator must be real within
// 1e-10 (Hermitian observables).
double bias(const GameMatrix& g, const Strategy& s);

// omega = (beta + 1) / 2; beta must lie in [-1, 1] within 1e-9.
double win_probability(double beta);

struct BruteForceResult {
  double value = 0.0;           // max_ab sum G a_s b_t
  Fraction exact{0, 0};         // valid when the game carries exact entries
  std::vector<int> alice_signs; // +-1 per alice label
  std::vector<int> bob_signs;   // +-1 per bob label
};

// Exact maximization over a in {+-1}^n using the half-space reduction
// (optimal b_t = sign(sum_s G_st a_s), ties resolved to +1); witness is the
// lexicographically smallest maximizer with +1 < -1.
BruteForceResult classical_bias_bruteforce(const GameMatrix& g);

struct BinaryGameValues {
  Fraction classical_value;  // best deterministic win probability
  Fraction classical_bias;   // 2*value - 1
  std::vector<int> alice_bits;
  std::vector<int> bob_bits;
};

// Enumerates deterministic answer functions (<= 8 questions per side).
BinaryGameValues binary_game_values(const BinaryGame& bg);

// Win probability of a quantum strategy for a binary game; Alice answers from
// A_s via projectors (I +- A_s)/2, Bob likewise from bob_singles.
double binary_game_value(const BinaryGame& bg, const Strategy& s);

}  // namespace xorgames
