#include "xorgames/games.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace xorgames {

namespace {

// <psi| A (x) B |psi> = trace(M^dagger A M B^T) with M the coefficient matrix.
Complex correlator(const CMatrix& m, const CMatrix& a, const CMatrix& b) {
  return (m.adjoint() * a * m * b.transpose()).trace();
}

double real_correlator(const CMatrix& m, const CMatrix& a, const CMatrix& b,
                       const char* what) {
  const Complex z = correlator(m, a, b);
  if (std::abs(z.imag()) >= 1e-10) {
    throw ShapeError(std::string(what) + ": correlator has imaginary residue " +
                     std::to_string(z.imag()));
  }
  return z.real();
}

std::int64_t binomial2(std::int64_t n) { return n * (n - 1) / 2; }

}  // namespace

Fraction Fraction::reduced() const {
  if (den == 0) return *this;
  std::int64_t g = std::gcd(std::abs(num), std::abs(den));
  if (g == 0) return Fraction{0, 1};
  std::int64_t s = den < 0 ? -1 : 1;
  return Fraction{s * num / g, s * den / g};
}

std::string Fraction::str() const {
  Fraction r = reduced();
  if (r.den == 1) return std::to_string(r.num);
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

int BinaryGame::alice_question_count() const {
  int hi = 0;
  for (const auto& q : questions) hi = std::max(hi, q.first + 1);
  return hi;
}

int BinaryGame::bob_question_count() const {
  int hi = 0;
  for (const auto& q : questions) hi = std::max(hi, q.second + 1);
  return hi;
}

GameMatrix build_chsh_game(int n) {
  if (n < 2) throw DomainError("build_chsh_game: n must be >= 2");

  GameMatrix g;
  g.kind = GameKind::XOR;
  g.alice_labels.resize(n);
  for (int i = 0; i < n; ++i) g.alice_labels[i] = i + 1;
  for (int j = 1; j <= n; ++j) {
    for (int k = 1; k <= n; ++k) {
      if (j != k) g.bob_labels.emplace_back(j, k);
    }
  }

  const Index m = Index(g.bob_labels.size());
  g.denominator = 4 * binomial2(n);
  g.numerators = Eigen::MatrixX<std::int64_t>::Zero(n, m);

  auto col = [&](int j, int k) {
    const auto it = std::find(g.bob_labels.begin(), g.bob_labels.end(), PairLabel{j, k});
    return Index(it - g.bob_labels.begin());
  };
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      g.numerators(i - 1, col(i, j)) += 1;
      g.numerators(j - 1, col(i, j)) += 1;
      g.numerators(i - 1, col(j, i)) += 1;
      g.numerators(j - 1, col(j, i)) -= 1;
    }
  }
  g.entries = g.numerators.cast<double>() / double(g.denominator);
  return g;
}

BinaryGame build_ffl_game() {
  return build_ffl_game([](int a, int b, int s, int t) { return (a | s) != (b | t); });
}

BinaryGame build_ffl_game(const BinaryPredicate& predicate) {
  BinaryGame bg;
  bg.questions = {{0, 0}, {0, 1}, {1, 0}};
  bg.prob_num = {1, 1, 1};
  bg.prob_den = 3;
  for (const auto& [s, t] : bg.questions) {
    std::array<std::array<bool, 2>, 2> w{};
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) w[a][b] = predicate(a, b, s, t);
    }
    bg.win.push_back(w);
  }
  return bg;
}

double bias(const GameMatrix& g, const Strategy& s) {
  const CMatrix m = vec_to_matrix(s.state);
  double total = 0.0;
  for (Index r = 0; r < g.rows(); ++r) {
    const int label = g.alice_labels[size_t(r)];
    const auto ita = s.alice.find(label);
    if (ita == s.alice.end()) {
      throw LabelError("bias: strategy has no Alice observable for label " +
                       std::to_string(label));
    }
    if (ita->second.rows() != s.dim_a()) {
      throw ShapeError("bias: Alice observable " + std::to_string(label) +
                       " does not match dimA");
    }
    for (Index c = 0; c < g.cols(); ++c) {
      if (g.entries(r, c) == 0.0) continue;
      const PairLabel& bl = g.bob_labels[size_t(c)];
      const auto itb = s.bob_pairs.find(bl);
      if (itb == s.bob_pairs.end()) {
        throw LabelError("bias: strategy has no Bob observable for label (" +
                         std::to_string(bl.first) + "," + std::to_string(bl.second) + ")");
      }
      if (itb->second.rows() != s.dim_b()) {
        throw ShapeError("bias: Bob observable does not match dimB");
      }
      total += g.entries(r, c) * real_correlator(m, ita->second, itb->second, "bias");
    }
  }
  return total;
}

double win_probability(double beta) {
  if (beta < -1.0 - 1e-9 || beta > 1.0 + 1e-9) {
    throw DomainError("win_probability: beta must lie in [-1, 1], got " +
                      std::to_string(beta));
  }
  return (beta + 1.0) / 2.0;
}

BruteForceResult classical_bias_bruteforce(const GameMatrix& g) {
  const Index n = g.rows();
  if (n > 26) {
    throw CapacityError("classical_bias_bruteforce: " + std::to_string(n) +
                        " sign variables exceed the 2^26 enumeration cap");
  }

  BruteForceResult best;
  bool exact = g.has_exact();
  std::int64_t best_num = 0;
  double best_val = 0.0;
  bool first = true;

  // Lexicographic order with +1 < -1: bit 0 of the mask encodes a_1 = -1.
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
    std::vector<int> a(static_cast<size_t>(n));
    for (Index i = 0; i < n; ++i) a[size_t(i)] = (mask >> i) & 1 ? -1 : 1;

    std::vector<int> b(size_t(g.cols()));
    std::int64_t num = 0;
    double val = 0.0;
    for (Index t = 0; t < g.cols(); ++t) {
      if (exact) {
        std::int64_t col = 0;
        for (Index i = 0; i < n; ++i) col += g.numerators(i, t) * a[size_t(i)];
        b[size_t(t)] = col >= 0 ? 1 : -1;  // ties to +1
        num += std::abs(col);
      } else {
        double col = 0.0;
        for (Index i = 0; i < n; ++i) col += g.entries(i, t) * a[size_t(i)];
        b[size_t(t)] = col >= 0 ? 1 : -1;
        val += std::abs(col);
      }
    }
    bool better;
    if (first) {
      better = true;
      first = false;
    } else {
      better = exact ? num > best_num : val > best_val + 1e-15;
    }
    if (better) {
      best_num = num;
      best_val = val;
      best.alice_signs = a;
      best.bob_signs = b;
    }
  }

  if (exact) {
    best.exact = Fraction{best_num, g.denominator}.reduced();
    best.value = best.exact.value();
  } else {
    best.exact = Fraction{0, 0};
    best.value = best_val;
  }
  return best;
}

BinaryGameValues binary_game_values(const BinaryGame& bg) {
  const int ns = bg.alice_question_count();
  const int nt = bg.bob_question_count();
  if (ns > 8 || nt > 8) {
    throw CapacityError("binary_game_values: more than 8 questions per side");
  }

  BinaryGameValues out;
  std::int64_t best = -1;
  for (std::uint64_t am = 0; am < (std::uint64_t(1) << ns); ++am) {
    for (std::uint64_t bm = 0; bm < (std::uint64_t(1) << nt); ++bm) {
      std::int64_t wins = 0;
      for (size_t q = 0; q < bg.questions.size(); ++q) {
        const auto [s, t] = bg.questions[q];
        const int a = (am >> s) & 1;
        const int b = (bm >> t) & 1;
        if (bg.win[q][a][b]) wins += bg.prob_num[q];
      }
      if (wins > best) {
        best = wins;
        out.alice_bits.assign(size_t(ns), 0);
        out.bob_bits.assign(size_t(nt), 0);
        for (int s = 0; s < ns; ++s) out.alice_bits[size_t(s)] = (am >> s) & 1;
        for (int t = 0; t < nt; ++t) out.bob_bits[size_t(t)] = (bm >> t) & 1;
      }
    }
  }
  out.classical_value = Fraction{best, bg.prob_den}.reduced();
  out.classical_bias = Fraction{2 * best - bg.prob_den, bg.prob_den}.reduced();
  return out;
}

double binary_game_value(const BinaryGame& bg, const Strategy& s) {
  const CMatrix m = vec_to_matrix(s.state);
  const CMatrix ia = CMatrix::Identity(s.dim_a(), s.dim_a());
  const CMatrix ib = CMatrix::Identity(s.dim_b(), s.dim_b());

  double total = 0.0;
  for (size_t q = 0; q < bg.questions.size(); ++q) {
    const auto [sq, tq] = bg.questions[q];
    const auto ita = s.alice.find(sq);
    if (ita == s.alice.end()) {
      throw LabelError("binary_game_value: no Alice observable for question " +
                       std::to_string(sq));
    }
    const auto itb = s.bob_singles.find(tq);
    if (itb == s.bob_singles.end()) {
      throw LabelError("binary_game_value: no Bob observable for question " +
                       std::to_string(tq));
    }
    double p = 0.0;
    for (int a = 0; a < 2; ++a) {
      const CMatrix ea = (ia + (a == 0 ? 1.0 : -1.0) * ita->second) / 2.0;
      for (int b = 0; b < 2; ++b) {
        if (!bg.win[q][a][b]) continue;
        const CMatrix fb = (ib + (b == 0 ? 1.0 : -1.0) * itb->second) / 2.0;
        p += real_correlator(m, ea, fb, "binary_game_value");
      }
    }
    total += double(bg.prob_num[q]) / double(bg.prob_den) * p;
  }
  return total;
}

}  // namespace xorgames
