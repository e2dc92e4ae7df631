#include "xorgames/strategies.hpp"

#include <cmath>
#include <random>

#include "xorgames/games.hpp"

namespace xorgames {

namespace {

const Complex kI{0.0, 1.0};

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

// Z^(prefix) (x) letter (x) I^(qubits - prefix - 1)
CMatrix chain(int qubits, int prefix, const CMatrix& letter) {
  CMatrix out = CMatrix::Identity(1, 1);
  for (int q = 0; q < prefix; ++q) out = kron(out, pauli_z());
  out = kron(out, letter);
  for (int q = prefix + 1; q < qubits; ++q) {
    out = kron(out, CMatrix::Identity(2, 2));
  }
  return out;
}

// Deterministic standard normal stream; Box-Muller over mt19937_64 so the
// bytes do not depend on the standard library's distribution internals.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

 private:
  double uniform() {
    // 53-bit mantissa uniform in (0, 1)
    return (double(rng_() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
  }

  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Random Hermitian with unit operator norm.
CMatrix random_unit_hermitian(Index d, GaussianStream& g) {
  CMatrix x(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) x(i, j) = Complex(g.next(), g.next());
  }
  CMatrix h = (x + x.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  if (top < 1e-15) return CMatrix::Zero(d, d);
  return h / top;
}

CMatrix conjugate_by_rotation(const CMatrix& obs, const CMatrix& h, double theta) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  CVector phases(es.eigenvalues().size());
  for (Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::exp(kI * theta * es.eigenvalues()(i));
  }
  const CMatrix u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  CMatrix out = u * obs * u.adjoint();
  return (out + out.adjoint()) / 2.0;  // keep exactly Hermitian
}

}  // namespace

void require_observable(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) {
    throw ShapeError("observable: matrix must be square");
  }
  require_finite(m, "observable");
  if (!is_hermitian(m, tol)) {
    throw ShapeError("observable: matrix must be Hermitian");
  }
  const CMatrix sq = m * m;
  if ((sq - CMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() > tol) {
    throw ShapeError("observable: matrix must square to the identity");
  }
}

void Strategy::validate(double tol) const {
  for (const auto& [label, obs] : alice) {
    require_observable(obs, tol);
    if (obs.rows() != dim_a()) {
      throw ShapeError("strategy: Alice observable " + std::to_string(label) +
                       " does not match dimA");
    }
  }
  auto check_bob = [&](const CMatrix& obs) {
    require_observable(obs, tol);
    if (obs.rows() != dim_b()) {
      throw ShapeError("strategy: Bob observable does not match dimB");
    }
  };
  for (const auto& [label, obs] : bob_pairs) check_bob(obs);
  for (const auto& [label, obs] : bob_singles) check_bob(obs);
}

std::vector<CMatrix> Strategy::alice_family() const {
  std::vector<CMatrix> fam;
  fam.reserve(alice.size());
  for (const auto& [label, obs] : alice) fam.push_back(obs);
  return fam;
}

std::vector<CMatrix> build_anticommuting_family_on_qubits(int n, int qubits) {
  if (n < 2) throw DomainError("build_anticommuting_family: n must be >= 2");
  if (2 * qubits < n) {
    throw DomainError("build_anticommuting_family: need 2*qubits >= n");
  }
  std::vector<CMatrix> fam;
  fam.reserve(size_t(n));
  for (int i = 1; i <= n; ++i) {
    const int r = (i + 1) / 2;  // chain position, 1-based
    fam.push_back(chain(qubits, r - 1, i % 2 == 1 ? pauli_x() : pauli_y()));
  }
  return fam;
}

std::vector<CMatrix> build_anticommuting_family(int n) {
  if (n < 2) throw DomainError("build_anticommuting_family: n must be >= 2");
  const int k = n / 2;
  std::vector<CMatrix> fam;
  fam.reserve(size_t(n));
  for (int r = 1; r <= k; ++r) {
    fam.push_back(chain(k, r - 1, pauli_x()));
    fam.push_back(chain(k, r - 1, pauli_y()));
  }
  if (n % 2 == 1) {
    CMatrix zchain = CMatrix::Identity(1, 1);
    for (int q = 0; q < k; ++q) zchain = kron(zchain, pauli_z());
    fam.push_back(zchain);
  }
  return fam;
}

BipartiteState maximally_entangled(Index d) {
  if (d < 1) throw DomainError("maximally_entangled: d must be >= 1");
  CVector amp = CVector::Zero(d * d);
  const double c = 1.0 / std::sqrt(double(d));
  for (Index i = 0; i < d; ++i) amp(i * d + i) = c;
  return BipartiteState(d, d, std::move(amp));
}

BipartiteState build_block_state(int n, int l, int block_count) {
  if (n < 1) throw DomainError("build_block_state: n must be >= 1");
  if (block_count < 1) throw DomainError("build_block_state: block_count must be >= 1");
  if (l < 1 || l > block_count) {
    throw DomainError("build_block_state: block index " + std::to_string(l) +
                      " out of range for " + std::to_string(block_count) + " blocks");
  }
  const Index bs = Index(1) << (n / 2);
  const Index d = bs * block_count;
  CVector amp = CVector::Zero(d * d);
  const double c = 1.0 / std::sqrt(double(bs));
  for (Index i = Index(l - 1) * bs; i < Index(l) * bs; ++i) amp(i * d + i) = c;
  return BipartiteState(d, d, std::move(amp));
}

namespace {

Strategy strategy_from_family(const std::vector<CMatrix>& fam, BipartiteState psi) {
  const int n = int(fam.size());
  Strategy s(std::move(psi));
  for (int i = 1; i <= n; ++i) s.alice[i] = fam[size_t(i - 1)];
  const double r = 1.0 / std::sqrt(2.0);
  for (int j = 1; j <= n; ++j) {
    for (int k = j + 1; k <= n; ++k) {
      s.bob_pairs[{j, k}] = (r * (fam[size_t(j - 1)] + fam[size_t(k - 1)])).transpose();
      s.bob_pairs[{k, j}] = (r * (fam[size_t(j - 1)] - fam[size_t(k - 1)])).transpose();
    }
  }
  return s;
}

}  // namespace

Strategy build_optimal_chsh_strategy(int n) {
  if (n < 2) throw DomainError("build_optimal_chsh_strategy: n must be >= 2");
  auto fam = build_anticommuting_family(n);
  const Index d = fam.front().rows();
  return strategy_from_family(fam, maximally_entangled(d));
}

Strategy build_reference_strategy(int n, bool doubled) {
  if (n < 2) throw DomainError("build_reference_strategy: n must be >= 2");
  if (!doubled) return build_optimal_chsh_strategy(n);
  auto fam = build_anticommuting_family_on_qubits(n, n / 2 + 1);
  const Index d = fam.front().rows();
  return strategy_from_family(fam, maximally_entangled(d));
}

PerturbResult perturb_strategy(const Strategy& s, double theta, std::uint64_t seed) {
  if (theta < 0) throw DomainError("perturb_strategy: theta must be >= 0");

  Strategy out = s;
  if (theta > 0) {
    GaussianStream g(seed);
    for (auto& [label, obs] : out.alice) {
      obs = conjugate_by_rotation(obs, random_unit_hermitian(obs.rows(), g), theta);
    }
    for (auto& [label, obs] : out.bob_pairs) {
      obs = conjugate_by_rotation(obs, random_unit_hermitian(obs.rows(), g), theta);
    }
    for (auto& [label, obs] : out.bob_singles) {
      obs = conjugate_by_rotation(obs, random_unit_hermitian(obs.rows(), g), theta);
    }
  }

  const int n = out.n_alice();
  bool chsh_shaped = n >= 2 && int(out.bob_pairs.size()) == n * (n - 1);
  for (int i = 1; chsh_shaped && i <= n; ++i) {
    chsh_shaped = out.alice.count(i) > 0;
  }
  double epsilon = 0.0;
  if (chsh_shaped) {
    const double beta = bias(build_chsh_game(n), out);
    epsilon = std::max(0.0, 1.0 - beta * std::sqrt(2.0));
  } else if (!out.bob_singles.empty()) {
    const double omega = binary_game_value(build_ffl_game(), out);
    epsilon = std::max(0.0, 1.0 - omega * 1.5);
  }
  return PerturbResult{std::move(out), epsilon};
}

Strategy build_ffl_strategy() {
  Strategy s(maximally_entangled(2));
  s.alice[0] = pauli_x();
  s.alice[1] = pauli_z();
  s.bob_singles[0] = -pauli_x();
  s.bob_singles[1] = -pauli_z();
  // Pattern observables: Bloch vectors (2/3, 1/3, 2/3) and (2/3, -1/3, -2/3).
  auto bloch = [](double x, double y, double z) {
    return (x * pauli_x() + y * pauli_y() + z * pauli_z()).eval();
  };
  s.bob_pairs[{1, 2}] = bloch(2.0 / 3, 1.0 / 3, 2.0 / 3);
  s.bob_pairs[{2, 1}] = bloch(2.0 / 3, -1.0 / 3, -2.0 / 3);
  return s;
}

Strategy embed_deterministic_strategy(const std::vector<int>& alice_bits,
                                      const std::vector<int>& bob_bits) {
  CVector amp = CVector::Zero(4);
  amp(0) = 1.0;  // |0>(x)|0>
  Strategy s(BipartiteState(2, 2, std::move(amp)));
  const CMatrix id = CMatrix::Identity(2, 2);
  for (size_t q = 0; q < alice_bits.size(); ++q) {
    s.alice[int(q)] = (alice_bits[q] == 0 ? 1.0 : -1.0) * id;
  }
  for (size_t q = 0; q < bob_bits.size(); ++q) {
    s.bob_singles[int(q)] = (bob_bits[q] == 0 ? 1.0 : -1.0) * id;
  }
  return s;
}

std::array<double, 4> ffl_correlation_pattern(const Strategy& ffl) {
  const auto ai = ffl.alice.find(0);
  const auto aj = ffl.alice.find(1);
  const auto bij = ffl.bob_pairs.find({1, 2});
  const auto bji = ffl.bob_pairs.find({2, 1});
  if (ai == ffl.alice.end() || aj == ffl.alice.end() ||
      bij == ffl.bob_pairs.end() || bji == ffl.bob_pairs.end()) {
    throw LabelError("ffl_correlation_pattern: strategy lacks the pattern observables");
  }
  const CMatrix m = vec_to_matrix(build_block_state(2, 1));
  auto corr = [&](const CMatrix& a, const CMatrix& b) {
    return (m.adjoint() * a * m * b.transpose()).trace().real();
  };
  return {corr(ai->second, bij->second), corr(ai->second, bji->second),
          corr(aj->second, bij->second), corr(aj->second, bji->second)};
}

Strategy assemble_block_diagonal(const std::vector<Strategy>& blocks,
                                 const std::vector<double>& weights) {
  if (blocks.empty() || blocks.size() != weights.size()) {
    throw DomainError("assemble_block_diagonal: need matching nonempty blocks/weights");
  }
  double wsum = 0.0;
  for (double w : weights) {
    if (w < 0) throw DomainError("assemble_block_diagonal: weights must be >= 0");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-10) {
    throw DomainError("assemble_block_diagonal: weights must sum to 1");
  }

  const Index da = blocks.front().dim_a();
  const Index db = blocks.front().dim_b();
  if (da != db) throw ShapeError("assemble_block_diagonal: blocks must be square systems");
  const Index s = Index(blocks.size());
  const Index d = da * s;

  CVector amp = CVector::Zero(d * d);
  for (Index l = 0; l < s; ++l) {
    const CMatrix mb = vec_to_matrix(blocks[size_t(l)].state);
    const double c = std::sqrt(weights[size_t(l)]);
    for (Index i = 0; i < da; ++i) {
      for (Index j = 0; j < db; ++j) {
        amp((l * da + i) * d + (l * db + j)) = c * mb(i, j);
      }
    }
  }
  Strategy out(BipartiteState(d, d, std::move(amp)));

  auto embed = [&](auto getter) {
    CMatrix big = CMatrix::Zero(d, d);
    for (Index l = 0; l < s; ++l) {
      big.block(l * da, l * da, da, da) = getter(blocks[size_t(l)]);
    }
    return big;
  };
  for (const auto& [label, obs] : blocks.front().alice) {
    const int lbl = label;
    out.alice[lbl] = embed([&](const Strategy& b) { return b.alice.at(lbl); });
  }
  for (const auto& [label, obs] : blocks.front().bob_pairs) {
    const PairLabel lbl = label;
    out.bob_pairs[lbl] = embed([&](const Strategy& b) { return b.bob_pairs.at(lbl); });
  }
  for (const auto& [label, obs] : blocks.front().bob_singles) {
    const int lbl = label;
    out.bob_singles[lbl] = embed([&](const Strategy& b) { return b.bob_singles.at(lbl); });
  }
  return out;
}

}  // namespace xorgames
