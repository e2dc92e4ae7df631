#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "xorgames/tensor.hpp"

namespace xorgames {

using PairLabel = std::pair<int, int>;

// Hermitian involution check (+-1 observable: M = M^dagger, M^2 = I).
void require_observable(const CMatrix& m, double tol = 1e-10);

// Alice observables keyed by question label, Bob observables keyed by an
// ordered pair (CHSH-type games) or a single label (binary games), and the
// shared bipartite state.  A strategy may carry both Bob maps.
struct Strategy {
  std::map<int, CMatrix> alice;
  std::map<PairLabel, CMatrix> bob_pairs;
  std::map<int, CMatrix> bob_singles;
  BipartiteState state;

  explicit Strategy(BipartiteState psi) : state(std::move(psi)) {}

  Index dim_a() const { return state.dim_a; }
  Index dim_b() const { return state.dim_b; }
  int n_alice() const { return static_cast<int>(alice.size()); }

  // Throws ShapeError/DomainError if any observable fails its invariants or
  // does not match the state dimensions.
  void validate(double tol = 1e-10) const;

  // Alice observables in ascending label order.
  std::vector<CMatrix> alice_family() const;
};

// n pairwise-anticommuting +-1 observables on dimension 2^floor(n/2):
// tensor chains A_{2r-1} = Z^(r-1) X I..., A_{2r} = Z^(r-1) Y I..., and for
// odd n the extra A_n = Z^k.
std::vector<CMatrix> build_anticommuting_family(int n);

// Same chain construction on a fixed qubit count (need 2*qubits >= n).  Used
// for the doubled reference system.
std::vector<CMatrix> build_anticommuting_family_on_qubits(int n, int qubits);

// (1/sqrt(d)) sum_i |ii>
BipartiteState maximally_entangled(Index d);

// Uniform superposition over the l-th size-2^floor(n/2) block of |ii> basis
// vectors, both factors in the same basis; the full space has block_count
// blocks.  l is 1-based.
BipartiteState build_block_state(int n, int l, int block_count = 1);

// Alice: anticommuting family on 2^floor(n/2); Bob: B_jk = ((A_j+A_k)/sqrt2)^T
// for j<k and B_kj = ((A_j-A_k)/sqrt2)^T; state maximally entangled.
Strategy build_optimal_chsh_strategy(int n);

// Rigidity reference system.  Plain variant: the canonical strategy on
// 2^floor(n/2).  Doubled variant: the same construction from the first n
// chain generators on ceil(n/2) qubits (dimension 2^ceil(n/2)), state
// (1/sqrt(2*2^floor(n/2))) (sum_{j<=d} + sum_{j>d}) |jj>.
Strategy build_reference_strategy(int n, bool doubled = false);

struct PerturbResult {
  Strategy strategy;
  double epsilon = 0.0;
};

// Conjugates every observable by exp(i*theta*H) with H a seeded random
// Hermitian of unit operator norm (one independent H per observable, drawn
// in label order: alice, bob pairs, bob singles).  The state is unchanged.
// epsilon = max(0, 1 - value/optimum) measured against the game the strategy
// is shaped for: CHSH(n) bias vs 1/sqrt(2) when the full pair structure is
// present, else the FFL value vs 2/3.
PerturbResult perturb_strategy(const Strategy& s, double theta, std::uint64_t seed);

// FFL system: state = Bell, game observables A = {X, Z} and B = {-X, -Z}
// (value exactly 2/3), plus pattern pair-observables B_12, B_21 whose
// correlators against the block state are (+2/3, +2/3, +2/3, -2/3).
Strategy build_ffl_strategy();

// Embeds deterministic answer bits as +-I observables with a product state.
Strategy embed_deterministic_strategy(const std::vector<int>& alice_bits,
                                      const std::vector<int>& bob_bits);

// The four block-level correlators <psi_L| A (x) B |psi_L> for
// (A_i,B_ij), (A_i,B_ji), (A_j,B_ij), (A_j,B_ji).
std::array<double, 4> ffl_correlation_pattern(const Strategy& ffl);

// Block-diagonal direct sum of identically-shaped strategies with state
// sum_l sqrt(w_l) (embedded block state); weights must sum to 1.
Strategy assemble_block_diagonal(const std::vector<Strategy>& blocks,
                                 const std::vector<double>& weights);

}  // namespace xorgames
