#pragma once

#include "xorgames/games.hpp"
#include "xorgames/strategies.hpp"
#include "xorgames/tensor.hpp"

namespace xorgames {

// Primal/dual pair for the XOR-game semidefinite program with constraints
// F_i = E_ii, c_i = 1 (unit Gram diagonal).
struct SdpCertificate {
  RMatrix gsym;  // (n+m) x (n+m)
  RMatrix Z;     // primal feasible Gram matrix
  RVector y;     // dual feasible vector
  int n = 0;     // alice question count
  int m = 0;     // bob question count
  double objective = 0.0;  // sum of y
  double gap = 0.0;        // (diag(y) - gsym) . Z
};

// (1/2) [[0, G], [G^T, 0]]; with the Gram matrix below, gsym . Z = bias(G,S).
RMatrix build_gsym(const GameMatrix& g);

// Real part of the Gram matrix of {(A_i (x) I)psi} then {(I (x) B_t)psi},
// Bob columns in game label order.  Unit diagonal, PSD by construction.
RMatrix gram_Z_from_strategy(const GameMatrix& g, const Strategy& s);

// Dual for the CHSH(n) two-orbit symmetry: y = (y_A x n, y_B x m); minimizes
// n*y_A + m*y_B subject to min-eig(diag(y) - gsym) >= 0 by bisection over the
// one-parameter trade-off.  DomainError for anything that is not a CHSH(n)
// matrix.
RVector solve_symmetric_dual(const GameMatrix& g);

// (diag(y) - gsym) . Z for a feasible pair; FeasibilityError names the
// violated invariant otherwise.
double duality_gap(const RVector& y, const RMatrix& Z, const RMatrix& gsym);

struct Lemma2Result {
  double lhs = 0.0;  // sum_k || (u_k.A (x) I)psi - (I (x) v_k.B)psi ||^2
  double rhs = 0.0;  // sum_i y_i - bias(G, S)
  double diff = 0.0;
};

// Splits the slack matrix diag(y) - gsym into vectors w_k = sqrt(mu_k) e_k,
// u_k = head(w_k), v_k = -tail(w_k); checks sum v_k v_k^T = diag(y_bob) and
// evaluates both sides of the residual/value equality.
Lemma2Result lemma2_equality_check(const GameMatrix& g, const Strategy& s,
                                   const RVector& y);

// Convenience: full certificate for a strategy on a CHSH(n) game.
SdpCertificate certify(const GameMatrix& g, const Strategy& s);

}  // namespace xorgames
