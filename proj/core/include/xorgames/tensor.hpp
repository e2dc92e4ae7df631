#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "xorgames/errors.hpp"

namespace xorgames {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Dense Kronecker products are refused above this total entry count.
inline constexpr std::int64_t kKronEntryCap = std::int64_t{1} << 24;

// Construction-level tolerance (norms, reconstructions).
inline constexpr double kConstructionTol = 1e-12;
// Decomposition-level tolerance (eigen/SVD derived checks).
inline constexpr double kDecompositionTol = 1e-9;

// Vector in C^{dimA} (x) C^{dimB}.  Basis index convention: |i>(x)|j> sits at
// i*dimB + j, i.e. the amplitude vector reshaped row-major is the dimA x dimB
// coefficient matrix.
struct BipartiteState {
  Index dim_a = 0;
  Index dim_b = 0;
  CVector amplitudes;

  BipartiteState(Index da, Index db, CVector amp);

  Complex amplitude(Index i, Index j) const { return amplitudes(i * dim_b + j); }
};

struct SchmidtDecomposition {
  RVector coefficients;  // lambda_i, non-increasing, sum 1
  CMatrix left_basis;    // columns u_i
  CMatrix right_basis;   // columns v_i
  Index block_size = 1;
  Index block_count = 0;  // blocks covering the nonzero coefficients
  bool last_block_partial = false;
  double max_block_spread = 0.0;  // max over blocks of (lambda_max - lambda_min)
};

void require_finite(const CMatrix& m, const char* what);
bool is_hermitian(const CMatrix& m, double tol = 1e-10);

// sqrt(sum |a_ij|^2) = sqrt(trace(M^dagger M))
double frobenius_norm(const CMatrix& m);

CMatrix kron(const CMatrix& a, const CMatrix& b);

// The coefficient-matrix bijection: psi -> M with M(i,j) = amplitude(i,j).
// Satisfies  A*M(psi) = M((A(x)I)psi),  M(psi)*B^T = M((I(x)B)psi)  and
// ||M(psi)||_F = ||psi||.
CMatrix vec_to_matrix(const BipartiteState& psi);

// Inverse of vec_to_matrix after normalizing by the Frobenius norm.
BipartiteState matrix_to_vec(const CMatrix& m);

// SVD of the coefficient matrix; coefficients are the squared singular values.
SchmidtDecomposition schmidt_decompose(const BipartiteState& psi, Index block_size);

// |M| = sqrt(M^dagger M) for Hermitian M, via eigendecomposition.
CMatrix operator_abs(const CMatrix& m);

// M * pinv(|M|): the Hermitian polar direction, eigenvalues with |mu| below
// singular_tol dropped from the inverse.  Returns the direction and the
// number of dropped eigenvalues.
struct PolarDirection {
  CMatrix direction;
  Index dropped = 0;
};
PolarDirection polar_direction(const CMatrix& m, double singular_tol = 1e-9);

}  // namespace xorgames
