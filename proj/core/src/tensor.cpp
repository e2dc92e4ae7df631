#include "xorgames/tensor.hpp"

#include <cmath>

namespace xorgames {

void require_finite(const CMatrix& m, const char* what) {
  if (!m.allFinite()) {
    throw DomainError(std::string(what) + ": entries must be finite");
  }
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

BipartiteState::BipartiteState(Index da, Index db, CVector amp)
    : dim_a(da), dim_b(db), amplitudes(std::move(amp)) {
  if (da <= 0 || db <= 0) {
    throw DomainError("BipartiteState: dimensions must be positive");
  }
  if (amplitudes.size() != da * db) {
    throw ShapeError("BipartiteState: amplitude length must equal dimA*dimB");
  }
  if (!amplitudes.allFinite()) {
    throw DomainError("BipartiteState: amplitudes must be finite");
  }
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > kConstructionTol) {
    throw DomainError("BipartiteState: norm must be 1 within 1e-12, got " +
                      std::to_string(norm));
  }
}

double frobenius_norm(const CMatrix& m) {
  require_finite(m, "frobenius_norm");
  return m.norm();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  require_finite(a, "kron(a)");
  require_finite(b, "kron(b)");
  const std::int64_t entries = std::int64_t(a.rows()) * b.rows() * a.cols() * b.cols();
  if (entries > kKronEntryCap) {
    throw CapacityError("kron: result would have " + std::to_string(entries) +
                        " entries, cap is " + std::to_string(kKronEntryCap));
  }
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix vec_to_matrix(const BipartiteState& psi) {
  CMatrix m(psi.dim_a, psi.dim_b);
  for (Index i = 0; i < psi.dim_a; ++i) {
    for (Index j = 0; j < psi.dim_b; ++j) {
      m(i, j) = psi.amplitude(i, j);
    }
  }
  return m;
}

BipartiteState matrix_to_vec(const CMatrix& m) {
  require_finite(m, "matrix_to_vec");
  const double norm = m.norm();
  if (norm < kConstructionTol) {
    throw DegenerateInputError("matrix_to_vec: matrix has (numerically) zero Frobenius norm");
  }
  CVector amp(m.rows() * m.cols());
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      amp(i * m.cols() + j) = m(i, j) / norm;
    }
  }
  return BipartiteState(m.rows(), m.cols(), std::move(amp));
}

SchmidtDecomposition schmidt_decompose(const BipartiteState& psi, Index block_size) {
  if (block_size <= 0) {
    throw DomainError("schmidt_decompose: block_size must be positive");
  }
  const CMatrix m = vec_to_matrix(psi);
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);

  SchmidtDecomposition out;
  const RVector sigma = svd.singularValues();
  out.coefficients = sigma.array().square();
  out.left_basis = svd.matrixU();
  // psi = sum_i sigma_i u_i (x) conj(v_i) with M = U Sigma V^dagger.
  out.right_basis = svd.matrixV().conjugate();
  out.block_size = block_size;

  Index nonzero = 0;
  for (Index i = 0; i < out.coefficients.size(); ++i) {
    if (out.coefficients(i) > kConstructionTol) nonzero = i + 1;
  }
  out.block_count = (nonzero + block_size - 1) / block_size;
  out.last_block_partial = (nonzero % block_size) != 0;

  double spread = 0.0;
  for (Index b = 0; b < out.block_count; ++b) {
    const Index lo = b * block_size;
    const Index hi = std::min(nonzero, lo + block_size);
    // coefficients are sorted non-increasing, so the spread is first - last
    spread = std::max(spread, out.coefficients(lo) - out.coefficients(hi - 1));
  }
  out.max_block_spread = spread;
  return out;
}

CMatrix operator_abs(const CMatrix& m) {
  require_finite(m, "operator_abs");
  if (!is_hermitian(m, 1e-10)) {
    throw ShapeError("operator_abs: input must be Hermitian within 1e-10");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  return es.eigenvectors() * es.eigenvalues().cwiseAbs().asDiagonal() *
         es.eigenvectors().adjoint();
}

PolarDirection polar_direction(const CMatrix& m, double singular_tol) {
  require_finite(m, "polar_direction");
  if (!is_hermitian(m, 1e-10)) {
    throw ShapeError("polar_direction: input must be Hermitian within 1e-10");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  RVector sign = es.eigenvalues();
  Index dropped = 0;
  for (Index i = 0; i < sign.size(); ++i) {
    if (std::abs(sign(i)) <= singular_tol) {
      sign(i) = 0.0;
      ++dropped;
    } else {
      sign(i) = sign(i) > 0 ? 1.0 : -1.0;
    }
  }
  PolarDirection out;
  out.direction =
      es.eigenvectors() * sign.asDiagonal() * es.eigenvectors().adjoint();
  out.dropped = dropped;
  return out;
}

}  // namespace xorgames
