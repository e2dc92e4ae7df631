#include <doctest.h>

#include <limits>

#include "test_util.hpp"
#include "xorgames/tensor.hpp"

using namespace xorgames;
using namespace xorgames::testing;

namespace {

bool state_close(const BipartiteState& a, const CVector& expected, double tol = 1e-12) {
  return (a.amplitudes - expected).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

TEST_CASE("frobenius_norm on fixed matrices") {
  CHECK(frobenius_norm(CMatrix::Identity(2, 2)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(frobenius_norm(CMatrix::Zero(3, 3)) == 0.0);
  CHECK(frobenius_norm(vec_to_matrix(bell_state())) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("frobenius_norm equals sqrt(trace(M^dagger M))") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix m = random_cmatrix(5, 3, rng);
    const double via_trace = std::sqrt((m.adjoint() * m).trace().real());
    CHECK(frobenius_norm(m) == doctest::Approx(via_trace).epsilon(1e-12));
  }
}

TEST_CASE("kron of identities and Pauli actions on the Bell state") {
  CHECK((kron(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)) -
         CMatrix::Identity(4, 4)).norm() == 0.0);

  const CVector bell = bell_state().amplitudes;
  const CMatrix id = CMatrix::Identity(2, 2);
  const double c = 1.0 / std::sqrt(2.0);

  // (X (x) I) Bell = (|10> + |01>)/sqrt2
  CVector expected(4);
  expected << 0, c, c, 0;
  CHECK(((kron(pauli('x'), id) * bell) - expected).cwiseAbs().maxCoeff() < 1e-15);

  // (Z (x) I) Bell = (|00> - |11>)/sqrt2
  expected << c, 0, 0, -c;
  CHECK(((kron(pauli('z'), id) * bell) - expected).cwiseAbs().maxCoeff() < 1e-15);

  // (XZ (x) I) Bell = (|10> - |01>)/sqrt2
  expected << 0, -c, c, 0;
  CHECK(((kron(CMatrix(pauli('x') * pauli('z')), id) * bell) - expected)
            .cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("kron is associative with exact entry equality") {
  // integer-valued inputs keep every product exact in double arithmetic
  CMatrix a(2, 2), b(2, 3), c(3, 2);
  a << 1, -2, 3, 4;
  b << 2, 0, -1, 5, 1, 0;
  c << 1, 1, 0, -3, 2, 2;
  const CMatrix left = kron(kron(a, b), c);
  const CMatrix right = kron(a, kron(b, c));
  REQUIRE(left.rows() == right.rows());
  REQUIRE(left.cols() == right.cols());
  CHECK(left == right);
}

TEST_CASE("kron refuses results over the entry cap") {
  const CMatrix big = CMatrix::Identity(4096, 4096);
  CHECK_THROWS_AS((void)kron(big, CMatrix::Identity(2, 2)), CapacityError);
}

TEST_CASE("non-finite entries are rejected") {
  CMatrix bad = CMatrix::Identity(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS((void)kron(bad, CMatrix::Identity(2, 2)), DomainError);
  CHECK_THROWS_AS((void)frobenius_norm(bad), DomainError);
}

TEST_CASE("vec_to_matrix basics") {
  CVector amp = CVector::Zero(4);
  amp(0) = 1.0;  // |0>(x)|0>
  const CMatrix m = vec_to_matrix(BipartiteState(2, 2, amp));
  CHECK(m(0, 0) == Complex(1.0, 0.0));
  CHECK(m.cwiseAbs().sum() == doctest::Approx(1.0));

  // Bell -> I/sqrt2
  const CMatrix mb = vec_to_matrix(bell_state());
  CHECK((mb - CMatrix::Identity(2, 2) / std::sqrt(2.0)).norm() < 1e-15);
}

TEST_CASE("vec_to_matrix intertwines one-sided operators") {
  const BipartiteState bell = bell_state();
  const CMatrix id = CMatrix::Identity(2, 2);
  const CVector moved = kron(pauli('x'), id) * bell.amplitudes;
  const CMatrix lhs = pauli('x') * vec_to_matrix(bell);
  const CMatrix rhs = vec_to_matrix(BipartiteState(2, 2, moved));
  CHECK((lhs - rhs).norm() < 1e-14);
}

TEST_CASE("matrix_to_vec inverts vec_to_matrix") {
  // (1/sqrt2) I -> Bell
  const BipartiteState bell = matrix_to_vec(CMatrix::Identity(2, 2) / std::sqrt(2.0));
  CHECK(state_close(bell, bell_state().amplitudes, 1e-15));

  // rank-1 |0><1| -> |0>(x)|1>
  CMatrix rank1 = CMatrix::Zero(2, 2);
  rank1(0, 1) = 1.0;
  CVector expected = CVector::Zero(4);
  expected(1) = 1.0;
  CHECK(state_close(matrix_to_vec(rank1), expected, 1e-15));

  CHECK_THROWS_AS((void)matrix_to_vec(CMatrix::Zero(3, 3)), DegenerateInputError);
}

TEST_CASE("matrix_to_vec round trip on random states") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const Index da = 2 + Index(rng() % 5);
    const Index db = 2 + Index(rng() % 5);
    const BipartiteState psi = random_state(da, db, rng);
    const BipartiteState back = matrix_to_vec(vec_to_matrix(psi));
    CHECK((back.amplitudes - psi.amplitudes).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("bijection properties on random inputs") {
  std::mt19937_64 rng(31);

  // norm equality, 200 random states
  for (int trial = 0; trial < 200; ++trial) {
    const BipartiteState psi = random_state(3, 4, rng);
    CHECK(std::abs(frobenius_norm(vec_to_matrix(psi)) - psi.amplitudes.norm()) < 1e-12);
  }

  // one-sided products, 100 random (A, B, psi)
  for (int trial = 0; trial < 100; ++trial) {
    const Index da = 2 + Index(rng() % 3);
    const Index db = 2 + Index(rng() % 3);
    const BipartiteState psi = random_state(da, db, rng);
    const CMatrix a = random_cmatrix(da, da, rng);
    const CMatrix b = random_cmatrix(db, db, rng);
    const CMatrix m = vec_to_matrix(psi);

    const CVector left = kron(a, CMatrix::Identity(db, db)) * psi.amplitudes;
    CMatrix lhs = a * m;
    CMatrix rhs(da, db);
    for (Index i = 0; i < da; ++i) {
      for (Index j = 0; j < db; ++j) rhs(i, j) = left(i * db + j);
    }
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-11);

    const CVector right = kron(CMatrix::Identity(da, da), b) * psi.amplitudes;
    lhs = m * b.transpose();
    for (Index i = 0; i < da; ++i) {
      for (Index j = 0; j < db; ++j) rhs(i, j) = right(i * db + j);
    }
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("rank-1 image of product states") {
  std::mt19937_64 rng(37);
  CVector u = random_cmatrix(3, 1, rng).col(0);
  CVector w = random_cmatrix(4, 1, rng).col(0);
  u /= u.norm();
  w /= w.norm();
  CVector amp(12);
  for (Index i = 0; i < 3; ++i) {
    for (Index j = 0; j < 4; ++j) amp(i * 4 + j) = u(i) * w(j);
  }
  const CMatrix m = vec_to_matrix(BipartiteState(3, 4, amp));
  Eigen::JacobiSVD<CMatrix> svd(m);
  CHECK(svd.singularValues()(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(svd.singularValues().tail(2).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("schmidt_decompose on fixed states") {
  const SchmidtDecomposition bell = schmidt_decompose(bell_state(), 2);
  REQUIRE(bell.coefficients.size() == 2);
  CHECK(bell.coefficients(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(bell.coefficients(1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(bell.max_block_spread < 1e-12);
  CHECK(bell.block_count == 1);

  CVector product = CVector::Zero(4);
  product(0) = 1.0;
  const SchmidtDecomposition prod = schmidt_decompose(BipartiteState(2, 2, product), 1);
  CHECK(prod.coefficients(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(prod.max_block_spread < 1e-12);
}

TEST_CASE("schmidt_decompose block structure of block states") {
  for (int n : {2, 3, 4, 5}) {
    const BipartiteState psi = build_block_state(n, 1);
    const SchmidtDecomposition sd = schmidt_decompose(psi, Index(1) << (n / 2));
    CHECK(sd.max_block_spread < 1e-12);
    CHECK(std::abs(sd.coefficients.sum() - 1.0) < 1e-10);
  }
}

TEST_CASE("schmidt_decompose reconstruction on random states") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const Index da = 2 + Index(rng() % 15);
    const Index db = 2 + Index(rng() % 15);
    const BipartiteState psi = random_state(da, db, rng);
    const SchmidtDecomposition sd = schmidt_decompose(psi, 2);

    CHECK(std::abs(sd.coefficients.sum() - 1.0) < 1e-10);
    const Index r = sd.coefficients.size();
    CHECK((sd.left_basis.adjoint() * sd.left_basis - CMatrix::Identity(r, r)).norm() < 1e-10);
    CHECK((sd.right_basis.adjoint() * sd.right_basis - CMatrix::Identity(r, r)).norm() < 1e-10);

    CVector rebuilt = CVector::Zero(da * db);
    for (Index k = 0; k < r; ++k) {
      const double c = std::sqrt(std::max(sd.coefficients(k), 0.0));
      for (Index i = 0; i < da; ++i) {
        for (Index j = 0; j < db; ++j) {
          rebuilt(i * db + j) += c * sd.left_basis(i, k) * sd.right_basis(j, k);
        }
      }
    }
    CHECK((rebuilt - psi.amplitudes).norm() < 1e-10);
  }
}

TEST_CASE("operator_abs on fixed observables") {
  CHECK((operator_abs(pauli('z')) - CMatrix::Identity(2, 2)).norm() < 1e-14);
  CHECK((operator_abs(CMatrix(2.0 * pauli('x'))) - 2.0 * CMatrix::Identity(2, 2)).norm() < 1e-14);
  CHECK_THROWS_AS((void)operator_abs(CMatrix(pauli('x') * pauli('z'))), ShapeError);
}

TEST_CASE("operator_abs is PSD and commutes with its argument") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 25; ++trial) {
    const CMatrix h = random_hermitian(5, rng);
    const CMatrix abs = operator_abs(h);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(abs);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    CHECK((abs * h - h * abs).cwiseAbs().maxCoeff() < 1e-9);
    // |h| agrees with sqrt(h^dagger h) computed independently
    Eigen::SelfAdjointEigenSolver<CMatrix> hs(CMatrix(h.adjoint() * h));
    const CMatrix root = hs.eigenvectors() *
                         hs.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                         hs.eigenvectors().adjoint();
    CHECK((abs - root).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("polar_direction of the canonical n=2 Bob sum") {
  const Strategy s = build_optimal_chsh_strategy(2);
  const CMatrix sum = s.bob_pairs.at({1, 2}) + s.bob_pairs.at({2, 1});

  // eigendecomposition oracle: |sum| should be sqrt2 * I
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sum);
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    CHECK(std::abs(std::abs(es.eigenvalues()(i)) - std::sqrt(2.0)) < 1e-12);
  }

  const PolarDirection pd = polar_direction(sum);
  CHECK(pd.dropped == 0);
  CHECK_NOTHROW(require_observable(pd.direction, 1e-10));
  CHECK((sum - std::sqrt(2.0) * pd.direction).norm() < 1e-12);
}

TEST_CASE("state invariants are enforced") {
  CVector bad(4);
  bad << 1.0, 1.0, 0.0, 0.0;  // norm sqrt2
  CHECK_THROWS_AS(BipartiteState(2, 2, bad), DomainError);
  CHECK_THROWS_AS(BipartiteState(2, 2, CVector::Zero(3)), ShapeError);
}
