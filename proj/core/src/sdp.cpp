#include "xorgames/sdp.hpp"

#include <cmath>

namespace xorgames {

namespace {

double min_eigenvalue(const RMatrix& m) {
  Eigen::SelfAdjointEigenSolver<RMatrix> es(m);
  return es.eigenvalues().minCoeff();
}

bool is_chsh_matrix(const GameMatrix& g, int* n_out) {
  const int n = int(g.rows());
  if (n < 2) return false;
  if (g.cols() != Index(n) * (n - 1)) return false;
  const GameMatrix ref = build_chsh_game(n);
  if (ref.bob_labels != g.bob_labels || ref.alice_labels != g.alice_labels) return false;
  if ((ref.entries - g.entries).cwiseAbs().maxCoeff() > 1e-12) return false;
  *n_out = n;
  return true;
}

// Vectors (A_i (x) I)psi and (I (x) B_t)psi as coefficient matrices.
std::vector<CMatrix> strategy_vectors(const GameMatrix& g, const Strategy& s) {
  const CMatrix m = vec_to_matrix(s.state);
  std::vector<CMatrix> vecs;
  vecs.reserve(size_t(g.rows() + g.cols()));
  for (int label : g.alice_labels) {
    const auto it = s.alice.find(label);
    if (it == s.alice.end()) {
      throw LabelError("gram_Z_from_strategy: missing Alice label " + std::to_string(label));
    }
    if (it->second.rows() != s.dim_a()) {
      throw ShapeError("gram_Z_from_strategy: Alice observable does not match dimA");
    }
    vecs.push_back(it->second * m);
  }
  for (const PairLabel& label : g.bob_labels) {
    const auto it = s.bob_pairs.find(label);
    if (it == s.bob_pairs.end()) {
      throw LabelError("gram_Z_from_strategy: missing Bob label (" +
                       std::to_string(label.first) + "," + std::to_string(label.second) + ")");
    }
    if (it->second.rows() != s.dim_b()) {
      throw ShapeError("gram_Z_from_strategy: Bob observable does not match dimB");
    }
    vecs.push_back(m * it->second.transpose());
  }
  return vecs;
}

}  // namespace

RMatrix build_gsym(const GameMatrix& g) {
  const Index n = g.rows();
  const Index m = g.cols();
  RMatrix out = RMatrix::Zero(n + m, n + m);
  out.block(0, n, n, m) = g.entries / 2.0;
  out.block(n, 0, m, n) = g.entries.transpose() / 2.0;
  return out;
}

RMatrix gram_Z_from_strategy(const GameMatrix& g, const Strategy& s) {
  const auto vecs = strategy_vectors(g, s);
  const Index total = Index(vecs.size());
  RMatrix z(total, total);
  for (Index i = 0; i < total; ++i) {
    for (Index j = i; j < total; ++j) {
      // <x_i, x_j> over the coefficient matrices
      const double re = (vecs[size_t(i)].adjoint() * vecs[size_t(j)]).trace().real();
      z(i, j) = re;
      z(j, i) = re;
    }
  }
  return z;
}

RVector solve_symmetric_dual(const GameMatrix& g) {
  int n = 0;
  if (!is_chsh_matrix(g, &n)) {
    throw DomainError("solve_symmetric_dual: only CHSH(n) game matrices are supported");
  }
  const Index m = g.cols();
  const RMatrix gsym = build_gsym(g);

  const auto assemble = [&](double ya, double yb) {
    RVector y(Index(n) + m);
    y.head(n).setConstant(ya);
    y.tail(m).setConstant(yb);
    return y;
  };
  const auto feasible = [&](double ya, double yb) {
    const RVector y = assemble(ya, yb);
    return min_eigenvalue(RMatrix(y.asDiagonal()) - gsym) >= 0.0;
  };
  // Smallest feasible y_B for fixed y_A, to eigenvalue tolerance 1e-9.
  const auto min_yb = [&](double ya) {
    double lo = 0.0, hi = 1.0;
    while (!feasible(ya, hi)) hi *= 2.0;
    while (hi - lo > 1e-9) {
      const double mid = (lo + hi) / 2.0;
      (feasible(ya, mid) ? hi : lo) = mid;
    }
    return hi;
  };
  const auto objective = [&](double ya) { return n * ya + double(m) * min_yb(ya); };

  // The trade-off is convex in y_A; golden-section over a bracket.
  double lo = 1e-7, hi = 1.0;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = objective(x1), f2 = objective(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
    if (f1 < f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = objective(x2);
    }
  }
  const double ya = (lo + hi) / 2.0;
  return assemble(ya, min_yb(ya));
}

double duality_gap(const RVector& y, const RMatrix& Z, const RMatrix& gsym) {
  if (y.size() != gsym.rows() || Z.rows() != gsym.rows() || Z.cols() != gsym.cols()) {
    throw ShapeError("duality_gap: certificate dimensions disagree");
  }
  const RMatrix slack = RMatrix(y.asDiagonal()) - gsym;
  const double slack_eig = min_eigenvalue(slack);
  if (slack_eig < -1e-9) {
    throw FeasibilityError("duality_gap: dual infeasible, min-eig(diag(y) - gsym) = " +
                           std::to_string(slack_eig));
  }
  const double z_eig = min_eigenvalue(Z);
  if (z_eig < -1e-9) {
    throw FeasibilityError("duality_gap: primal infeasible, min-eig(Z) = " +
                           std::to_string(z_eig));
  }
  const double diag_err = (Z.diagonal().array() - 1.0).abs().maxCoeff();
  if (diag_err > 1e-9) {
    throw FeasibilityError("duality_gap: primal infeasible, |diag(Z) - 1| = " +
                           std::to_string(diag_err));
  }
  return (slack * Z).trace();
}

Lemma2Result lemma2_equality_check(const GameMatrix& g, const Strategy& s,
                                   const RVector& y) {
  const Index n = g.rows();
  const Index m = g.cols();
  if (y.size() != n + m) {
    throw ShapeError("lemma2_equality_check: y length must be n + m");
  }
  const RMatrix slack = RMatrix(y.asDiagonal()) - build_gsym(g);
  Eigen::SelfAdjointEigenSolver<RMatrix> es(slack);

  std::vector<RVector> us, vs;
  for (Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double mu = es.eigenvalues()(k);
    if (mu < -1e-9) {
      throw FeasibilityError("lemma2_equality_check: slack matrix not PSD, eigenvalue " +
                             std::to_string(mu));
    }
    const RVector w = std::sqrt(std::max(mu, 0.0)) * es.eigenvectors().col(k);
    us.push_back(w.head(n));
    vs.push_back(-w.tail(m));
  }

  RMatrix vsum = RMatrix::Zero(m, m);
  for (const auto& v : vs) vsum += v * v.transpose();
  const RMatrix expect = RMatrix(RVector(y.tail(m)).asDiagonal());
  if ((vsum - expect).cwiseAbs().maxCoeff() > 1e-6) {
    throw CertificateError(
        "lemma2_equality_check: sum v_k v_k^T does not match diag(y_bob)");
  }

  const CMatrix mat = vec_to_matrix(s.state);
  const auto alice_obs = [&](Index i) -> const CMatrix& {
    return s.alice.at(g.alice_labels[size_t(i)]);
  };
  const auto bob_obs = [&](Index j) -> const CMatrix& {
    return s.bob_pairs.at(g.bob_labels[size_t(j)]);
  };

  Lemma2Result out;
  for (size_t k = 0; k < us.size(); ++k) {
    CMatrix lhs_mat = CMatrix::Zero(s.dim_a(), s.dim_b());
    for (Index i = 0; i < n; ++i) {
      if (us[k](i) != 0.0) lhs_mat += us[k](i) * (alice_obs(i) * mat);
    }
    for (Index j = 0; j < m; ++j) {
      if (vs[k](j) != 0.0) lhs_mat -= vs[k](j) * (mat * bob_obs(j).transpose());
    }
    out.lhs += lhs_mat.squaredNorm();
  }
  out.rhs = y.sum() - bias(g, s);
  out.diff = std::abs(out.lhs - out.rhs);
  return out;
}

SdpCertificate certify(const GameMatrix& g, const Strategy& s) {
  SdpCertificate cert;
  cert.n = int(g.rows());
  cert.m = int(g.cols());
  cert.gsym = build_gsym(g);
  cert.Z = gram_Z_from_strategy(g, s);
  cert.y = solve_symmetric_dual(g);
  cert.objective = cert.y.sum();
  cert.gap = duality_gap(cert.y, cert.Z, cert.gsym);
  return cert;
}

}  // namespace xorgames
