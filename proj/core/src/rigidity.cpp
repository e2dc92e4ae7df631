#include "xorgames/rigidity.hpp"

#include <algorithm>
#include <cmath>

namespace xorgames {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
const Complex kI{0.0, 1.0};

int flip_sign_right(int t, const std::vector<int>& j) {
  // (-1)^(sum_{m>t} j_m): moving A_t in from the right.
  int parity = 0;
  for (size_t m = size_t(t); m < j.size(); ++m) parity ^= j[m] & 1;
  return parity ? -1 : 1;
}

// Row-major flattening, matching the BipartiteState index convention.
CVector flatten_state(const CMatrix& m) {
  CVector v(m.rows() * m.cols());
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  }
  return v;
}

}  // namespace

const char* to_string(BoundId id) {
  switch (id) {
    case BoundId::Thm1R1: return "THM1_R1";
    case BoundId::Thm1R2: return "THM1_R2";
    case BoundId::Lemma3Xor: return "LEMMA3_XOR";
    case BoundId::Lemma3Ffl: return "LEMMA3_FFL";
    case BoundId::Lemma4: return "LEMMA4";
    case BoundId::Lemma5: return "LEMMA5";
    case BoundId::Lemma7: return "LEMMA7";
    case BoundId::Thm2Alice: return "THM2_ALICE";
    case BoundId::Thm2Bob: return "THM2_BOB";
    case BoundId::FflAlice: return "FFL_ALICE";
    case BoundId::FflBob: return "FFL_BOB";
    case BoundId::TUnitNorm: return "T_UNITNORM";
    case BoundId::Lemma6Identity: return "LEMMA6_IDENTITY";
  }
  return "UNKNOWN";
}

BoundId bound_id_from_string(const std::string& name) {
  for (BoundId id : all_bound_ids()) {
    if (name == to_string(id)) return id;
  }
  throw DomainError("unknown bound id: " + name);
}

std::vector<BoundId> all_bound_ids() {
  return {BoundId::Thm1R1,    BoundId::Thm1R2,   BoundId::Lemma3Xor,
          BoundId::Lemma3Ffl, BoundId::Lemma4,   BoundId::Lemma5,
          BoundId::Lemma7,    BoundId::Thm2Alice, BoundId::Thm2Bob,
          BoundId::FflAlice,  BoundId::FflBob,   BoundId::TUnitNorm,
          BoundId::Lemma6Identity};
}

BoundReport make_bound_report(BoundId id, int n, double epsilon, double residual,
                              double stated_bound, std::uint64_t seed, double theta,
                              std::string game) {
  BoundReport r;
  r.bound_id = id;
  r.n = n;
  r.epsilon = epsilon;
  r.residual = residual;
  r.stated_bound = stated_bound;
  r.slack = stated_bound - residual;
  r.passed = residual <= stated_bound + kBoundSlack;
  r.seed = seed;
  r.theta = theta;
  r.game = std::move(game);
  return r;
}

namespace bounds {
double thm1(int n, double eps) { return 2.0 * n * (n - 1) * eps; }
double lemma3_xor(int n, double eps) {
  return (1.0 + kSqrt2) * (1.0 + kSqrt2) * n * (n - 1) * eps;
}
double lemma3_ffl(int n, double eps) {
  return 2.0 * (7.0 / 3.0) * (7.0 / 3.0) * n * (n - 1) * eps;
}
double lemma4(int n, double eps) { return 17.0 * std::sqrt(n * eps); }
double lemma5(int n, double eps) { return (100.0 / 9.0) * n * n * std::sqrt(eps); }
double lemma7(int n, double eps) {
  return (8200.0 * kSqrt2 / 27.0) * n * n * std::sqrt(eps);
}
double lemma7_chain(int n, double eps) {
  return std::sqrt(2.0 * n * (n - 1) * eps) + (2200.0 / 27.0) * n * n * std::sqrt(eps);
}
double thm2_alice(int n, double eps) { return 12.0 * n * n * std::sqrt(eps); }
double thm2_bob(int n, double eps) { return 17.0 * n * n * std::sqrt(eps); }
double ffl_alice(int n, double eps) { return 9.0 * n * n * std::sqrt(eps); }
double ffl_bob(int n, double eps) { return (44.0 / 3.0) * n * n * std::sqrt(eps); }
}  // namespace bounds

std::pair<double, double> theorem1_residuals(const Strategy& s, int n) {
  const auto sides = theorem1_equality_sides(s, n);
  return {sides[0] + sides[1], sides[2] + sides[3]};
}

std::array<double, 4> theorem1_equality_sides(const Strategy& s, int n) {
  if (s.n_alice() != n) {
    throw ShapeError("theorem1_residuals: strategy has " +
                     std::to_string(s.n_alice()) + " Alice observables, expected " +
                     std::to_string(n));
  }
  const auto fam = s.alice_family();
  const CMatrix m = vec_to_matrix(s.state);

  std::array<double, 4> sides{0.0, 0.0, 0.0, 0.0};
  std::vector<int> labels;
  labels.reserve(s.alice.size());
  for (const auto& [label, obs] : s.alice) labels.push_back(label);

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const PairLabel ij{labels[size_t(i)], labels[size_t(j)]};
      const PairLabel ji{labels[size_t(j)], labels[size_t(i)]};
      const auto itij = s.bob_pairs.find(ij);
      const auto itji = s.bob_pairs.find(ji);
      if (itij == s.bob_pairs.end() || itji == s.bob_pairs.end()) {
        throw ShapeError("theorem1_residuals: missing Bob pair observable");
      }
      const CMatrix& ai = fam[size_t(i)];
      const CMatrix& aj = fam[size_t(j)];
      const CMatrix plus = (ai + aj) / kSqrt2;
      const CMatrix minus = (ai - aj) / kSqrt2;
      sides[0] += (plus * m - m * itij->second.transpose()).squaredNorm();
      sides[1] += (minus * m - m * itji->second.transpose()).squaredNorm();

      const CMatrix bplus = (itij->second + itji->second) / kSqrt2;
      const CMatrix bminus = (itij->second - itji->second) / kSqrt2;
      sides[2] += (ai * m - m * bplus.transpose()).squaredNorm();
      sides[3] += (aj * m - m * bminus.transpose()).squaredNorm();
    }
  }
  return sides;
}

Lemma3Result lemma3_anticommutator_residual(const Strategy& s, BoundVariant variant,
                                            const CheckContext& ctx) {
  const auto fam = s.alice_family();
  const int n = int(fam.size());
  const CMatrix m = vec_to_matrix(s.state);

  double residual = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const CMatrix anti = (fam[size_t(i)] * fam[size_t(j)] +
                            fam[size_t(j)] * fam[size_t(i)]) / 2.0;
      residual += (anti * m).squaredNorm();
    }
  }

  const bool xor_variant = variant == BoundVariant::XOR;
  Lemma3Result out;
  out.report = make_bound_report(
      xor_variant ? BoundId::Lemma3Xor : BoundId::Lemma3Ffl, n, ctx.epsilon, residual,
      xor_variant ? bounds::lemma3_xor(n, ctx.epsilon) : bounds::lemma3_ffl(n, ctx.epsilon),
      ctx.seed, ctx.theta, ctx.game);
  out.proof_chain_a = 2.0 * (5.0 / 2.0) * (5.0 / 2.0) * n * (n - 1) * ctx.epsilon;
  out.proof_chain_b = 2.0 * (7.0 / 2.0) * (7.0 / 2.0) * n * (n - 1) * ctx.epsilon;
  return out;
}

BoundReport lemma4_check(const Strategy& s, int k, int l, const CheckContext& ctx) {
  const auto fam = s.alice_family();
  const int n = int(fam.size());
  if (k < 1 || k > n || l < 1 || l > n || k == l) {
    throw DomainError("lemma4_check: need distinct 1-based indices k, l");
  }
  const auto itkl = s.bob_pairs.find({k, l});
  const auto itlk = s.bob_pairs.find({l, k});
  if (itkl == s.bob_pairs.end() || itlk == s.bob_pairs.end()) {
    throw LabelError("lemma4_check: strategy lacks Bob pair (" + std::to_string(k) +
                     "," + std::to_string(l) + ") or its reverse");
  }

  const double sgn = l > k ? 1.0 : -1.0;
  const CMatrix sum = sgn * itkl->second + itlk->second;
  const PolarDirection pd = polar_direction(sum, 1e-9);
  if (pd.dropped * 2 > sum.rows()) {
    throw SingularOperatorError(
        "lemma4_check: |+-B_kl + B_lk| singular on more than half its spectrum");
  }

  const CMatrix m = vec_to_matrix(s.state);
  const double residual =
      (fam[size_t(k - 1)] * m - m * pd.direction.transpose()).norm();
  return make_bound_report(BoundId::Lemma4, n, ctx.epsilon, residual,
                           bounds::lemma4(n, ctx.epsilon), ctx.seed, ctx.theta,
                           ctx.game);
}

int sign_parity(int i, const std::vector<int>& j) {
  if (i < 1 || size_t(i) > j.size()) {
    throw DomainError("sign_parity: index out of range");
  }
  int parity = 0;
  for (int m = 0; m < i - 1; ++m) parity ^= j[size_t(m)] & 1;
  return parity ? -1 : 1;
}

CMatrix subset_product(const std::vector<CMatrix>& family, const std::vector<int>& bits) {
  if (family.empty() || family.size() != bits.size()) {
    throw ShapeError("subset_product: family and bit-vector sizes disagree");
  }
  CMatrix out = CMatrix::Identity(family.front().rows(), family.front().cols());
  for (size_t i = 0; i < family.size(); ++i) {
    if (bits[i] & 1) out = out * family[i];
  }
  return out;
}

BoundReport lemma5_check(const Strategy& s, const std::vector<int>& j,
                         const CheckContext& ctx) {
  const auto fam = s.alice_family();
  const int n = int(fam.size());
  if (j.size() != size_t(n)) {
    throw ShapeError("lemma5_check: bit-vector length must equal n");
  }

  const int t = (j[0] & 1) + 1;
  std::vector<int> j2 = j;
  j2[size_t(t - 1)] = (j[0] & 1) ^ 1;
  const bool changed = j2 != j;
  const double sign = changed ? double(sign_parity(t, j)) : 1.0;

  const CMatrix m = vec_to_matrix(s.state);
  const CMatrix p = subset_product(fam, j);
  const CMatrix q = subset_product(fam, j2);
  const double residual = ((p - sign * q) * m).norm();
  return make_bound_report(BoundId::Lemma5, n, ctx.epsilon, residual,
                           bounds::lemma5(n, ctx.epsilon), ctx.seed, ctx.theta,
                           ctx.game);
}

Lemma6Result lemma6_product_identity(int n) {
  if (n < 3 || n % 2 == 0) {
    throw DomainError("lemma6_product_identity: n must be odd and >= 3");
  }
  const Strategy ref = build_reference_strategy(n, /*doubled=*/true);
  const auto fam = ref.alice_family();
  const Index dim = fam.front().rows();

  CMatrix prod = CMatrix::Identity(dim, dim);
  for (const auto& a : fam) prod = prod * a;

  const CMatrix sq = prod * prod;
  const CMatrix id = CMatrix::Identity(dim, dim);
  Lemma6Result out;
  CMatrix normalized;
  if ((sq - id).cwiseAbs().maxCoeff() < 1e-9) {
    normalized = prod;
    out.phase_normalized = false;
  } else if ((sq + id).cwiseAbs().maxCoeff() < 1e-9) {
    normalized = -kI * prod;  // product squares to -I: divide out the phase i
    out.phase_normalized = true;
  } else {
    throw CertificateError("lemma6_product_identity: product is not an involution up to phase");
  }
  if (!is_hermitian(normalized, 1e-9)) {
    throw CertificateError("lemma6_product_identity: normalized product is not Hermitian");
  }

  // Signed block identity in the eigenbasis: eigenvalues sorted ascending must
  // be (-1)^n (I, -I) = (-1 ... -1, +1 ... +1) with equal multiplicities.
  Eigen::SelfAdjointEigenSolver<CMatrix> es(normalized);
  const CMatrix diag = es.eigenvectors().adjoint() * normalized * es.eigenvectors();
  RMatrix target = RMatrix::Zero(dim, dim);
  for (Index i = 0; i < dim / 2; ++i) target(i, i) = -1.0;
  for (Index i = dim / 2; i < dim; ++i) target(i, i) = 1.0;
  const double residual = (diag - target.cast<Complex>()).norm();

  // Displayed action on the doubled state, term by term.
  const BipartiteState& psi = ref.state;
  const CMatrix mref = vec_to_matrix(psi);
  CMatrix expected = CMatrix::Zero(dim, dim);
  const double c = 1.0 / std::sqrt(double(dim));
  for (Index jcol = 0; jcol < dim; ++jcol) {
    expected.col(jcol) += c * prod.col(jcol);  // (prod |j>) (x) |j>
  }
  out.action_residual = (prod * mref - expected).norm();

  out.report = make_bound_report(BoundId::Lemma6Identity, n, 0.0, residual, 1e-9, 0,
                                 0.0, "chsh");
  return out;
}

Lemma7Result lemma7_check(const Strategy& s, const std::vector<int>& j, int k, int l,
                          const CheckContext& ctx) {
  const auto fam = s.alice_family();
  const int n = int(fam.size());
  if (j.size() != size_t(n)) {
    throw ShapeError("lemma7_check: bit-vector length must equal n");
  }
  if (k < 1 || k > n || l < 1 || l > n || k == l) {
    throw DomainError("lemma7_check: need distinct 1-based indices k, l");
  }
  const auto itkl = s.bob_pairs.find({k, l});
  if (itkl == s.bob_pairs.end()) {
    throw LabelError("lemma7_check: strategy lacks Bob pair (" + std::to_string(k) +
                     "," + std::to_string(l) + ")");
  }

  const CMatrix m = vec_to_matrix(s.state);
  const CMatrix lhs = subset_product(fam, j) * m * itkl->second.transpose();

  // Strategy-consistent permutation identity: B_kl^T ~ (+-A_k + A_l)/sqrt2 and
  // right-multiplication normal ordering.
  const double sgn = l > k ? 1.0 : -1.0;
  std::vector<int> jk = j, jl = j;
  jk[size_t(k - 1)] ^= 1;
  jl[size_t(l - 1)] ^= 1;
  const double rho_k = flip_sign_right(k, j);
  const double rho_l = flip_sign_right(l, j);
  const CMatrix rhs =
      (sgn * rho_k * subset_product(fam, jk) + rho_l * subset_product(fam, jl)) * m /
      kSqrt2;
  const double residual = (lhs - rhs).norm();

  // Literal displayed form: set-semantics flips driven by bits k and l, with
  // the overall sign chosen optimally.
  auto set_flip = [&](int src) {
    const int t = (j[size_t(src - 1)] & 1) + 1;
    std::vector<int> out_bits = j;
    out_bits[size_t(t - 1)] = (j[size_t(src - 1)] & 1) ^ 1;
    const bool changed = out_bits != j;
    const double sign = changed ? double(sign_parity(t, j)) : 1.0;
    return std::pair<std::vector<int>, double>{out_bits, sign};
  };
  const auto [ja, sa] = set_flip(k);
  const auto [jb, sb] = set_flip(l);
  const CMatrix flips =
      (sa * subset_product(fam, ja) + sb * subset_product(fam, jb)) * m * (2.0 / 3.0);
  const double lit_plus = (lhs - flips).norm();
  const double lit_minus = (lhs + flips).norm();

  Lemma7Result out;
  out.report = make_bound_report(BoundId::Lemma7, n, ctx.epsilon, residual,
                                 bounds::lemma7(n, ctx.epsilon), ctx.seed, ctx.theta,
                                 ctx.game);
  out.literal_residual = std::min(lit_plus, lit_minus);
  out.chain_bound = bounds::lemma7_chain(n, ctx.epsilon);
  return out;
}

IntertwinerT build_intertwiner(const Strategy& s, const Strategy& r, int n) {
  if (s.n_alice() != n || r.n_alice() != n) {
    throw ShapeError("build_intertwiner: both strategies need n Alice observables");
  }
  const auto fam_s = s.alice_family();
  const auto fam_r = r.alice_family();
  const Index rows = s.dim_a() * s.dim_b();
  const Index cols = r.dim_a() * r.dim_b();
  if (std::int64_t(rows) * cols > kKronEntryCap) {
    throw CapacityError("build_intertwiner: joint dimension exceeds the entry cap");
  }

  const CMatrix ms = vec_to_matrix(s.state);
  const CMatrix mr = vec_to_matrix(r.state);

  IntertwinerT t;
  t.n = n;
  t.normalization = 1.0 / std::sqrt(std::pow(2.0, n));
  t.matrix = CMatrix::Zero(rows, cols);

  std::vector<int> bits(size_t(n), 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
    for (int i = 0; i < n; ++i) bits[size_t(i)] = int((mask >> i) & 1);
    const CVector lv = flatten_state(subset_product(fam_s, bits) * ms);  // (P_j (x) I) psi_S
    const CVector rv = flatten_state(subset_product(fam_r, bits) * mr);  // (P~_j (x) I) psi_R
    t.matrix += t.normalization * lv * rv.adjoint();
  }
  return t;
}

std::pair<BoundReport, BoundReport> theorem2_frobenius_check(
    const IntertwinerT& t, const Strategy& s, const Strategy& r,
    BoundVariant variant, const CheckContext& ctx) {
  const double tnorm = t.matrix.norm();
  if (tnorm < 1e-12) {
    throw DegenerateIntertwinerError("theorem2_frobenius_check: ||T||_F < 1e-12");
  }
  const int n = t.n;
  const CMatrix ida = CMatrix::Identity(s.dim_a(), s.dim_a());
  const CMatrix idb = CMatrix::Identity(s.dim_b(), s.dim_b());
  const CMatrix idra = CMatrix::Identity(r.dim_a(), r.dim_a());
  const CMatrix idrb = CMatrix::Identity(r.dim_b(), r.dim_b());

  double alice = 0.0;
  {
    auto it_s = s.alice.begin();
    auto it_r = r.alice.begin();
    for (; it_s != s.alice.end() && it_r != r.alice.end(); ++it_s, ++it_r) {
      const CMatrix lhs = kron(it_s->second, idb) * t.matrix;
      const CMatrix rhs = t.matrix * kron(it_r->second, idrb);
      alice = std::max(alice, (lhs - rhs).norm() / tnorm);
    }
  }
  double bob = 0.0;
  for (const auto& [label, obs] : s.bob_pairs) {
    const auto it_r = r.bob_pairs.find(label);
    if (it_r == r.bob_pairs.end()) {
      throw LabelError("theorem2_frobenius_check: reference lacks a Bob pair label");
    }
    const CMatrix lhs = kron(ida, obs) * t.matrix;
    const CMatrix rhs = t.matrix * kron(idra, it_r->second);
    bob = std::max(bob, (lhs - rhs).norm() / tnorm);
  }

  const bool xor_variant = variant == BoundVariant::XOR;
  BoundReport ra = make_bound_report(
      xor_variant ? BoundId::Thm2Alice : BoundId::FflAlice, n, ctx.epsilon, alice,
      xor_variant ? bounds::thm2_alice(n, ctx.epsilon) : bounds::ffl_alice(n, ctx.epsilon),
      ctx.seed, ctx.theta, ctx.game);
  BoundReport rb = make_bound_report(
      xor_variant ? BoundId::Thm2Bob : BoundId::FflBob, n, ctx.epsilon, bob,
      xor_variant ? bounds::thm2_bob(n, ctx.epsilon) : bounds::ffl_bob(n, ctx.epsilon),
      ctx.seed, ctx.theta, ctx.game);
  return {std::move(ra), std::move(rb)};
}

FactorizationIdentity intertwiner_factorization_check(const IntertwinerT& t,
                                                      const Strategy& s,
                                                      const Strategy& r) {
  const Index da = s.dim_a(), db = s.dim_b();
  const Index ra = r.dim_a(), rb = r.dim_b();

  // Rearrangement: R[(i,kk),(jj,ll)] = T[(i,jj),(kk,ll)]; nearest Kronecker
  // factors come from its dominant singular pair.
  CMatrix rearr(da * ra, db * rb);
  for (Index i = 0; i < da; ++i) {
    for (Index jj = 0; jj < db; ++jj) {
      for (Index kk = 0; kk < ra; ++kk) {
        for (Index ll = 0; ll < rb; ++ll) {
          rearr(i * ra + kk, jj * rb + ll) = t.matrix(i * db + jj, kk * rb + ll);
        }
      }
    }
  }
  Eigen::JacobiSVD<CMatrix> svd(rearr, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double s0 = svd.singularValues()(0);
  const double scale = std::sqrt(s0);

  CMatrix t1(da, ra), t2(db, rb);
  for (Index i = 0; i < da; ++i) {
    for (Index kk = 0; kk < ra; ++kk) t1(i, kk) = scale * svd.matrixU()(i * ra + kk, 0);
  }
  for (Index jj = 0; jj < db; ++jj) {
    for (Index ll = 0; ll < rb; ++ll) {
      t2(jj, ll) = scale * std::conj(svd.matrixV()(jj * rb + ll, 0));
    }
  }

  FactorizationIdentity out;
  out.kron_gap = (t.matrix - kron(t1, t2)).norm();

  const CMatrix tk = kron(t1, t2);
  const CMatrix idb = CMatrix::Identity(db, db);
  const CMatrix idrb = CMatrix::Identity(rb, rb);
  const CMatrix ida = CMatrix::Identity(da, da);
  const CMatrix idra = CMatrix::Identity(ra, ra);

  {
    auto it_s = s.alice.begin();
    auto it_r = r.alice.begin();
    for (; it_s != s.alice.end() && it_r != r.alice.end(); ++it_s, ++it_r) {
      const CMatrix direct = kron(it_s->second, idb) * tk - tk * kron(it_r->second, idrb);
      const CMatrix factored = kron(CMatrix(it_s->second * t1 - t1 * it_r->second), t2);
      out.alice_residual = std::max(out.alice_residual, (direct - factored).norm());
    }
  }
  for (const auto& [label, obs] : s.bob_pairs) {
    const auto it_r = r.bob_pairs.find(label);
    if (it_r == r.bob_pairs.end()) continue;
    const CMatrix direct = kron(ida, obs) * tk - tk * kron(idra, it_r->second);
    const CMatrix factored = kron(t1, CMatrix(obs * t2 - t2 * it_r->second));
    out.bob_residual = std::max(out.bob_residual, (direct - factored).norm());
  }
  return out;
}

}  // namespace xorgames
