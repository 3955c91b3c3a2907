#include "qbcurv/qb_search.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace qbcurv;

namespace {

const CurvTensor& tensor() {
  static const CurvTensor t = assemble_tensor();
  return t;
}

const FloatCurvature& fcurv() {
  static const FloatCurvature f(tensor());
  return f;
}

const GramOperator& gram() {
  static const GramOperator g = gram_operator(tensor());
  return g;
}

const Eigen::MatrixXd& gram_f() {
  static const Eigen::MatrixXd m = gram().to_float();
  return m;
}

std::vector<Rational> identity_coords() { return coords_from_hermitian(Herm7<ExactComplex>::identity()); }

Eigen::VectorXd to_eigen(const std::vector<double>& v) { return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())); }

}  // namespace

TEST(HermitianBasis, LayoutAndRoundTrip) {
  const auto basis = hermitian_basis();
  ASSERT_EQ(basis.size(), 49u);
  EXPECT_EQ(basis[0].kind, HermitianBasisElement::Kind::kDiagonal);
  EXPECT_EQ(basis[7].kind, HermitianBasisElement::Kind::kSymmetric);
  EXPECT_EQ(basis[28].kind, HermitianBasisElement::Kind::kAntisymmetric);
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = oracle::random_exact_hermitian<7>(rng);
    EXPECT_EQ(hermitian_from_coords<ExactComplex>(coords_from_hermitian(p)), p);
  }
  // e_12 + e_21 and i(e_12 - e_21).
  std::vector<Rational> v(49);
  v[7] = 1;
  auto s = hermitian_from_coords<ExactComplex>(v);
  EXPECT_EQ(s(basis[7].i, basis[7].j), ExactComplex(1));
  EXPECT_EQ(s(basis[7].j, basis[7].i), ExactComplex(1));
  v[7] = 0;
  v[28] = 1;
  s = hermitian_from_coords<ExactComplex>(v);
  EXPECT_EQ(s(basis[28].i, basis[28].j), ExactComplex(0, 1));
  EXPECT_EQ(s(basis[28].j, basis[28].i), ExactComplex(0, -1));
}

TEST(Gram, FormValues) {
  const auto& m = gram().m;
  EXPECT_TRUE(m.is_symmetric());
  EXPECT_EQ(quadratic_form(m, identity_coords()), Rational(0));
  std::vector<Rational> e11(49);
  e11[0] = 1;
  EXPECT_EQ(quadratic_form(m, e11), Rational(4));
  EXPECT_EQ(m(0, 0), Rational(4));
  EXPECT_EQ(quadratic_form(m, std::vector<Rational>(49)), Rational(0));
}

TEST(Gram, RepresentsTheFormExactly) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = oracle::random_exact_hermitian<7>(rng);
    const Rational direct = Rational(2) * (Rational(4) * frob2(p) - box_full(p, tensor()));
    EXPECT_EQ(quadratic_form(gram().m, coords_from_hermitian(p)), direct);
  }
}

TEST(Gram, ExactPsdWithIdentityInKernel) {
  const auto r = psd_certify_exact(gram());
  EXPECT_TRUE(r.psd);
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_GE(r.kernel_dim, 1);
  EXPECT_EQ(r.rank + r.kernel_dim, 49);
  for (const auto& p : r.pivots) EXPECT_GT(p, 0);

  // M * coords(I) = 0 exactly.
  const auto v = identity_coords();
  for (int i = 0; i < 49; ++i) {
    Rational s = 0;
    for (int j = 0; j < 49; ++j) s += gram().m(i, j) * v[j];
    EXPECT_EQ(s, Rational(0)) << i;
  }
  // The Phi12 kernel direction: A = C = I, xi = 0, t = tr P' / 6 = 1, which is again P = I.
}

TEST(Gram, FaultInjectionGivesWitness) {
  GramOperator bad = gram();
  bad.m(0, 0) = -5;
  const auto r = psd_certify_exact(bad);
  EXPECT_FALSE(r.psd);
  ASSERT_TRUE(r.witness.has_value());
  ASSERT_TRUE(r.witness_value.has_value());
  EXPECT_LT(*r.witness_value, 0);
  EXPECT_EQ(quadratic_form(bad.m, *r.witness), *r.witness_value);
  EXPECT_LT(min_eig_float(bad), 0);
}

TEST(ExactPsd, SmallCases) {
  DenseMatrix<Rational> z(3);
  auto r = ldlt_psd(z);
  EXPECT_TRUE(r.psd);
  EXPECT_EQ(r.kernel_dim, 3);

  DenseMatrix<Rational> off(2);  // [[0,1],[1,0]]
  off(0, 1) = off(1, 0) = 1;
  r = ldlt_psd(off);
  EXPECT_FALSE(r.psd);
  ASSERT_TRUE(r.witness);
  EXPECT_LT(quadratic_form(off, *r.witness), 0);

  DenseMatrix<Rational> m(3);  // [[2,1,0],[1,2,1],[0,1,2]] is positive definite.
  for (int i = 0; i < 3; ++i) m(i, i) = 2;
  m(0, 1) = m(1, 0) = m(1, 2) = m(2, 1) = 1;
  r = ldlt_psd(m);
  EXPECT_TRUE(r.psd);
  EXPECT_EQ(r.rank, 3);
  m(0, 2) = m(2, 0) = 3;  // now indefinite
  r = ldlt_psd(m);
  EXPECT_FALSE(r.psd);
  ASSERT_TRUE(r.witness);
  EXPECT_LT(quadratic_form(m, *r.witness), 0);

  DenseMatrix<Rational> asym(2);
  asym(0, 1) = 1;
  EXPECT_THROW(ldlt_psd(asym), std::invalid_argument);
}

TEST(Gram, FloatMinimumEigenvalue) {
  const double lo = min_eig_float(gram());
  EXPECT_GE(lo, -1e-9);
  EXPECT_LE(lo, 1e-9);

  // R = 0 leaves 8|P|^2, positive definite in this basis.
  const GramOperator pure = gram_operator(CurvTensor{});
  EXPECT_GT(min_eig_float(pure), 1.0);
  EXPECT_TRUE(psd_certify_exact(pure).psd);
  EXPECT_EQ(psd_certify_exact(pure).kernel_dim, 0);
}

TEST(Haar, UnitaryAndDeterministic) {
  Rng a = block_rng(5, 0), b = block_rng(5, 0), c = block_rng(5, 1);
  bool differs = false;
  for (int n = 0; n < 1000; ++n) {
    const Mat7c u = haar_unitary(a);
    EXPECT_LT(unitarity_residual(u), 1e-12);
    const Mat7c v = haar_unitary(b);
    EXPECT_TRUE((u.array() == v.array()).all());
    if (n == 0) differs = !(u.array() == haar_unitary(c).array()).all();
  }
  EXPECT_TRUE(differs);
}

TEST(Haar, FirstMomentsVanish) {
  // Each entry has mean 0 and E|u_ij|^2 = 1/7; the sample mean of 10^4 draws
  // has standard deviation sqrt(1/7 / 10^4) per complex entry.
  constexpr int n = 10000;
  Rng rng = block_rng(6, 0);
  Mat7c sum = Mat7c::Zero();
  Mat7d sq = Mat7d::Zero();
  for (int k = 0; k < n; ++k) {
    const Mat7c u = haar_unitary(rng);
    sum += u;
    sq += u.cwiseAbs2();
  }
  const double sigma = std::sqrt(1.0 / 7.0 / n);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      EXPECT_LT(std::abs(sum(i, j)) / n, 5 * sigma);
      EXPECT_NEAR(sq(i, j) / n, 1.0 / 7.0, 0.02);
    }
}

TEST(SampleScan, DeterministicAndThreadIndependent) {
  SampleConfig cfg;
  cfg.count = 3000;
  cfg.seed = 7;
  const auto a = sample_scan(cfg, tensor());
  const auto b = sample_scan(cfg, tensor());
  EXPECT_EQ(a.min_value, b.min_value);
  EXPECT_EQ(a.count, 3000u);
  ASSERT_EQ(a.worst.size(), 5u);
  for (std::size_t k = 1; k < a.worst.size(); ++k) EXPECT_LE(a.worst[k - 1].value, a.worst[k].value);
  EXPECT_GE(a.min_value, kSampleFloor);
  cfg.workers = 3;
  const auto c = sample_scan(cfg, tensor());
  EXPECT_EQ(a.min_value, c.min_value);
  for (std::size_t k = 0; k < a.worst.size(); ++k) EXPECT_EQ(a.worst[k].value, c.worst[k].value);
  // The argmin replays.
  EXPECT_EQ(qb_direct(a.argmin.frame, a.argmin.x, fcurv()), a.min_value);

  cfg.count = 0;
  EXPECT_THROW(sample_scan(cfg, tensor()), std::invalid_argument);
}

TEST(SampleScan, SingleDrawWithConstantWeights) {
  SampleConfig cfg;
  cfg.count = 1;
  const auto r = sample_scan(cfg, tensor());
  EXPECT_EQ(r.count, 1u);
  EXPECT_EQ(qb_direct(r.argmin.frame, Vec7d::Constant(0.75), fcurv()), 0.0);
}

TEST(Routes, FrameWeightsAgreeWithGram) {
  Rng rng = block_rng(8, 0);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const Mat7c t = haar_unitary(rng);
    Vec7d x;
    for (int a = 0; a < 7; ++a) x(a) = g(rng);
    const auto p = p_of(t, x);
    const Eigen::VectorXd v = to_eigen(coords_from_hermitian(p));
    EXPECT_NEAR(qb_direct(t, x, fcurv()), v.dot(gram_f() * v), 1e-9);
  }
}

TEST(Routes, SpectralCompleteness) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto p = oracle::random_float_hermitian<7>(rng);
    const Eigen::VectorXd v = to_eigen(coords_from_hermitian(p));
    EXPECT_NEAR(v.dot(gram_f() * v), 2 * (4 * frob2(p) - box_full(p, fcurv())), 1e-10 * std::max(1.0, frob2(p)));
  }
}

TEST(Descent, GradientMatchesFiniteDifferences) {
  Rng rng = block_rng(10, 0);
  const auto& m = gram_f();
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::VectorXd v = random_start(rng).normalized();
    const Eigen::VectorXd grad = rayleigh_gradient(m, v);
    const double h = 1e-5;
    Eigen::VectorXd fd(v.size());
    for (int i = 0; i < v.size(); ++i) {
      Eigen::VectorXd up = v, dn = v;
      up(i) += h;
      dn(i) -= h;
      fd(i) = (rayleigh(m, up) - rayleigh(m, dn)) / (2 * h);
    }
    EXPECT_LT((grad - fd).norm() / grad.norm(), 1e-6);
  }
}

TEST(Descent, KernelStartIsStationary) {
  const auto v = to_eigen(coords_from_hermitian(Herm7<FloatComplex>::identity()));
  EXPECT_LT(rayleigh_gradient(gram_f(), v).norm(), 1e-13);
  const auto r = descend(gram_f(), v);
  EXPECT_LT(std::abs(r.final_value), 1e-13);
  EXPECT_EQ(r.steps_taken, 0);
  EXPECT_THROW(descend(gram_f(), Eigen::VectorXd::Zero(49)), std::invalid_argument);
}

TEST(Descent, ConvergesFromE11AndRandomStarts) {
  Eigen::VectorXd e11 = Eigen::VectorXd::Zero(49);
  e11(0) = 1;
  const auto r = descend(gram_f(), e11);
  EXPECT_TRUE(r.monotone);
  EXPECT_LT(r.final_value, r.initial_value);
  EXPECT_LT(std::abs(r.final_value), 1e-8);

  Rng rng = block_rng(11, 0);
  for (int s = 0; s < 20; ++s) {
    const auto d = descend(gram_f(), random_start(rng));
    EXPECT_TRUE(d.monotone);
    EXPECT_GE(d.min_value, -1e-9);
    EXPECT_LT(std::abs(d.final_value), 1e-8) << s;
  }
}

TEST(Descent, FaultInjectedGramGoesNegative) {
  Eigen::MatrixXd bad = gram_f();
  bad(0, 0) = -5;
  Rng rng = block_rng(12, 0);
  const auto d = descend(bad, random_start(rng));
  EXPECT_LT(d.final_value, -1e-3);
}
