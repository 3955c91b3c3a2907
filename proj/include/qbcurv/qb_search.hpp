#pragma once

// Global check: QB over all frames and weights is one quadratic form on the
// 49-dimensional real space of Hermitian 7x7 matrices. Its exact Gram matrix
// is certified PSD, and the float image is searched for violations.

#include "curvature.hpp"
#include "exact_psd.hpp"
#include "matrix.hpp"
#include "qb_reduction.hpp"
#include "scalar.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace qbcurv {

inline constexpr int kHermDim = 49;

/// One element of the unnormalized real basis of Hermitian 7x7 matrices:
/// e_ii, e_ij + e_ji, or i(e_ij - e_ji) (i < j).
struct HermitianBasisElement {
  enum class Kind { kDiagonal, kSymmetric, kAntisymmetric };
  Kind kind;
  int i;
  int j;

  std::string str() const {
    const std::string ij = std::to_string(i + 1) + std::to_string(j + 1);
    switch (kind) {
      case Kind::kDiagonal:
        return "e" + ij;
      case Kind::kSymmetric:
        return "e" + ij + "+e" + std::to_string(j + 1) + std::to_string(i + 1);
      case Kind::kAntisymmetric:
        return "i(e" + ij + "-e" + std::to_string(j + 1) + std::to_string(i + 1) + ")";
    }
    return {};
  }
};

/// Diagonals first, then symmetric pairs, then antisymmetric pairs; pairs in
/// lexicographic (i, j) order.
inline std::vector<HermitianBasisElement> hermitian_basis() {
  using K = HermitianBasisElement::Kind;
  std::vector<HermitianBasisElement> out;
  for (int i = 0; i < 7; ++i) out.push_back({K::kDiagonal, i, i});
  for (K kind : {K::kSymmetric, K::kAntisymmetric})
    for (int i = 0; i < 7; ++i)
      for (int j = i + 1; j < 7; ++j) out.push_back({kind, i, j});
  return out;
}

template <class C>
Herm7<C> hermitian_from_coords(const std::vector<real_t<C>>& v) {
  if (v.size() != kHermDim) throw std::invalid_argument("hermitian_from_coords: need 49 coordinates");
  using K = HermitianBasisElement::Kind;
  Herm7<C> p;
  const auto basis = hermitian_basis();
  for (int n = 0; n < kHermDim; ++n) {
    const auto& e = basis[n];
    const auto& c = v[n];
    if (is_zero(c)) continue;
    switch (e.kind) {
      case K::kDiagonal:
        p(e.i, e.i) += C(c);
        break;
      case K::kSymmetric:
        p(e.i, e.j) += C(c);
        p(e.j, e.i) += C(c);
        break;
      case K::kAntisymmetric:
        p(e.i, e.j) += C(real_t<C>(0), c);
        p(e.j, e.i) -= C(real_t<C>(0), c);
        break;
    }
  }
  return p;
}

template <class C>
std::vector<real_t<C>> coords_from_hermitian(const Herm7<C>& p) {
  using K = HermitianBasisElement::Kind;
  std::vector<real_t<C>> v(kHermDim);
  const auto basis = hermitian_basis();
  for (int n = 0; n < kHermDim; ++n) {
    const auto& e = basis[n];
    switch (e.kind) {
      case K::kDiagonal:
        v[n] = real(p(e.i, e.i));
        break;
      case K::kSymmetric:
        v[n] = real(p(e.i, e.j));
        break;
      case K::kAntisymmetric:
        v[n] = imag(p(e.i, e.j));
        break;
    }
  }
  return v;
}

/// 2 (4|P|^2 - Box(P)), which is QB for the frames and weights producing P.
template <class C>
real_t<C> qb_form(const Herm7<C>& p, const CurvTensor& r) {
  using R = real_t<C>;
  return R(2) * (R(4) * frob2(p) - box_full(p, r));
}

inline double qb_form(const Herm7<FloatComplex>& p, const FloatCurvature& r) {
  return 2.0 * (4.0 * frob2(p) - box_full(p, r));
}

struct GramOperator {
  DenseMatrix<Rational> m;
  std::vector<HermitianBasisElement> basis;

  Eigen::MatrixXd to_float() const {
    Eigen::MatrixXd f(m.size(), m.size());
    for (int i = 0; i < m.size(); ++i)
      for (int j = 0; j < m.size(); ++j) f(i, j) = to_double(m(i, j));
    return f;
  }
};

/// Gram matrix of P -> QB(P) in the unnormalized Hermitian basis, so that
/// v^T M v = 2 (4|P|^2 - Box(P)) with exact rational entries.
inline GramOperator gram_operator(const CurvTensor& r) {
  GramOperator g;
  g.basis = hermitian_basis();
  g.m = gram_of_form(kHermDim, [&r](const std::vector<Rational>& v) {
    return qb_form(hermitian_from_coords<ExactComplex>(v), r);
  });
  return g;
}

inline PsdResult psd_certify_exact(const GramOperator& g) { return ldlt_psd(g.m); }

inline double min_eig_float(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("min_eig_float: eigen-solver failed");
  return es.eigenvalues().minCoeff();
}

inline double min_eig_float(const GramOperator& g) { return min_eig_float(g.to_float()); }

// ---------------------------------------------------------------------------
// Sampling.

using Rng = std::mt19937_64;

/// Generator for block `block` of a run seeded with `seed`. Blocks are the
/// unit of work, so results do not depend on how blocks map to threads.
inline Rng block_rng(std::uint64_t seed, std::uint64_t block) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
  return Rng(seq);
}

/// Haar-distributed 7x7 unitary: QR of a complex Ginibre matrix with the
/// phases of R's diagonal moved into Q.
inline Mat7c haar_unitary(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat7c z;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = {re, im};
    }
  Eigen::HouseholderQR<Mat7c> qr(z);
  Mat7c q = qr.householderQ();
  const Mat7c r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 7; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

struct SampleConfig {
  std::uint64_t count = 100000;
  std::uint64_t seed = 0;
  int report_worst = 5;
  int workers = 1;
};

struct SamplePoint {
  double value = 0;
  Mat7c frame;
  Vec7d x;
};

struct SampleResult {
  double min_value = 0;
  SamplePoint argmin;
  std::vector<SamplePoint> worst;  // ascending by value
  std::uint64_t count = 0;
};

inline constexpr std::uint64_t kSampleBlock = 1024;

/// Draws Haar frames and standard-normal weights, evaluates QB directly,
/// and keeps the lowest values. Deterministic for a given seed and count.
inline SampleResult sample_scan(const SampleConfig& cfg, const CurvTensor& r) {
  if (cfg.count < 1) throw std::invalid_argument("sample_scan: count must be >= 1");
  const FloatCurvature curv(r);
  const std::uint64_t blocks = (cfg.count + kSampleBlock - 1) / kSampleBlock;
  const int keep = std::max(1, cfg.report_worst);
  auto by_value = [](const SamplePoint& a, const SamplePoint& b) { return a.value < b.value; };

  auto run_blocks = [&](std::uint64_t first, std::uint64_t stride) {
    std::vector<SamplePoint> best;
    for (std::uint64_t b = first; b < blocks; b += stride) {
      Rng rng = block_rng(cfg.seed, b);
      std::normal_distribution<double> normal(0.0, 1.0);
      const std::uint64_t end = std::min(cfg.count, (b + 1) * kSampleBlock);
      for (std::uint64_t n = b * kSampleBlock; n < end; ++n) {
        SamplePoint pt;
        pt.frame = haar_unitary(rng);
        for (int a = 0; a < 7; ++a) pt.x(a) = normal(rng);
        pt.value = qb_direct(pt.frame, pt.x, curv);
        if (static_cast<int>(best.size()) < keep || pt.value < best.back().value) {
          best.insert(std::upper_bound(best.begin(), best.end(), pt, by_value), pt);
          if (static_cast<int>(best.size()) > keep) best.pop_back();
        }
      }
    }
    return best;
  };

  const int workers = std::max(1, std::min<int>(cfg.workers, static_cast<int>(blocks)));
  std::vector<std::vector<SamplePoint>> partial(workers);
  if (workers == 1) {
    partial[0] = run_blocks(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] { partial[w] = run_blocks(static_cast<std::uint64_t>(w), static_cast<std::uint64_t>(workers)); });
    for (auto& t : pool) t.join();
  }

  SampleResult out;
  out.count = cfg.count;
  for (auto& p : partial) out.worst.insert(out.worst.end(), p.begin(), p.end());
  // Ties broken by x so the merge is independent of worker order.
  std::stable_sort(out.worst.begin(), out.worst.end(), [](const SamplePoint& a, const SamplePoint& b) {
    if (a.value != b.value) return a.value < b.value;
    return std::lexicographical_compare(a.x.data(), a.x.data() + 7, b.x.data(), b.x.data() + 7);
  });
  if (static_cast<int>(out.worst.size()) > keep) out.worst.resize(keep);
  out.argmin = out.worst.front();
  out.min_value = out.argmin.value;
  return out;
}

// ---------------------------------------------------------------------------
// Rayleigh-quotient descent on the unit sphere.

inline double rayleigh(const Eigen::MatrixXd& m, const Eigen::VectorXd& v) { return v.dot(m * v) / v.squaredNorm(); }

/// Gradient of v -> v^T M v / v^T v; at unit v this is 2 (M v - (v^T M v) v).
inline Eigen::VectorXd rayleigh_gradient(const Eigen::MatrixXd& m, const Eigen::VectorXd& v) {
  const double n2 = v.squaredNorm();
  return 2.0 * (m * v - rayleigh(m, v) * v) / n2;
}

struct DescentOptions {
  int steps = 5000;
  double initial_rate = 0;  // 0: use 1 / (max absolute row sum)
  double armijo = 1e-4;
  double grad_tol = 1e-13;
};

struct DescentResult {
  double initial_value = 0;
  double final_value = 0;
  double min_value = 0;
  int steps_taken = 0;
  bool monotone = true;
  Eigen::VectorXd v;
};

/// v <- normalize(v - eta (M v - (v^T M v) v)), with eta chosen by
/// backtracking so the objective never increases.
inline DescentResult descend(const Eigen::MatrixXd& m, Eigen::VectorXd v, const DescentOptions& opt = {}) {
  if (v.size() != m.rows() || v.norm() == 0) throw std::invalid_argument("descend: bad start vector");
  v.normalize();
  double rate = opt.initial_rate > 0 ? opt.initial_rate : 1.0 / m.cwiseAbs().rowwise().sum().maxCoeff();
  const double max_rate = 64 * rate;

  DescentResult out;
  double f = v.dot(m * v);
  out.initial_value = f;
  out.min_value = f;
  for (int step = 0; step < opt.steps; ++step) {
    const Eigen::VectorXd g = m * v - f * v;
    const double g2 = g.squaredNorm();
    if (g2 < opt.grad_tol * opt.grad_tol) break;
    double eta = std::min(2 * rate, max_rate);
    Eigen::VectorXd next;
    double f_next = f;
    bool accepted = false;
    for (int tries = 0; tries < 60; ++tries, eta /= 2) {
      next = (v - eta * g).normalized();
      f_next = next.dot(m * next);
      if (f_next <= f - opt.armijo * eta * g2) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    if (f_next > f) out.monotone = false;
    rate = eta;
    v = next;
    f = f_next;
    out.min_value = std::min(out.min_value, f);
    out.steps_taken = step + 1;
  }
  out.final_value = f;
  out.v = v;
  return out;
}

inline Eigen::VectorXd random_start(Rng& rng, int n = kHermDim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

}  // namespace qbcurv
