#pragma once

// Exact positive-semidefiniteness test for rational symmetric matrices by
// symmetric Gaussian elimination (LDL^T) with diagonal pivoting.

#include "matrix.hpp"
#include "scalar.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace qbcurv {

struct PsdResult {
  bool psd = false;
  int rank = 0;
  int kernel_dim = 0;
  /// Pivots in elimination order; all positive when psd holds.
  std::vector<Rational> pivots;
  /// Set when !psd: an exact vector v with v^T M v < 0.
  std::optional<std::vector<Rational>> witness;
  /// v^T M v for the witness.
  std::optional<Rational> witness_value;
};

/// Decides M >= 0 exactly. At each step the remaining diagonal entry of
/// largest magnitude is used as pivot. A negative pivot, or a zero diagonal
/// block with a nonzero off-diagonal entry, proves indefiniteness; the
/// offending direction is lifted back through the elimination into a witness.
inline PsdResult ldlt_psd(const DenseMatrix<Rational>& m) {
  if (!m.is_symmetric()) throw std::invalid_argument("ldlt_psd: matrix is not symmetric");
  const int n = m.size();
  DenseMatrix<Rational> s = m;
  std::vector<bool> active(n, true);

  struct Step {
    int k;
    std::vector<Rational> row;  // row k of the working matrix at pivot time
  };
  std::vector<Step> steps;
  PsdResult out;

  auto lift = [&](std::vector<Rational> v) {
    // Later pivots first: choose x_k to cancel the cross terms with already-set coordinates.
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
      Rational acc = 0;
      for (int j = 0; j < n; ++j)
        if (j != it->k && !is_zero(v[j]) && !is_zero(it->row[j])) acc += it->row[j] * v[j];
      v[it->k] = -acc / it->row[it->k];
    }
    out.witness_value = quadratic_form(m, v);
    out.witness = std::move(v);
  };

  for (;;) {
    int k = -1;
    for (int i = 0; i < n; ++i)
      if (active[i] && (k < 0 || abs(s(i, i)) > abs(s(k, k)))) k = i;
    if (k < 0) break;

    if (s(k, k) < 0) {
      std::vector<Rational> v(n);
      v[k] = 1;
      lift(std::move(v));
      out.psd = false;
      return out;
    }
    if (is_zero(s(k, k))) {
      // Every remaining diagonal entry is zero; the remaining block must vanish.
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (active[i] && active[j] && !is_zero(s(i, j))) {
            std::vector<Rational> v(n);
            v[i] = 1;
            v[j] = s(i, j) > 0 ? -1 : 1;
            lift(std::move(v));
            out.psd = false;
            return out;
          }
      for (int i = 0; i < n; ++i)
        if (active[i]) ++out.kernel_dim;
      break;
    }

    Step step{k, std::vector<Rational>(n)};
    for (int j = 0; j < n; ++j)
      if (active[j]) step.row[j] = s(k, j);
    const Rational pivot = s(k, k);
    active[k] = false;
    for (int i = 0; i < n; ++i) {
      if (!active[i] || is_zero(s(i, k))) continue;
      const Rational f = s(i, k) / pivot;
      for (int j = 0; j < n; ++j)
        if (active[j] && !is_zero(s(k, j))) s(i, j) -= f * s(k, j);
    }
    out.pivots.push_back(pivot);
    steps.push_back(std::move(step));
  }
  out.psd = true;
  out.rank = static_cast<int>(out.pivots.size());
  return out;
}

}  // namespace qbcurv
