#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's elimination, rank, index or inverse code: ranks come from a plain
// Gaussian elimination over Gaussian rationals, small determinants from the
// Leibniz formula, and indices from the rank sequence.

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "ginv/matrix.hpp"

namespace oracle {

using ginv::Rational;
using M = ginv::Matrix<Rational>;

inline M mul(const M& a, const M& b) {
  M c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Rational s;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

inline M eye(std::size_t n) {
  M m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
  return m;
}

inline M pow(const M& a, std::size_t p) {
  M r = eye(a.rows());
  for (std::size_t i = 0; i < p; ++i) r = mul(r, a);
  return r;
}

inline M adjoint(const M& a) {
  M t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j).conj();
  return t;
}

inline std::size_t rank(M a) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c).is_zero()) ++p;
    if (p == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(p, j));
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c).is_zero()) continue;
      const Rational f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

// Leibniz expansion; exact and elimination-free. Meant for n <= 7.
inline Rational det(const M& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rational total;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    Rational term(1);
    for (std::size_t i = 0; i < n; ++i) term *= a(i, perm[i]);
    total += inversions % 2 ? -term : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Gauss-Jordan on [A | I].
inline std::optional<M> inverse(const M& a) {
  const std::size_t n = a.rows();
  M w(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w(i, j) = a(i, j);
    w(i, n + i) = Rational(1);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && w(p, c).is_zero()) ++p;
    if (p == n) return std::nullopt;
    for (std::size_t j = 0; j < 2 * n; ++j) std::swap(w(c, j), w(p, j));
    const Rational inv = Rational(1) / w(c, c);
    for (std::size_t j = 0; j < 2 * n; ++j) w(c, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || w(i, c).is_zero()) continue;
      const Rational f = w(i, c);
      for (std::size_t j = 0; j < 2 * n; ++j) w(i, j) -= f * w(c, j);
    }
  }
  M out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = w(i, n + j);
  return out;
}

// Smallest k with rank(A^k) == rank(A^{k+1}).
inline std::size_t index(const M& a) {
  std::size_t k = 0;
  M p = eye(a.rows());
  std::size_t r = rank(p);
  while (true) {
    M next = mul(p, a);
    std::size_t rn = rank(next);
    if (rn == r) return k;
    p = next;
    r = rn;
    ++k;
  }
}

// Columns of `spanning` that are independent of the ones before them.
inline M independent_columns(const M& spanning) {
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < spanning.cols(); ++j) {
    M trial(spanning.rows(), keep.size() + 1);
    for (std::size_t c = 0; c < keep.size(); ++c)
      for (std::size_t i = 0; i < spanning.rows(); ++i) trial(i, c) = spanning(i, keep[c]);
    for (std::size_t i = 0; i < spanning.rows(); ++i) trial(i, keep.size()) = spanning(i, j);
    if (rank(trial) == keep.size() + 1) keep.push_back(j);
  }
  M b(spanning.rows(), keep.size());
  for (std::size_t c = 0; c < keep.size(); ++c)
    for (std::size_t i = 0; i < spanning.rows(); ++i) b(i, c) = spanning(i, keep[c]);
  return b;
}

// Orthogonal projector onto the column space: B (B* B)^{-1} B*.
inline M projector(const M& spanning) {
  const M b = independent_columns(spanning);
  if (b.cols() == 0) return M(spanning.rows(), spanning.rows());
  return mul(mul(b, *inverse(mul(adjoint(b), b))), adjoint(b));
}

// The three defining Drazin equations with k = index(a).
inline bool is_drazin(const M& a, const M& x) {
  const M ak = pow(a, index(a));
  return mul(mul(x, a), x) == x && mul(a, x) == mul(x, a) && mul(x, mul(ak, a)) == ak;
}

inline bool is_moore_penrose(const M& a, const M& x) {
  const M ax = mul(a, x);
  const M xa = mul(x, a);
  return mul(ax, a) == a && mul(xa, x) == x && adjoint(ax) == ax && adjoint(xa) == xa;
}

// Definition of the BDD inverse, with the Drazin factor certified by its equations.
inline bool is_bdd(const M& a, const M& l_span, const M& x, const M& drazin_of_shift) {
  const M pl = projector(l_span);
  const M shift = mul(a, pl) + (eye(a.rows()) - pl);
  return is_drazin(shift, drazin_of_shift) && mul(pl, drazin_of_shift) == x;
}

}  // namespace oracle
