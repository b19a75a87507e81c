#include "ginv/linalg.hpp"

#include <cmath>
#include <numeric>

#include <Eigen/LU>

#include "svd.hpp"

namespace ginv {

IndexSet::IndexSet(std::vector<std::size_t> one_based) : idx_(std::move(one_based)) {
  for (std::size_t k = 0; k < idx_.size(); ++k) {
    if (idx_[k] == 0) fail(ErrorCode::invalid_argument, "index sets are 1-based");
    if (k > 0 && idx_[k] <= idx_[k - 1]) {
      fail(ErrorCode::invalid_argument, "index set must be strictly increasing");
    }
  }
}

IndexSet IndexSet::all(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{1});
  return IndexSet(std::move(v));
}

IndexSet IndexSet::from_zero_based(std::span<const std::size_t> positions) {
  std::vector<std::size_t> v;
  v.reserve(positions.size());
  for (auto p : positions) v.push_back(p + 1);
  return IndexSet(std::move(v));
}

std::string IndexSet::to_string() const {
  std::string s = "{";
  for (std::size_t k = 0; k < idx_.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(idx_[k]);
  }
  return s + "}";
}

namespace {

template <class T>
void swap_rows(Matrix<T>& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

// Chooses the pivot row for column `col` among rows [row, rows). Returns rows()
// when the column is (numerically) zero there.
template <class T>
std::size_t choose_pivot(const Matrix<T>& m, std::size_t row, std::size_t col, double scale,
                         double tol) {
  if constexpr (is_exact_v<T>) {
    for (std::size_t i = row; i < m.rows(); ++i)
      if (!exact_zero(m(i, col))) return i;
    return m.rows();
  } else {
    std::size_t best = m.rows();
    double best_mag = 0.0;
    for (std::size_t i = row; i < m.rows(); ++i) {
      double v = magnitude(m(i, col));
      if (v > best_mag) {
        best_mag = v;
        best = i;
      }
    }
    if (best == m.rows()) return best;
    double rel = best_mag / scale;
    if (rel >= tol / 8.0 && rel <= 8.0 * tol) {
      fail(ErrorCode::rank_ambiguity,
           "rank ambiguity: pivot " + std::to_string(rel) + " (relative) is within [tol/8, 8 tol]");
    }
    if (rel < tol) return m.rows();
    return best;
  }
}

}  // namespace

template <class T>
Echelon<T> rref(const Matrix<T>& a, double tol) {
  Matrix<T> m = a;
  std::vector<std::size_t> pivots;
  double scale = is_exact_v<T> ? 1.0 : max_magnitude(a);
  if (!is_exact_v<T> && scale == 0.0) return {Matrix<T>::zeros(a.rows(), a.cols()), {}};

  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = choose_pivot(m, row, col, scale, tol);
    if (p == m.rows()) {
      if constexpr (!is_exact_v<T>) {
        for (std::size_t i = row; i < m.rows(); ++i) m(i, col) = T(0);
      }
      continue;
    }
    swap_rows(m, row, p);
    T inv = T(1) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    m(row, col) = T(1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || exact_zero(m(i, col))) continue;
      T f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) {
        if (!exact_zero(m(row, j))) m(i, j) -= f * m(row, j);
      }
      m(i, col) = T(0);
    }
    pivots.push_back(col);
    ++row;
  }
  if constexpr (!is_exact_v<T>) {
    for (std::size_t i = row; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = T(0);
  }
  return {std::move(m), std::move(pivots)};
}

template <class T>
std::size_t rank(const Matrix<T>& a, double tol) {
  if constexpr (is_exact_v<T>) {
    return rref(a, tol).rank();
  } else {
    return detail::svd(a, tol).rank;
  }
}

template <class T>
T det(const Matrix<T>& a) {
  if (!a.square()) fail(ErrorCode::invalid_argument, "det of non-square " + a.shape() + " matrix");
  const std::size_t n = a.rows();
  if (n == 0) return T(1);
  Matrix<T> m = a;
  bool negate = false;
  if constexpr (is_exact_v<T>) {
    T prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      std::size_t p = k;
      while (p < n && exact_zero(m(p, k))) ++p;
      if (p == n) return T(0);
      if (p != k) {
        swap_rows(m, p, k);
        negate = !negate;
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        for (std::size_t j = k + 1; j < n; ++j) {
          m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        }
        m(i, k) = T(0);
      }
      prev = m(k, k);
    }
    T d = m(n - 1, n - 1);
    return negate ? -d : d;
  } else {
    T d(1);
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t p = k;
      for (std::size_t i = k + 1; i < n; ++i)
        if (magnitude(m(i, k)) > magnitude(m(p, k))) p = i;
      if (exact_zero(m(p, k))) return T(0);
      if (p != k) {
        swap_rows(m, p, k);
        negate = !negate;
      }
      d *= m(k, k);
      for (std::size_t i = k + 1; i < n; ++i) {
        T f = m(i, k) / m(k, k);
        for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
      }
    }
    return negate ? -d : d;
  }
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a, double tol) {
  if (!a.square()) fail(ErrorCode::invalid_argument, "inverse of non-square " + a.shape() + " matrix");
  const std::size_t n = a.rows();
  if constexpr (is_exact_v<T>) {
    Echelon<T> e = rref(hstack(a, Matrix<T>::identity(n)), tol);
    if (e.rank() < n || (n > 0 && e.pivots[n - 1] != n - 1)) {
      fail(ErrorCode::precondition, "matrix is singular");
    }
    return slice(e.reduced, 0, n, n, n);
  } else {
    if (n == 0) return a;
    if (detail::svd(a, tol).rank < n) fail(ErrorCode::precondition, "matrix is singular");
    return detail::from_eigen(Eigen::FullPivLU<Eigen::MatrixXcd>(detail::to_eigen(a)).inverse());
  }
}

template <class T>
Matrix<T> submatrix(const Matrix<T>& a, const IndexSet& rows, const IndexSet& cols) {
  if (rows.max() > a.rows() || cols.max() > a.cols()) {
    fail(ErrorCode::invalid_argument, "submatrix index out of range for " + a.shape());
  }
  Matrix<T> m(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = a(rows[i] - 1, cols[j] - 1);
  return m;
}

template <class T>
Matrix<T> replace_column(const Matrix<T>& a, std::size_t i, const Matrix<T>& b) {
  if (i == 0 || i > a.cols()) fail(ErrorCode::invalid_argument, "replace_column: column out of range");
  if (b.cols() != 1 || b.rows() != a.rows()) {
    fail(ErrorCode::invalid_argument, "replace_column: b must be a column of length rows(a)");
  }
  Matrix<T> m = a;
  for (std::size_t r = 0; r < a.rows(); ++r) m(r, i - 1) = b(r, 0);
  return m;
}

template <class T>
Matrix<T> matrix_power(const Matrix<T>& a, std::size_t p) {
  if (!a.square()) fail(ErrorCode::invalid_argument, "power of non-square " + a.shape() + " matrix");
  Matrix<T> result = Matrix<T>::identity(a.rows());
  Matrix<T> base = a;
  while (p > 0) {
    if (p & 1U) result = result * base;
    p >>= 1U;
    if (p > 0) base = base * base;
  }
  return result;
}

template <class T>
Matrix<T> null_space_basis(const Matrix<T>& a, double tol) {
  if constexpr (!is_exact_v<T>) {
    // Trailing right singular vectors: an orthonormal basis.
    detail::Svd d = detail::svd(a, tol);
    const auto n = static_cast<Eigen::Index>(a.cols());
    const auto r = static_cast<Eigen::Index>(d.rank);
    return detail::from_eigen(d.v.rightCols(n - r));
  }
  Echelon<T> e = rref(a, tol);
  const std::size_t n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  Matrix<T> basis(n, n - e.rank());
  std::size_t c = 0;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    basis(f, c) = T(1);
    for (std::size_t r = 0; r < e.rank(); ++r) basis(e.pivots[r], c) = -e.reduced(r, f);
    ++c;
  }
  return basis;
}

template <class T>
Matrix<T> column_basis(const Matrix<T>& a, double tol) {
  if constexpr (!is_exact_v<T>) {
    // Leading left singular vectors: an orthonormal basis.
    detail::Svd d = detail::svd(a, tol);
    return detail::from_eigen(d.u.leftCols(static_cast<Eigen::Index>(d.rank)));
  }
  Echelon<T> e = rref(a, tol);
  Matrix<T> basis(a.rows(), e.rank());
  for (std::size_t c = 0; c < e.rank(); ++c)
    for (std::size_t i = 0; i < a.rows(); ++i) basis(i, c) = a(i, e.pivots[c]);
  return basis;
}

template <class T>
bool in_range(const Matrix<T>& m, const Matrix<T>& b, double tol) {
  return rank(hstack(m, b), tol) == rank(m, tol);
}

#define GINV_INSTANTIATE(T)                                                          \
  template Echelon<T> rref(const Matrix<T>&, double);                                \
  template std::size_t rank(const Matrix<T>&, double);                               \
  template T det(const Matrix<T>&);                                                  \
  template Matrix<T> inverse(const Matrix<T>&, double);                              \
  template Matrix<T> submatrix(const Matrix<T>&, const IndexSet&, const IndexSet&);  \
  template Matrix<T> replace_column(const Matrix<T>&, std::size_t, const Matrix<T>&); \
  template Matrix<T> matrix_power(const Matrix<T>&, std::size_t);                    \
  template Matrix<T> null_space_basis(const Matrix<T>&, double);                     \
  template Matrix<T> column_basis(const Matrix<T>&, double);                         \
  template bool in_range(const Matrix<T>&, const Matrix<T>&, double);

GINV_INSTANTIATE(Rational)
GINV_INSTANTIATE(Complex)

#undef GINV_INSTANTIATE

}  // namespace ginv
