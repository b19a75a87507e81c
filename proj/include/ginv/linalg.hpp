#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ginv/matrix.hpp"

namespace ginv {

/// Ordered, strictly increasing set of 1-based row or column indices.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::vector<std::size_t> one_based);

  /// {1, ..., n}
  static IndexSet all(std::size_t n);
  /// From 0-based positions.
  static IndexSet from_zero_based(std::span<const std::size_t> positions);

  std::size_t size() const noexcept { return idx_.size(); }
  std::span<const std::size_t> indices() const noexcept { return idx_; }
  std::size_t operator[](std::size_t k) const { return idx_[k]; }
  /// Largest index, 0 when empty.
  std::size_t max() const noexcept { return idx_.empty() ? 0 : idx_.back(); }

  std::string to_string() const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
  friend auto operator<=>(const IndexSet& a, const IndexSet& b) { return a.idx_ <=> b.idx_; }

 private:
  std::vector<std::size_t> idx_;
};

template <class T>
struct Echelon {
  Matrix<T> reduced;                // reduced row echelon form
  std::vector<std::size_t> pivots;  // 0-based pivot columns, increasing
  std::size_t rank() const noexcept { return pivots.size(); }
};

/// Reduced row echelon form. The exact backend takes the first nonzero pivot of
/// each column; the float backend takes the largest and treats candidates below
/// tol * max|a| as zero. A float candidate inside [tol/8, 8 tol] * max|a| throws
/// ErrorCode::rank_ambiguity.
template <class T>
Echelon<T> rref(const Matrix<T>& a, double tol = kDefaultTol);

/// Exact: pivots of the echelon form. Float: singular values at least
/// tol * max(1, sigma_max), with the same ambiguity band as rref.
template <class T>
std::size_t rank(const Matrix<T>& a, double tol = kDefaultTol);

/// Fraction-free (Bareiss) elimination for the exact backend, partial-pivot LU for floats.
template <class T>
T det(const Matrix<T>& a);

/// Throws ErrorCode::precondition when a is singular.
template <class T>
Matrix<T> inverse(const Matrix<T>& a, double tol = kDefaultTol);

template <class T>
Matrix<T> submatrix(const Matrix<T>& a, const IndexSet& rows, const IndexSet& cols);

/// A(i -> b); i is 1-based.
template <class T>
Matrix<T> replace_column(const Matrix<T>& a, std::size_t i, const Matrix<T>& b);

template <class T>
Matrix<T> matrix_power(const Matrix<T>& a, std::size_t p);

/// Columns form a basis of N(a); n x (n - rank). Orthonormal for floats.
template <class T>
Matrix<T> null_space_basis(const Matrix<T>& a, double tol = kDefaultTol);

/// Pivot columns of a (exact) or leading left singular vectors (float); a basis of R(a).
template <class T>
Matrix<T> column_basis(const Matrix<T>& a, double tol = kDefaultTol);

/// Whether b lies in R(m): rank([m | b]) == rank(m).
template <class T>
bool in_range(const Matrix<T>& m, const Matrix<T>& b, double tol = kDefaultTol);

}  // namespace ginv
