#pragma once

#include <cstddef>

#include "ginv/linalg.hpp"
#include "ginv/matrix.hpp"

namespace ginv {

/// A subspace of C^n held as a full-column-rank basis plus a canonical form:
/// the column-reduced echelon basis for the exact backend, the orthogonal
/// projector for floats. Two subspaces are equal iff their canonical forms are.
template <class T>
class Subspace {
 public:
  Subspace() = default;

  /// Span of the columns of `spanning`; zero and dependent columns are dropped.
  static Subspace span(const Matrix<T>& spanning, double tol = kDefaultTol);
  static Subspace whole(std::size_t n);
  static Subspace zero(std::size_t n);

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.cols(); }
  const Matrix<T>& basis() const noexcept { return basis_; }
  const Matrix<T>& canonical() const noexcept { return canonical_; }

  bool contains(const Matrix<T>& v, double tol = kDefaultTol) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.canonical_ == b.canonical_;
  }

 private:
  std::size_t ambient_ = 0;
  Matrix<T> basis_;
  Matrix<T> canonical_;
};

template <class T>
bool equal(const Subspace<T>& a, const Subspace<T>& b, double tol = kDefaultTol) {
  return a.ambient_dim() == b.ambient_dim() && equal(a.canonical(), b.canonical(), tol);
}

/// R(a)
template <class T>
Subspace<T> column_space(const Matrix<T>& a, double tol = kDefaultTol);

/// N(a)
template <class T>
Subspace<T> null_space(const Matrix<T>& a, double tol = kDefaultTol);

/// l^perp = N(B*) for any basis B of l.
template <class T>
Subspace<T> orthogonal_complement(const Subspace<T>& l, double tol = kDefaultTol);

/// P_L = B (B* B)^{-1} B*.
template <class T>
Matrix<T> orthogonal_projector(const Subspace<T>& l, double tol = kDefaultTol);

/// P_{S,T} = [B_s | 0] [B_s | B_t]^{-1}. Throws ErrorCode::precondition when s and t
/// are not complementary.
template <class T>
Matrix<T> oblique_projector(const Subspace<T>& s, const Subspace<T>& t, double tol = kDefaultTol);

template <class T>
bool is_projector(const Matrix<T>& p, double tol = kDefaultTol);

template <class T>
bool is_orthogonal_projector(const Matrix<T>& p, double tol = kDefaultTol);

}  // namespace ginv
