#include "ginv/subspace.hpp"

namespace ginv {

template <class T>
Subspace<T> Subspace<T>::span(const Matrix<T>& spanning, double tol) {
  Subspace s;
  s.ambient_ = spanning.rows();
  s.basis_ = column_basis(spanning, tol);
  if constexpr (!is_exact_v<T>) {
    s.canonical_ = s.basis_ * s.basis_.conj_transpose();  // orthonormal basis
    return s;
  }
  // Row-reducing the transpose combines columns of `spanning`, so the nonzero
  // rows of rref(spanning^T) are the unique reduced basis of the column span.
  Echelon<T> e = rref(spanning.transpose(), tol);
  s.canonical_ = slice(e.reduced, 0, 0, e.rank(), spanning.rows()).transpose();
  return s;
}

template <class T>
Subspace<T> Subspace<T>::whole(std::size_t n) {
  return span(Matrix<T>::identity(n));
}

template <class T>
Subspace<T> Subspace<T>::zero(std::size_t n) {
  return span(Matrix<T>::zeros(n, 0));
}

template <class T>
bool Subspace<T>::contains(const Matrix<T>& v, double tol) const {
  if (v.rows() != ambient_) fail(ErrorCode::invalid_argument, "vector has wrong length");
  return in_range(basis_, v, tol);
}

template <class T>
Subspace<T> column_space(const Matrix<T>& a, double tol) {
  return Subspace<T>::span(a, tol);
}

template <class T>
Subspace<T> null_space(const Matrix<T>& a, double tol) {
  return Subspace<T>::span(null_space_basis(a, tol), tol);
}

template <class T>
Subspace<T> orthogonal_complement(const Subspace<T>& l, double tol) {
  if (l.dim() == 0) return Subspace<T>::whole(l.ambient_dim());
  return null_space(l.basis().conj_transpose(), tol);
}

template <class T>
Matrix<T> orthogonal_projector(const Subspace<T>& l, double tol) {
  const std::size_t n = l.ambient_dim();
  if (l.dim() == 0) return Matrix<T>::zeros(n, n);
  if constexpr (!is_exact_v<T>) return l.canonical();
  const Matrix<T>& b = l.basis();
  Matrix<T> bh = b.conj_transpose();
  return b * inverse(bh * b, tol) * bh;
}

template <class T>
Matrix<T> oblique_projector(const Subspace<T>& s, const Subspace<T>& t, double tol) {
  const std::size_t n = s.ambient_dim();
  if (t.ambient_dim() != n || s.dim() + t.dim() != n) {
    fail(ErrorCode::precondition, "oblique projector: subspaces are not complementary (dimensions)");
  }
  Matrix<T> joint = hstack(s.basis(), t.basis());
  Matrix<T> joint_inv;
  try {
    joint_inv = inverse(joint, tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::precondition) throw;
    fail(ErrorCode::precondition, "oblique projector: subspaces intersect nontrivially");
  }
  Matrix<T> left = hstack(s.basis(), Matrix<T>::zeros(n, t.dim()));
  return left * joint_inv;
}

template <class T>
bool is_projector(const Matrix<T>& p, double tol) {
  if (!p.square()) fail(ErrorCode::invalid_argument, "is_projector: non-square input");
  return equal(Matrix<T>(p * p), p, tol);
}

template <class T>
bool is_orthogonal_projector(const Matrix<T>& p, double tol) {
  return is_projector(p, tol) && equal(p.conj_transpose(), p, tol);
}

#define GINV_INSTANTIATE(T)                                                            \
  template class Subspace<T>;                                                          \
  template Subspace<T> column_space(const Matrix<T>&, double);                         \
  template Subspace<T> null_space(const Matrix<T>&, double);                           \
  template Subspace<T> orthogonal_complement(const Subspace<T>&, double);              \
  template Matrix<T> orthogonal_projector(const Subspace<T>&, double);                 \
  template Matrix<T> oblique_projector(const Subspace<T>&, const Subspace<T>&, double); \
  template bool is_projector(const Matrix<T>&, double);                                \
  template bool is_orthogonal_projector(const Matrix<T>&, double);

GINV_INSTANTIATE(Rational)
GINV_INSTANTIATE(Complex)

#undef GINV_INSTANTIATE

}  // namespace ginv
