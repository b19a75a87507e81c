#include "ginv/geninv.hpp"

#include <Eigen/LU>

#include "svd.hpp"

namespace ginv {

namespace {

template <class T>
Matrix<T> full_rank_left(const Matrix<T>& a, const Echelon<T>& e) {
  Matrix<T> f(a.rows(), e.rank());
  for (std::size_t c = 0; c < e.rank(); ++c)
    for (std::size_t i = 0; i < a.rows(); ++i) f(i, c) = a(i, e.pivots[c]);
  return f;
}

template <class T>
Matrix<T> full_rank_right(const Echelon<T>& e) {
  return slice(e.reduced, 0, 0, e.rank(), e.reduced.cols());
}

}  // namespace

namespace {

// One step of the kernel chain: N(A^{j}) from an orthonormal basis of N(A^{j-1}).
Matrix<Complex> next_kernel(const Matrix<Complex>& a, const Matrix<Complex>& kernel, double tol) {
  const Matrix<Complex> off = Matrix<Complex>::identity(a.rows()) - kernel * kernel.conj_transpose();
  return null_space_basis(Matrix<Complex>(off * a), tol);
}

}  // namespace

template <class T>
std::size_t index(const Matrix<T>& a, double tol) {
  if (!a.square()) fail(ErrorCode::invalid_argument, "index of non-square " + a.shape() + " matrix");
  if constexpr (!is_exact_v<T>) {
    Matrix<T> kernel(a.rows(), 0);
    for (std::size_t k = 0;; ++k) {
      Matrix<T> next = next_kernel(a, kernel, tol);
      if (next.cols() == kernel.cols()) return k;
      kernel = std::move(next);
    }
  }
  std::size_t prev = a.rows();
  Matrix<T> power = a;
  for (std::size_t k = 0;; ++k) {
    std::size_t r = rank(power, tol);
    if (r == prev) return k;
    prev = r;
    power = power * a;
  }
}

template <class T>
Subspace<T> power_range(const Matrix<T>& a, std::size_t k, double tol) {
  if (!a.square()) fail(ErrorCode::invalid_argument, "power of non-square " + a.shape() + " matrix");
  if constexpr (is_exact_v<T>) {
    return column_space(matrix_power(a, k), tol);
  } else {
    // R(A^k) = N((A^*)^k)^perp; the kernel chain does not accumulate error.
    return orthogonal_complement(power_kernel(Matrix<T>(a.conj_transpose()), k, tol), tol);
  }
}

template <class T>
Subspace<T> power_kernel(const Matrix<T>& a, std::size_t k, double tol) {
  if (!a.square()) fail(ErrorCode::invalid_argument, "power of non-square " + a.shape() + " matrix");
  if constexpr (is_exact_v<T>) {
    return null_space(matrix_power(a, k), tol);
  } else {
    Matrix<T> kernel(a.rows(), 0);
    for (std::size_t j = 0; j < k; ++j) {
      Matrix<T> next = next_kernel(a, kernel, tol);
      if (next.cols() == kernel.cols()) break;
      kernel = std::move(next);
    }
    return Subspace<T>::span(kernel, tol);
  }
}

template <class T>
Matrix<T> moore_penrose(const Matrix<T>& a, double tol) {
  if constexpr (!is_exact_v<T>) {
    detail::Svd d = detail::svd(a, tol);
    const auto r = static_cast<Eigen::Index>(d.rank);
    Eigen::MatrixXcd sinv = d.s.head(r).cwiseInverse().cast<Complex>().asDiagonal();
    return detail::from_eigen(d.v.leftCols(r) * sinv * d.u.leftCols(r).adjoint());
  }
  Echelon<T> e = rref(a, tol);
  if (e.rank() == 0) return Matrix<T>::zeros(a.cols(), a.rows());
  Matrix<T> f = full_rank_left(a, e);
  Matrix<T> g = full_rank_right(e);
  Matrix<T> fh = f.conj_transpose();
  Matrix<T> gh = g.conj_transpose();
  return gh * inverse(Matrix<T>(g * gh), tol) * inverse(Matrix<T>(fh * f), tol) * fh;
}

template <class T>
bool satisfies_drazin_equations(const Matrix<T>& a, const Matrix<T>& x, std::size_t k, double tol) {
  Matrix<T> ak = matrix_power(a, k);
  return equal(Matrix<T>(x * a * x), x, tol) && equal(Matrix<T>(a * x), Matrix<T>(x * a), tol) &&
         equal(Matrix<T>(x * ak * a), ak, tol);
}

template <class T>
bool satisfies_penrose_equations(const Matrix<T>& a, const Matrix<T>& x, double tol) {
  Matrix<T> ax = a * x;
  Matrix<T> xa = x * a;
  return equal(Matrix<T>(ax * a), a, tol) && equal(Matrix<T>(xa * x), x, tol) &&
         equal(ax.conj_transpose(), ax, tol) && equal(xa.conj_transpose(), xa, tol);
}

template <class T>
DrazinResult<T> drazin(const Matrix<T>& a, double tol) {
  if (!a.square()) fail(ErrorCode::invalid_argument, "drazin of non-square " + a.shape() + " matrix");
  const std::size_t n = a.rows();
  DrazinResult<T> r;
  r.index = index(a, tol);
  if (r.index == 0) {
    r.d_inverse = inverse(a, tol);
  } else if constexpr (!is_exact_v<T>) {
    // Powers of A are never formed: invert A on R(A^k) in the coordinates of
    // the splitting R(A^k) + N(A^k).
    const Subspace<T> s = power_range(a, r.index, tol);
    const Subspace<T> t = power_kernel(a, r.index, tol);
    if (s.dim() + t.dim() != n) fail(ErrorCode::internal, "drazin: core and nilpotent parts do not split");
    if (s.dim() == 0) {
      r.d_inverse = Matrix<T>::zeros(n, n);
    } else {
      const Matrix<T> coords =
          slice(inverse(hstack(s.basis(), t.basis()), tol), 0, 0, s.dim(), n);
      r.d_inverse = s.basis() * inverse(Matrix<T>(coords * a * s.basis()), tol) * coords;
    }
  } else {
    Matrix<T> ak = matrix_power(a, r.index);
    Matrix<T> a2k1 = ak * ak * a;
    r.d_inverse = ak * moore_penrose(a2k1, tol) * ak;
  }
  if (!satisfies_drazin_equations(a, r.d_inverse, r.index, tol)) {
    fail(ErrorCode::internal, "drazin: computed inverse fails the defining equations (index " +
                                  std::to_string(r.index) + ")");
  }
  r.eigenprojection = Matrix<T>::identity(n) - a * r.d_inverse;
  return r;
}

template <class T>
Matrix<T> drazin_core_factorization(const Matrix<T>& a, double tol) {
  std::size_t k = index(a, tol);
  if constexpr (!is_exact_v<T>) {
    // F spans R(A^k); G's rows span N(A^k)^perp.
    const Subspace<T> s = power_range(a, k, tol);
    if (s.dim() == 0) return Matrix<T>::zeros(a.rows(), a.cols());
    const Matrix<T> f = s.basis();
    const Matrix<T> g = orthogonal_complement(power_kernel(a, k, tol), tol).basis().conj_transpose();
    if (g.rows() != f.cols()) fail(ErrorCode::internal, "core factors have mismatched rank");
    return f * inverse(Matrix<T>(g * a * f), tol) * g;
  }
  Matrix<T> ak = matrix_power(a, k);
  Echelon<T> e = rref(ak, tol);
  if (e.rank() == 0) return Matrix<T>::zeros(a.rows(), a.cols());
  Matrix<T> f = full_rank_left(ak, e);
  Matrix<T> g = full_rank_right(e);
  return f * inverse(Matrix<T>(g * a * f), tol) * g;
}

template <class T>
Matrix<T> outer_inverse_st(const Matrix<T>& a, const Subspace<T>& s, const Subspace<T>& t,
                           double tol) {
  const std::size_t n = a.cols();
  if (s.ambient_dim() != n || t.ambient_dim() != a.rows()) {
    fail(ErrorCode::invalid_argument, "outer_inverse_st: subspace dimensions do not match A");
  }
  // Rows of C span the annihilator of t, so N(C) = t.
  Matrix<T> c = orthogonal_complement(t, tol).basis().conj_transpose();
  if (c.rows() != s.dim()) {
    fail(ErrorCode::precondition, "outer inverse A(2)_{S,T} does not exist: dim S + dim T != m");
  }
  if (s.dim() == 0) return Matrix<T>::zeros(n, a.rows());
  Matrix<T> core = c * a * s.basis();
  if (rank(core, tol) != s.dim()) {
    fail(ErrorCode::precondition, "outer inverse A(2)_{S,T} does not exist: C A B_s is singular");
  }
  return s.basis() * inverse(core, tol) * c;
}

template <class T>
Matrix<T> drazin_block_triangular(const Matrix<T>& a, const Matrix<T>& b, const Matrix<T>& e,
                                  BlockOrientation orientation, double tol) {
  if (!a.square() || !e.square() || b.rows() != a.rows() || b.cols() != e.rows()) {
    fail(ErrorCode::invalid_argument, "drazin_block_triangular: dimension mismatch");
  }
  DrazinResult<T> da = drazin(a, tol);
  DrazinResult<T> de = drazin(e, tol);
  const std::size_t r = da.index;
  const std::size_t s = de.index;

  Matrix<T> x = Matrix<T>::zeros(a.rows(), e.cols()) - da.d_inverse * b * de.d_inverse;
  Matrix<T> ad_pow = da.d_inverse * da.d_inverse;  // (A^D)^{i+2}
  Matrix<T> e_pow = Matrix<T>::identity(e.rows());  // E^i
  for (std::size_t i = 0; i < s; ++i) {
    x += ad_pow * b * e_pow * de.eigenprojection;
    ad_pow = ad_pow * da.d_inverse;
    e_pow = e_pow * e;
  }
  Matrix<T> ed_pow = de.d_inverse * de.d_inverse;   // (E^D)^{i+2}
  Matrix<T> a_pow = Matrix<T>::identity(a.rows());  // A^i
  Matrix<T> tail = Matrix<T>::zeros(a.rows(), e.cols());
  for (std::size_t i = 0; i < r; ++i) {
    tail += a_pow * b * ed_pow;
    a_pow = a_pow * a;
    ed_pow = ed_pow * de.d_inverse;
  }
  x += da.eigenprojection * tail;

  if (orientation == BlockOrientation::upper) {
    return block(da.d_inverse, x, Matrix<T>::zeros(e.rows(), a.cols()), de.d_inverse);
  }
  // [[E, 0], [B, A]]^D = [[E^D, 0], [X, A^D]] with B read as the (2,1) block.
  return block(de.d_inverse, Matrix<T>::zeros(e.rows(), a.cols()), x, da.d_inverse);
}

template <class T>
Matrix<T> drazin_column_bordered(const Matrix<T>& a, const Matrix<T>& c, double tol) {
  if (!a.square() || c.cols() != a.cols()) {
    fail(ErrorCode::invalid_argument, "drazin_column_bordered: dimension mismatch");
  }
  Matrix<T> ad = drazin(a, tol).d_inverse;
  return block(ad, Matrix<T>::zeros(a.rows(), c.rows()), Matrix<T>(c * ad * ad),
               Matrix<T>::zeros(c.rows(), c.rows()));
}

template <class T>
bool drazin_orthogonal_sum_check(const Matrix<T>& m, const Matrix<T>& n, double tol) {
  if (!m.square() || m.rows() != n.rows() || !n.square()) {
    fail(ErrorCode::invalid_argument, "drazin_orthogonal_sum_check: dimension mismatch");
  }
  Matrix<T> zero = Matrix<T>::zeros(m.rows(), m.cols());
  if (!equal(Matrix<T>(m * n), zero, tol) || !equal(Matrix<T>(n * m), zero, tol)) {
    fail(ErrorCode::precondition, "drazin_orthogonal_sum_check: requires MN = NM = 0");
  }
  return equal(drazin(Matrix<T>(m + n), tol).d_inverse,
               Matrix<T>(drazin(m, tol).d_inverse + drazin(n, tol).d_inverse), tol);
}

template <class T>
bool drazin_product_check(const Matrix<T>& m, const Matrix<T>& n, double tol) {
  if (!m.square() || !n.square() || m.rows() != n.rows()) {
    fail(ErrorCode::invalid_argument, "drazin_product_check: dimension mismatch");
  }
  Matrix<T> nm = n * m;
  return equal(drazin(Matrix<T>(m * n), tol).d_inverse,
               Matrix<T>(m * drazin(Matrix<T>(nm * nm), tol).d_inverse * n), tol);
}

template <class T>
bool bordered_rank_check(const Matrix<T>& a, const Matrix<T>& b, const Matrix<T>& d,
                         const Matrix<T>& e, double tol) {
  if (d.rows() != a.cols() || e.cols() != a.rows() || b.rows() != e.rows() || b.cols() != d.cols()) {
    fail(ErrorCode::invalid_argument, "bordered_rank_check: blocks are not conformable");
  }
  Matrix<T> m = block(a, Matrix<T>(a * d), Matrix<T>(e * a), b);
  return rank(m, tol) == rank(a, tol) + rank(Matrix<T>(b - e * a * d), tol);
}

#define GINV_INSTANTIATE(T)                                                                    \
  template std::size_t index(const Matrix<T>&, double);                                        \
  template Subspace<T> power_range(const Matrix<T>&, std::size_t, double);                     \
  template Subspace<T> power_kernel(const Matrix<T>&, std::size_t, double);                    \
  template Matrix<T> moore_penrose(const Matrix<T>&, double);                                  \
  template DrazinResult<T> drazin(const Matrix<T>&, double);                                   \
  template Matrix<T> drazin_core_factorization(const Matrix<T>&, double);                      \
  template bool satisfies_drazin_equations(const Matrix<T>&, const Matrix<T>&, std::size_t,    \
                                           double);                                            \
  template bool satisfies_penrose_equations(const Matrix<T>&, const Matrix<T>&, double);       \
  template Matrix<T> outer_inverse_st(const Matrix<T>&, const Subspace<T>&, const Subspace<T>&, \
                                      double);                                                 \
  template Matrix<T> drazin_block_triangular(const Matrix<T>&, const Matrix<T>&,               \
                                             const Matrix<T>&, BlockOrientation, double);      \
  template Matrix<T> drazin_column_bordered(const Matrix<T>&, const Matrix<T>&, double);       \
  template bool drazin_orthogonal_sum_check(const Matrix<T>&, const Matrix<T>&, double);       \
  template bool drazin_product_check(const Matrix<T>&, const Matrix<T>&, double);              \
  template bool bordered_rank_check(const Matrix<T>&, const Matrix<T>&, const Matrix<T>&,      \
                                    const Matrix<T>&, double);

GINV_INSTANTIATE(Rational)
GINV_INSTANTIATE(Complex)

#undef GINV_INSTANTIATE

}  // namespace ginv
