#pragma once

#include <cstddef>

#include "ginv/linalg.hpp"
#include "ginv/matrix.hpp"
#include "ginv/subspace.hpp"

namespace ginv {

template <class T>
struct DrazinResult {
  Matrix<T> d_inverse;        // A^D
  std::size_t index = 0;      // Ind(A)
  Matrix<T> eigenprojection;  // A^pi = I - A A^D
};

/// Smallest k >= 0 with rank(A^k) == rank(A^{k+1}). The float backend reads
/// the ranks off the kernel chain of power_kernel instead of forming powers.
template <class T>
std::size_t index(const Matrix<T>& a, double tol = kDefaultTol);

/// R(A^k). Floats take N((A^*)^k)^perp from power_kernel, so small
/// eigenvalues are never raised to the k-th power.
template <class T>
Subspace<T> power_range(const Matrix<T>& a, std::size_t k, double tol = kDefaultTol);

/// N(A^k). Floats iterate N(A^j) = N((I - P_{N(A^{j-1})}) A).
template <class T>
Subspace<T> power_kernel(const Matrix<T>& a, std::size_t k, double tol = kDefaultTol);

/// Moore-Penrose inverse from the full-rank factorization A = F G read off the
/// reduced echelon form: A^+ = G* (G G*)^{-1} (F* F)^{-1} F*.
template <class T>
Matrix<T> moore_penrose(const Matrix<T>& a, double tol = kDefaultTol);

/// A^D = A^k (A^{2k+1})^+ A^k (exact) or B_S (C A B_S)^{-1} C with C the
/// S-coordinates of the splitting R(A^k) + N(A^k) (float), checked against
/// A^D A A^D = A^D, A A^D = A^D A, A^D A^{k+1} = A^k.
/// Throws ErrorCode::internal if the check fails.
template <class T>
DrazinResult<T> drazin(const Matrix<T>& a, double tol = kDefaultTol);

/// Independent route: A^D = F (G A F)^{-1} G with R(F) = R(A^k), N(G) = N(A^k)
/// (a full-rank factorization A^k = F G in the exact backend).
template <class T>
Matrix<T> drazin_core_factorization(const Matrix<T>& a, double tol = kDefaultTol);

/// True iff x satisfies the three Drazin equations for a.
template <class T>
bool satisfies_drazin_equations(const Matrix<T>& a, const Matrix<T>& x, std::size_t k,
                                double tol = kDefaultTol);

/// True iff x satisfies all four Penrose equations for a.
template <class T>
bool satisfies_penrose_equations(const Matrix<T>& a, const Matrix<T>& x, double tol = kDefaultTol);

/// A^{(2)}_{S,T} = B_s (C A B_s)^{-1} C with R(B_s) = s and N(C) = t.
/// Throws ErrorCode::precondition when no such outer inverse exists.
template <class T>
Matrix<T> outer_inverse_st(const Matrix<T>& a, const Subspace<T>& s, const Subspace<T>& t,
                           double tol = kDefaultTol);

enum class BlockOrientation { upper, lower };

/// Drazin inverse of [[A, B], [0, E]] (upper) or [[E, 0], [B, A]] (lower)
/// assembled from the closed block formula.
template <class T>
Matrix<T> drazin_block_triangular(const Matrix<T>& a, const Matrix<T>& b, const Matrix<T>& e,
                                  BlockOrientation orientation, double tol = kDefaultTol);

/// Drazin inverse of [[A, 0], [C, 0]] as [[A^D, 0], [C (A^D)^2, 0]].
template <class T>
Matrix<T> drazin_column_bordered(const Matrix<T>& a, const Matrix<T>& c, double tol = kDefaultTol);

/// (M + N)^D == M^D + N^D; requires M N = N M = 0 (ErrorCode::precondition otherwise).
template <class T>
bool drazin_orthogonal_sum_check(const Matrix<T>& m, const Matrix<T>& n, double tol = kDefaultTol);

/// (M N)^D == M ((N M)^2)^D N.
template <class T>
bool drazin_product_check(const Matrix<T>& m, const Matrix<T>& n, double tol = kDefaultTol);

/// rank([[A, A D], [E A, B]]) == rank(A) + rank(B - E A D).
template <class T>
bool bordered_rank_check(const Matrix<T>& a, const Matrix<T>& b, const Matrix<T>& d,
                         const Matrix<T>& e, double tol = kDefaultTol);

}  // namespace ginv
