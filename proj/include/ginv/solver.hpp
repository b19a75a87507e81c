#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "ginv/bdd.hpp"
#include "ginv/report.hpp"

namespace ginv {

/// Particular solution of A x + y = beta with x in L, y in L^perp, plus the
/// generators of the solution family: every (x + gx u, y + gy u) is again a
/// solution.
template <class T>
struct RestrictedSolution {
  Matrix<T> x_particular;
  Matrix<T> y_particular;
  Matrix<T> family_generator;    // gx
  Matrix<T> y_family_generator;  // gy = -A gx
  bool unique = false;
};

/// Requires beta in R((A P_L + P_{L^perp})^k); ErrorCode::inconsistent otherwise.
/// With `constrain_to_core` the extra condition x + y in R((A P_L + P_{L^perp})^k)
/// is imposed, which singles out the particular pair.
template <class T>
RestrictedSolution<T> solve_restricted(const BddContext<T>& ctx, const Matrix<T>& beta,
                                       bool constrain_to_core = false);

template <class T>
struct ConstrainedSolution {
  Matrix<T> x_min;             // A_(L)^(D) b
  Matrix<T> family_generator;  // every x_min + G z solves P_L A x = b
};

/// P_L A x = b with x in L. Requires b in R((P_L A P_L)^k); ErrorCode::inconsistent otherwise.
template <class T>
ConstrainedSolution<T> solve_constrained(const BddContext<T>& ctx, const Matrix<T>& b);

/// ||x||_P = ||P^{-1} x||_2.
template <class T>
struct PNorm {
  Matrix<T> p;
  Matrix<T> p_inv;
  std::string source;  // how p was obtained

  /// Throws ErrorCode::precondition when p is singular.
  static PNorm from_matrix(const Matrix<T>& p, double tol = kDefaultTol,
                           std::string source = "supplied");

  /// ||P^{-1} x||^2; exact for the rational backend.
  T squared(const Matrix<T>& x) const;
};

/// Eigenvector basis of m. Throws ErrorCode::precondition ("Jordan basis
/// unavailable; supply P explicitly") for defective m or a spectrum that is not
/// Gaussian-rational.
template <class T>
PNorm<T> jordan_basis_diagonalizable(const Matrix<T>& m, double tol = kDefaultTol);

/// Jordan-chain basis of m (defective matrices allowed); P^{-1} m P is the
/// Jordan form with upper unit superdiagonals. Needs a Gaussian-rational
/// spectrum; ErrorCode::precondition otherwise.
template <class T>
PNorm<T> jordan_basis(const Matrix<T>& m, double tol = kDefaultTol);

/// True iff j = P^{-1} m P is upper bidiagonal with ones or zeros on the
/// superdiagonal, and a one only between equal diagonal entries.
template <class T>
bool is_jordan_form(const Matrix<T>& j, double tol = kDefaultTol);

/// P = [B_S | B_T], which block-diagonalizes P_L A P_L into its invertible
/// and nilpotent parts. Always available.
template <class T>
PNorm<T> core_nilpotent_basis(const BddContext<T>& ctx);

/// jordan_basis(P_L A P_L), falling back to core_nilpotent_basis.
template <class T>
PNorm<T> default_pnorm(const BddContext<T>& ctx);

/// Samples z and checks ||x_min||_P <= ||x_min + G z||_P on squared norms.
template <class T>
VerificationReport<T> min_p_norm_certify(const BddContext<T>& ctx, const Matrix<T>& b,
                                         const PNorm<T>& pnorm, std::size_t samples,
                                         std::uint64_t seed = 0);

/// x_min by determinant ratios of the bordered matrix [[P_L A P_L, F], [G, 0]]
/// with R(F) = T and N(G) = S.
template <class T>
Matrix<T> cramer_min_p_norm(const BddContext<T>& ctx, const Matrix<T>& b);

/// Same with caller-supplied borders. F (n x m) and G (m x n) must have rank
/// m = n - dim S, R(F) = T and N(G) = S, else ErrorCode::invalid_argument.
template <class T>
Matrix<T> cramer_min_p_norm(const BddContext<T>& ctx, const Matrix<T>& b, const Matrix<T>& f,
                            const Matrix<T>& g);

/// Small integer matrix (entries in [-bound, bound]) driven by a deterministic seed.
template <class T>
Matrix<T> random_integer_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed,
                                int bound = 3);

/// Derives the seed of sample `index` from a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

}  // namespace ginv
