#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ginv/geninv.hpp"
#include "ginv/linalg.hpp"
#include "ginv/report.hpp"
#include "ginv/subspace.hpp"

namespace ginv {

template <class T>
struct NamedMatrix {
  std::string name;
  Matrix<T> value;
};

/// Classical Bott-Duffin inverse P_L (A P_L + P_{L^perp})^{-1}.
/// Throws ErrorCode::precondition when A P_L + P_{L^perp} is singular.
template <class T>
Matrix<T> bott_duffin(const Matrix<T>& a, const Subspace<T>& l, double tol = kDefaultTol);

/// Bott-Duffin Drazin inverse P_L (A P_L + P_{L^perp})^D. Defined for every
/// square A and every subspace L.
template <class T>
Matrix<T> bdd_inverse(const Matrix<T>& a, const Subspace<T>& l, double tol = kDefaultTol);

/// Everything the representation and characterization routines share for one
/// (A, L) pair. Immutable once built.
///
/// `k` is Ind(A P_L + P_{L^perp}). S, T, W1 and W2 are built from powers of
/// `core_index` = Ind(P_L A P_L); the two indices agree except when
/// A P_L + P_{L^perp} is invertible and L is proper (then k = 0, core_index = 1).
template <class T>
class BddContext {
 public:
  /// Throws ErrorCode::internal if S, T (or the W1/W2 pairs) fail to be
  /// complementary, which can only happen through a float rank fault.
  static BddContext build(const Matrix<T>& a, const Subspace<T>& l, double tol = kDefaultTol);

  std::size_t n() const noexcept { return a_.rows(); }
  double tol() const noexcept { return tol_; }
  const Matrix<T>& a() const noexcept { return a_; }
  const Subspace<T>& l() const noexcept { return l_; }
  const Matrix<T>& p_l() const noexcept { return p_l_; }
  const Matrix<T>& p_lperp() const noexcept { return p_lperp_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t core_index() const noexcept { return core_index_; }
  const Subspace<T>& s() const noexcept { return s_; }
  const Subspace<T>& t() const noexcept { return t_; }
  const Matrix<T>& w1() const noexcept { return w1_; }
  const Matrix<T>& w2() const noexcept { return w2_; }
  /// A_(L)^(D) by definition.
  const Matrix<T>& bdd() const noexcept { return bdd_; }

  /// P_L A P_L
  const Matrix<T>& compressed() const noexcept { return plapl_; }
  /// P_{S,T}
  const Matrix<T>& p_st() const noexcept { return p_st_; }
  /// P_{R((A P_L)^{k+1}), T}, the value of A X at the inverse.
  const Matrix<T>& p_ax() const noexcept { return p_ax_; }
  /// P_{S, N((P_L A)^{k+1})}, the value of X A at the inverse.
  const Matrix<T>& p_xa() const noexcept { return p_xa_; }
  /// Orthogonal projectors onto S and T^perp.
  const Matrix<T>& p_s() const noexcept { return p_s_; }
  const Matrix<T>& p_tperp() const noexcept { return p_tperp_; }

 private:
  BddContext() = default;

  double tol_ = kDefaultTol;
  Matrix<T> a_;
  Subspace<T> l_;
  Matrix<T> p_l_, p_lperp_, plapl_;
  std::size_t k_ = 0;
  std::size_t core_index_ = 0;
  Subspace<T> s_, t_;
  Matrix<T> w1_, w2_, bdd_;
  Matrix<T> p_st_, p_ax_, p_xa_, p_s_, p_tperp_;
};

template <class T>
BddContext<T> build_context(const Matrix<T>& a, const Subspace<T>& l, double tol = kDefaultTol) {
  return BddContext<T>::build(a, l, tol);
}

/// The eleven equivalent closed forms of A_(L)^(D) built from Drazin inverses
/// of P_L A P_L, P_L A, A P_L and their P_{L^perp} shifts.
template <class T>
std::vector<NamedMatrix<T>> bdd_all_representations(const BddContext<T>& ctx);

/// P_L (I - W2)(A P_L)^D, (P_L A)^D (I - W1) P_L, (I - W1) A^+ (I - W2).
template <class T>
std::vector<NamedMatrix<T>> projector_mp_representations(const BddContext<T>& ctx);

/// (P_L A P_L)^{k+1} restricted to S, inverted in a basis of S,
/// extended by zero on T and applied after (P_L A P_L)^k.
template <class T>
Matrix<T> restriction_representation(const BddContext<T>& ctx);

/// True iff rank([[A, I - W2], [I - W1, x]]) == rank(A).
template <class T>
bool rank_equation_representation(const BddContext<T>& ctx, const Matrix<T>& x);

/// (I - W1)[N|beta] A[alpha|beta]^{-1} (I - W2)[alpha|N]. Requires
/// |alpha| = |beta| = rank(A) >= 1 and A[alpha|beta] invertible.
template <class T>
Matrix<T> submatrix_representation(const BddContext<T>& ctx, const IndexSet& alpha,
                                   const IndexSet& beta);

/// Lexicographically smallest (alpha, beta) with A[alpha|beta] invertible of order rank(A).
template <class T>
std::pair<IndexSet, IndexSet> auto_select_submatrix(const BddContext<T>& ctx);

/// Indices of the five matrices whose indices coincide when the common value is not 1.
struct IndexEquivalence {
  // Ind(A P_L + P_{L^perp}), Ind(P_L A + P_{L^perp}), Ind(P_L A P_L + P_{L^perp}),
  // Ind(P_L A P_L), Ind(P_L A* P_L)
  std::array<std::size_t, 5> indices{};

  std::size_t k() const noexcept { return indices[0]; }
  /// The first three always agree.
  bool triple_equal() const noexcept {
    return indices[0] == indices[1] && indices[1] == indices[2];
  }
  /// All five agree; asserted only when k >= 2.
  bool all_equal() const noexcept {
    for (auto v : indices)
      if (v != indices[0]) return false;
    return true;
  }
  /// The statement restricted to what holds for every k.
  bool holds() const noexcept {
    if (!triple_equal()) return false;
    if (k() >= 2) return all_equal();
    return indices[3] <= 1 && indices[3] == indices[4];
  }
};

template <class T>
IndexEquivalence index_equivalences(const Matrix<T>& a, const Subspace<T>& l,
                                    double tol = kDefaultTol);

template <class T>
struct CharacterizationVerdict {
  std::string criterion;  // e.g. "Thm4.1(b)"
  bool holds = false;
  std::string failed_condition;      // first conjunct that failed
  std::optional<Matrix<T>> witness;  // residual of that conjunct
};

/// Evaluates every range/null-space, projector-equation and matrix-equation
/// criterion set for a candidate x. Each verdict holds iff x == A_(L)^(D).
template <class T>
std::vector<CharacterizationVerdict<T>> characterize(const BddContext<T>& ctx, const Matrix<T>& x);

/// The two projector identities AX = P_{R((AP_L)^{k+1}),T} and
/// XA = P_{S,N((P_LA)^{k+1})}, which alone do not pin down the inverse.
template <class T>
std::pair<bool, bool> projector_equalities(const BddContext<T>& ctx, const Matrix<T>& x);

/// Structural properties of X = A_(L)^(D): projector absorption, range and null
/// space, outer-inverse identities, AX / XA projectors, P_{S,T}, the four
/// outer-inverse forms and conjugate-transpose symmetry.
template <class T>
VerificationReport<T> property_suite_thm32(const BddContext<T>& ctx);

}  // namespace ginv
