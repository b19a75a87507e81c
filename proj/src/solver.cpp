#include "ginv/solver.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace ginv {

namespace {

template <class T>
void require_vector(const BddContext<T>& ctx, const Matrix<T>& v, const char* name) {
  if (v.rows() != ctx.n() || v.cols() != 1) {
    fail(ErrorCode::invalid_argument, std::string(name) + " must be a column vector of length " +
                                          std::to_string(ctx.n()) + ", got " + v.shape());
  }
}

double real_part(const Rational& x) { return x.re().get_d(); }
double real_part(const Complex& x) { return x.real(); }

// a <= b for real-valued squared norms; exact for rationals.
bool not_greater(const Rational& a, const Rational& b, double) { return a.re() <= b.re(); }
bool not_greater(const Complex& a, const Complex& b, double tol) {
  return a.real() <= b.real() + tol * std::max({1.0, std::abs(a.real()), std::abs(b.real())});
}

const char* kJordanUnavailable = "Jordan basis unavailable; supply P explicitly";

Eigen::MatrixXcd to_eigen(const Matrix<Rational>& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j).to_complex();
  return e;
}
Eigen::MatrixXcd to_eigen(const Matrix<Complex>& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

// Continued-fraction convergents of x with denominators up to max_den that
// approximate x within slack.
std::vector<mpq_class> convergents(double x, double slack, long max_den = 10000) {
  std::vector<mpq_class> out;
  if (std::abs(x) < slack) out.emplace_back(0);
  mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;  // h_{-1}, h_{-2}, k_{-1}, k_{-2}
  double r = x;
  for (int it = 0; it < 40; ++it) {
    double fl = std::floor(r);
    mpz_class a(fl);
    mpz_class h = a * h0 + h1;
    mpz_class k = a * k0 + k1;
    if (k > max_den) break;
    mpq_class q(h, k);
    q.canonicalize();
    if (std::abs(q.get_d() - x) <= slack) out.push_back(q);
    h1 = h0;
    h0 = h;
    k1 = k0;
    k0 = k;
    double frac = r - fl;
    if (frac < 1e-14) break;
    r = 1.0 / frac;
  }
  return out;
}

// Numerical eigenvalues, averaged over clusters of several radii: a defective
// eigenvalue splits into a ring whose mean is still accurate.
std::vector<Complex> eigen_candidates(const Eigen::MatrixXcd& m) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  std::vector<Complex> ev(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + solver.eigenvalues().size());
  std::vector<Complex> out = ev;
  for (double radius : {1e-6, 1e-4, 1e-2, 5e-2, 2e-1}) {
    std::vector<bool> used(ev.size(), false);
    for (std::size_t i = 0; i < ev.size(); ++i) {
      if (used[i]) continue;
      Complex sum = 0;
      int cnt = 0;
      for (std::size_t j = i; j < ev.size(); ++j) {
        if (!used[j] && std::abs(ev[j] - ev[i]) <= radius * std::max(1.0, std::abs(ev[i]))) {
          used[j] = true;
          sum += ev[j];
          ++cnt;
        }
      }
      out.push_back(sum / double(cnt));
    }
  }
  return out;
}

struct Eigenvalue {
  std::size_t algebraic = 0;
  std::size_t geometric = 0;
};

// Distinct exactly verified eigenvalues of m with their multiplicities.
template <class T>
std::vector<std::pair<T, Eigenvalue>> verified_spectrum(const Matrix<T>& m, double tol) {
  const std::size_t n = m.rows();
  const Matrix<T> id = Matrix<T>::identity(n);
  std::vector<T> cands;
  for (Complex c : eigen_candidates(to_eigen(m))) {
    if constexpr (is_exact_v<T>) {
      double slack = 1e-3 * std::max(1.0, std::abs(c));
      for (const auto& re : convergents(c.real(), slack))
        for (const auto& im : convergents(c.imag(), slack)) cands.emplace_back(re, im);
    } else {
      cands.push_back(c);
    }
  }
  std::vector<std::pair<T, Eigenvalue>> out;
  std::size_t total = 0;
  for (const T& lam : cands) {
    bool seen = std::any_of(out.begin(), out.end(),
                            [&](const auto& e) { return scalar_equal(e.first, lam, tol); });
    if (seen) continue;
    const Matrix<T> shifted = m - lam * id;
    Eigenvalue ev;
    try {
      ev.geometric = n - rank(shifted, tol);
      if (ev.geometric == 0) continue;
      ev.algebraic = n - rank(matrix_power(shifted, n), tol);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::rank_ambiguity) continue;
      throw;
    }
    total += ev.algebraic;
    out.emplace_back(lam, ev);
  }
  if (total != n) fail(ErrorCode::precondition, std::string(kJordanUnavailable) +
                                                    " (spectrum is not Gaussian-rational)");
  return out;
}

template <class T>
PNorm<T> finish(const Matrix<T>& m, Matrix<T> p, double tol, const char* source) {
  PNorm<T> pn = PNorm<T>::from_matrix(p, tol, source);
  if (!is_jordan_form(Matrix<T>(pn.p_inv * m * pn.p), tol)) {
    fail(ErrorCode::internal, "computed basis does not bring the matrix to Jordan form");
  }
  return pn;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

template <class T>
Matrix<T> random_integer_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, int bound) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-bound, bound);
  Matrix<T> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = T(dist(rng));
  return m;
}

template <class T>
RestrictedSolution<T> solve_restricted(const BddContext<T>& ctx, const Matrix<T>& beta,
                                       bool constrain_to_core) {
  require_vector(ctx, beta, "beta");
  const double tol = ctx.tol();
  const std::size_t n = ctx.n();
  const Matrix<T> shift = ctx.a() * ctx.p_l() + ctx.p_lperp();
  const std::size_t k = ctx.k();
  const Subspace<T> range_k = power_range(shift, k, tol);
  if (!range_k.contains(beta, tol)) {
    fail(ErrorCode::inconsistent, "beta is not in R((A P_L + P_{L^perp})^k), k = " +
                                      std::to_string(k));
  }
  RestrictedSolution<T> s;
  s.x_particular = ctx.bdd() * beta;
  s.y_particular = beta - ctx.a() * s.x_particular;
  s.unique = constrain_to_core || k == 0;
  if (s.unique) {
    s.family_generator = Matrix<T>::zeros(n, n);
  } else {
    // P_L N^{k-1} (I - N^D N); the leading P_L keeps the increments inside L at k = 1.
    const Matrix<T> nd = drazin(shift, tol).d_inverse;
    s.family_generator = ctx.p_l() * matrix_power(shift, k - 1) *
                         (Matrix<T>::identity(n) - nd * shift);
  }
  s.y_family_generator = -(ctx.a() * s.family_generator);
  if (constrain_to_core && !range_k.contains(Matrix<T>(s.x_particular + s.y_particular), tol)) {
    fail(ErrorCode::internal, "particular pair leaves R((A P_L + P_{L^perp})^k)");
  }
  return s;
}

template <class T>
ConstrainedSolution<T> solve_constrained(const BddContext<T>& ctx, const Matrix<T>& b) {
  require_vector(ctx, b, "b");
  const double tol = ctx.tol();
  const std::size_t n = ctx.n();
  const std::size_t c = ctx.core_index();
  if (!power_range(ctx.compressed(), c, tol).contains(b, tol)) {
    fail(ErrorCode::inconsistent, "b is not in R((P_L A P_L)^k), k = " + std::to_string(c));
  }
  ConstrainedSolution<T> s;
  s.x_min = ctx.bdd() * b;
  if (c == 0) {
    s.family_generator = Matrix<T>::zeros(n, n);
  } else {
    s.family_generator = ctx.p_l() * matrix_power(ctx.compressed(), c - 1) *
                         (Matrix<T>::identity(n) - ctx.bdd() * ctx.a() * ctx.p_l());
  }
  return s;
}

template <class T>
PNorm<T> PNorm<T>::from_matrix(const Matrix<T>& p, double tol, std::string source) {
  if (!p.square()) fail(ErrorCode::precondition, "P must be square, got " + p.shape());
  PNorm pn;
  pn.p = p;
  try {
    pn.p_inv = inverse(p, tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::precondition) throw;
    fail(ErrorCode::precondition, "P is singular");
  }
  pn.source = std::move(source);
  return pn;
}

template <class T>
T PNorm<T>::squared(const Matrix<T>& x) const {
  const Matrix<T> y = p_inv * x;
  T acc(0);
  for (const T& v : y.entries()) {
    if constexpr (is_exact_v<T>) {
      acc += Rational(v.norm());
    } else {
      acc += std::norm(v);
    }
  }
  return acc;
}

template <class T>
bool is_jordan_form(const Matrix<T>& j, double tol) {
  if (!j.square()) return false;
  const std::size_t n = j.rows();
  const T zero(0), one(1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (c == r) continue;
      if (c == r + 1) {
        bool is_one = scalar_equal(j(r, c), one, tol);
        if (!is_one && !scalar_equal(j(r, c), zero, tol)) return false;
        if (is_one && !scalar_equal(j(r, r), j(c, c), tol)) return false;
      } else if (!scalar_equal(j(r, c), zero, tol)) {
        return false;
      }
    }
  }
  return true;
}

template <class T>
PNorm<T> jordan_basis_diagonalizable(const Matrix<T>& m, double tol) {
  if (!m.square()) fail(ErrorCode::invalid_argument, "Jordan basis of non-square matrix");
  const std::size_t n = m.rows();
  const auto spectrum = verified_spectrum(m, tol);
  Matrix<T> p(n, 0);
  for (const auto& [lam, ev] : spectrum) {
    if (ev.geometric != ev.algebraic) {
      fail(ErrorCode::precondition, std::string(kJordanUnavailable) + " (defective matrix)");
    }
    p = hstack(p, null_space_basis(Matrix<T>(m - lam * Matrix<T>::identity(n)), tol));
  }
  PNorm<T> pn = finish(m, p, tol, "eigenvector basis");
  const Matrix<T> d = pn.p_inv * m * pn.p;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!scalar_equal(d(i, i + 1), T(0), tol)) fail(ErrorCode::internal, "eigenvector basis is not diagonalizing");
  }
  return pn;
}

template <class T>
PNorm<T> jordan_basis(const Matrix<T>& m, double tol) {
  if (!m.square()) fail(ErrorCode::invalid_argument, "Jordan basis of non-square matrix");
  if constexpr (!is_exact_v<T>) {
    // Chains are not numerically well defined; only the diagonalizable case is attempted.
    return jordan_basis_diagonalizable(m, tol);
  } else {
    const std::size_t n = m.rows();
    const auto spectrum = verified_spectrum(m, tol);
    Matrix<T> p(n, 0);
    for (const auto& [lam, ev] : spectrum) {
      const Matrix<T> nil = m - lam * Matrix<T>::identity(n);
      // Kernel chain ker N^0 < ker N^1 < ... < ker N^h with dim ker N^h = algebraic.
      std::vector<Matrix<T>> kernels{Matrix<T>(n, 0)};
      Matrix<T> power = Matrix<T>::identity(n);
      while (kernels.back().cols() < ev.algebraic) {
        power = power * nil;
        kernels.push_back(null_space_basis(power, tol));
      }
      const std::size_t height = kernels.size() - 1;
      Matrix<T> chosen(n, 0);  // chain tops picked so far, plus their chains
      for (std::size_t j = height; j >= 1; --j) {
        Matrix<T> span = hstack(kernels[j - 1], chosen);
        std::size_t r = rank(span, tol);
        for (std::size_t c = 0; c < kernels[j].cols(); ++c) {
          const Matrix<T> v = kernels[j].col(c);
          Matrix<T> trial = hstack(span, v);
          if (rank(trial, tol) == r) continue;
          span = std::move(trial);
          ++r;
          // Chain N^{j-1} v, ..., N v, v.
          std::vector<Matrix<T>> chain{v};
          for (std::size_t s = 1; s < j; ++s) chain.push_back(nil * chain.back());
          for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
            p = hstack(p, *it);
            chosen = hstack(chosen, *it);
          }
        }
      }
    }
    return finish(m, p, tol, "Jordan chain basis");
  }
}

template <class T>
PNorm<T> core_nilpotent_basis(const BddContext<T>& ctx) {
  return PNorm<T>::from_matrix(hstack(ctx.s().basis(), ctx.t().basis()), ctx.tol(),
                               "core-nilpotent basis");
}

template <class T>
PNorm<T> default_pnorm(const BddContext<T>& ctx) {
  try {
    return jordan_basis(ctx.compressed(), ctx.tol());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::precondition && e.code() != ErrorCode::rank_ambiguity) throw;
    return core_nilpotent_basis(ctx);
  }
}

template <class T>
VerificationReport<T> min_p_norm_certify(const BddContext<T>& ctx, const Matrix<T>& b,
                                         const PNorm<T>& pnorm, std::size_t samples,
                                         std::uint64_t seed) {
  const std::size_t n = ctx.n();
  if (pnorm.p.rows() != n || pnorm.p.cols() != n) {
    fail(ErrorCode::precondition, "P must be " + ctx.a().shape());
  }
  const double tol = ctx.tol();
  const ConstrainedSolution<T> sol = solve_constrained(ctx, b);
  const T best = pnorm.squared(sol.x_min);
  const Matrix<T> pla = ctx.p_l() * ctx.a();

  VerificationReport<T> r;
  std::size_t violations = 0, residual_failures = 0;
  std::optional<Matrix<T>> norm_witness, residual_witness;
  for (std::size_t i = 0; i < samples; ++i) {
    const Matrix<T> z = i == 0 ? Matrix<T>::zeros(n, 1)
                               : random_integer_matrix<T>(n, 1, derive_seed(seed, i));
    const Matrix<T> x = sol.x_min + sol.family_generator * z;
    if (!not_greater(best, pnorm.squared(x), tol)) {
      ++violations;
      if (!norm_witness) norm_witness = x;
    }
    const Matrix<T> residual = pla * x - b;
    if (!equal(residual, Matrix<T>::zeros(n, 1), tol)) {
      ++residual_failures;
      if (!residual_witness) residual_witness = residual;
    }
  }
  const std::string tally = "/" + std::to_string(samples) + " samples";
  if (violations == 0) {
    r.pass("Thm6.2 minimal P-norm", "0 violations" + tally + ", ||x_min||_P^2 = " +
                                        std::to_string(real_part(best)) + ", P: " + pnorm.source);
  } else {
    r.fail("Thm6.2 minimal P-norm", std::to_string(violations) + " violations" + tally, *norm_witness);
  }
  if (residual_failures == 0) {
    r.pass("Eq(xb) family residual", "P_L A x = b for all" + tally.substr(1));
  } else {
    r.fail("Eq(xb) family residual", std::to_string(residual_failures) + " failures" + tally,
           *residual_witness);
  }
  return r;
}

template <class T>
Matrix<T> cramer_min_p_norm(const BddContext<T>& ctx, const Matrix<T>& b, const Matrix<T>& f,
                            const Matrix<T>& g) {
  require_vector(ctx, b, "b");
  const double tol = ctx.tol();
  const std::size_t n = ctx.n();
  const std::size_t m = n - ctx.s().dim();
  if (f.rows() != n || f.cols() != m || g.rows() != m || g.cols() != n) {
    fail(ErrorCode::invalid_argument, "F must be " + std::to_string(n) + "x" + std::to_string(m) +
                                          " and G " + std::to_string(m) + "x" + std::to_string(n));
  }
  if (rank(f, tol) != m || !equal(column_space(f, tol), ctx.t(), tol)) {
    fail(ErrorCode::invalid_argument, "F must have full column rank and R(F) = T");
  }
  if (rank(g, tol) != m || !equal(null_space(g, tol), ctx.s(), tol)) {
    fail(ErrorCode::invalid_argument, "G must have full row rank and N(G) = S");
  }
  const std::size_t c = ctx.core_index();
  if (!power_range(ctx.compressed(), c, tol).contains(b, tol)) {
    fail(ErrorCode::inconsistent, "b is not in R((P_L A P_L)^k), k = " + std::to_string(c));
  }
  const Matrix<T> h = block(ctx.compressed(), f, g, Matrix<T>::zeros(m, m));
  const T dh = det(h);
  if (scalar_equal(dh, T(0), tol)) fail(ErrorCode::internal, "bordered matrix is singular");
  const Matrix<T> rhs = vstack(b, Matrix<T>::zeros(m, 1));
  Matrix<T> x(n, 1);
  for (std::size_t i = 0; i < n; ++i) x(i, 0) = det(replace_column(h, i + 1, rhs)) / dh;
  return x;
}

template <class T>
Matrix<T> cramer_min_p_norm(const BddContext<T>& ctx, const Matrix<T>& b) {
  return cramer_min_p_norm(ctx, b, ctx.t().basis(),
                           Matrix<T>(orthogonal_complement(ctx.s(), ctx.tol()).basis().conj_transpose()));
}

#define GINV_INSTANTIATE(T)                                                                     \
  template Matrix<T> random_integer_matrix<T>(std::size_t, std::size_t, std::uint64_t, int);    \
  template RestrictedSolution<T> solve_restricted(const BddContext<T>&, const Matrix<T>&, bool); \
  template ConstrainedSolution<T> solve_constrained(const BddContext<T>&, const Matrix<T>&);    \
  template struct PNorm<T>;                                                                     \
  template bool is_jordan_form(const Matrix<T>&, double);                                       \
  template PNorm<T> jordan_basis_diagonalizable(const Matrix<T>&, double);                      \
  template PNorm<T> jordan_basis(const Matrix<T>&, double);                                     \
  template PNorm<T> core_nilpotent_basis(const BddContext<T>&);                                 \
  template PNorm<T> default_pnorm(const BddContext<T>&);                                        \
  template VerificationReport<T> min_p_norm_certify(const BddContext<T>&, const Matrix<T>&,     \
                                                    const PNorm<T>&, std::size_t, std::uint64_t); \
  template Matrix<T> cramer_min_p_norm(const BddContext<T>&, const Matrix<T>&);                 \
  template Matrix<T> cramer_min_p_norm(const BddContext<T>&, const Matrix<T>&, const Matrix<T>&, \
                                       const Matrix<T>&);

GINV_INSTANTIATE(Rational)
GINV_INSTANTIATE(Complex)

#undef GINV_INSTANTIATE

}  // namespace ginv
