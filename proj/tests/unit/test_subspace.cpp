#include "support/helpers.hpp"
#include "support/oracle.hpp"

#include "ginv/solver.hpp"
#include "ginv/subspace.hpp"

using namespace ginv;
using test::gi;
using test::q;

TEST_SUITE("subspace") {
  TEST_CASE("span drops zero and dependent columns") {
    const RMatrix spanning{{1, 2, 0, 1}, {0, 0, 0, 1}, {1, 2, 0, 0}};
    const auto l = Subspace<Rational>::span(spanning);
    CHECK(l.dim() == 2);
    CHECK(l.ambient_dim() == 3);
    CHECK(l.contains(RMatrix{{3}, {1}, {2}}));
    CHECK_FALSE(l.contains(RMatrix{{1}, {0}, {0}}));
    CHECK(Subspace<Rational>::span(RMatrix::zeros(3, 2)).dim() == 0);
  }

  TEST_CASE("equality ignores the choice of spanning set") {
    const auto a = Subspace<Rational>::span(RMatrix{{1, 0}, {1, 1}, {0, 1}});
    const auto b = Subspace<Rational>::span(RMatrix{{1, 1}, {2, 1}, {1, 0}});
    const auto c = Subspace<Rational>::span(RMatrix{{1, 0}, {0, 1}, {0, 0}});
    CHECK(a == b);
    CHECK_FALSE(a == c);
    CHECK(equal(a, b));
  }

  TEST_CASE("orthogonal projector matches the reference formula") {
    for (std::uint64_t s = 0; s < 25; ++s) {
      const std::size_t n = 2 + s % 5;
      RMatrix span = random_integer_matrix<Rational>(n, 1 + s % n, derive_seed(21, s));
      if (s % 3 == 0) {  // Gaussian-integer spans
        span = span + random_integer_matrix<Rational>(span.rows(), span.cols(), derive_seed(22, s)) *
                          gi(0, 1);
      }
      const auto l = Subspace<Rational>::span(span);
      const RMatrix p = orthogonal_projector(l);
      CHECK(p == oracle::projector(span));
      CHECK(is_orthogonal_projector(p));
      const auto perp = orthogonal_complement(l);
      CHECK(perp.dim() + l.dim() == n);
      CHECK(oracle::mul(oracle::adjoint(l.basis()), perp.basis()) == RMatrix::zeros(l.dim(), perp.dim()));
    }
  }

  TEST_CASE("oblique projector onto S along T") {
    const auto s = Subspace<Rational>::span(RMatrix{{1}, {0}});
    const auto t = Subspace<Rational>::span(RMatrix{{1}, {1}});
    const RMatrix p = oblique_projector(s, t);
    CHECK(p == RMatrix{{1, -1}, {0, 0}});
    CHECK(is_projector(p));
    CHECK_FALSE(is_orthogonal_projector(p));
    CHECK_GINV_ERROR(oblique_projector(s, s), ErrorCode::precondition);
  }

  TEST_CASE("column space and null space") {
    const RMatrix a{{1, 2}, {2, 4}};
    CHECK(column_space(a) == Subspace<Rational>::span(RMatrix{{1}, {2}}));
    CHECK(null_space(a) == Subspace<Rational>::span(RMatrix{{2}, {-1}}));
    CHECK(Subspace<Rational>::whole(3).dim() == 3);
    CHECK(Subspace<Rational>::zero(3).dim() == 0);
  }

  TEST_CASE("float subspaces agree with exact ones") {
    for (std::uint64_t s = 0; s < 15; ++s) {
      const std::size_t n = 2 + s % 4;
      const RMatrix span = random_integer_matrix<Rational>(n, 1 + s % n, derive_seed(23, s));
      const auto exact = Subspace<Rational>::span(span);
      const auto f = Subspace<Complex>::span(matrix_cast<Complex>(span), 1e-10);
      CHECK(f.dim() == exact.dim());
      CHECK(equal(orthogonal_projector(f, 1e-10), matrix_cast<Complex>(orthogonal_projector(exact)), 1e-9));
    }
  }
}
