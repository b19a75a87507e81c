#include "support/helpers.hpp"
#include "support/oracle.hpp"

#include "ginv/linalg.hpp"
#include "ginv/solver.hpp"

using namespace ginv;
using test::q;

namespace {

// Integer matrix of rank at most r: product of random n x r and r x n factors.
RMatrix low_rank(std::size_t n, std::size_t r, std::uint64_t seed) {
  return random_integer_matrix<Rational>(n, r, seed) * random_integer_matrix<Rational>(r, n, seed + 1);
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("det agrees with the Leibniz expansion") {
    for (std::uint64_t s = 0; s < 40; ++s) {
      const std::size_t n = 1 + s % 6;
      const RMatrix a = random_integer_matrix<Rational>(n, n, derive_seed(11, s));
      CHECK(det(a) == oracle::det(a));
    }
    const RMatrix z{{Rational(mpq_class(0), mpq_class(1)), Rational(2)}, {Rational(1), Rational(3)}};
    CHECK(det(z) == oracle::det(z));
  }

  TEST_CASE("rank agrees with the reference elimination") {
    for (std::uint64_t s = 0; s < 60; ++s) {
      const std::size_t n = 2 + s % 5;
      const RMatrix a = s % 2 ? low_rank(n, 1 + s % n, derive_seed(12, s))
                              : random_integer_matrix<Rational>(n, n + 1, derive_seed(13, s));
      CHECK(rank(a) == oracle::rank(a));
    }
    CHECK(rank(RMatrix::zeros(3, 4)) == 0);
    CHECK(rank(RMatrix(0, 0)) == 0);
  }

  TEST_CASE("inverse, and singular input is a precondition error") {
    for (std::uint64_t s = 0; s < 30; ++s) {
      const std::size_t n = 1 + s % 5;
      const RMatrix a = random_integer_matrix<Rational>(n, n, derive_seed(14, s));
      if (oracle::det(a).is_zero()) {
        CHECK_GINV_ERROR(inverse(a), ErrorCode::precondition);
      } else {
        CHECK(inverse(a) == *oracle::inverse(a));
      }
    }
    CHECK_GINV_ERROR(inverse(RMatrix{{1, 2}, {2, 4}}), ErrorCode::precondition);
    CHECK_GINV_ERROR(inverse(RMatrix(2, 3)), ErrorCode::invalid_argument);
  }

  TEST_CASE("rref of a known matrix") {
    const RMatrix a{{1, 2, 1}, {2, 4, 0}, {3, 6, 1}};
    const auto e = rref(a);
    CHECK(e.pivots == std::vector<std::size_t>{0, 2});
    CHECK(e.reduced == RMatrix{{1, 2, 0}, {0, 0, 1}, {0, 0, 0}});
  }

  TEST_CASE("null space and column basis") {
    for (std::uint64_t s = 0; s < 30; ++s) {
      const std::size_t n = 2 + s % 5;
      const RMatrix a = low_rank(n, 1 + s % n, derive_seed(15, s));
      const std::size_t r = oracle::rank(a);
      const RMatrix nb = null_space_basis(a);
      CHECK(nb.cols() == n - r);
      CHECK(oracle::rank(nb) == n - r);
      CHECK(oracle::mul(a, nb) == RMatrix::zeros(n, n - r));
      const RMatrix cb = column_basis(a);
      CHECK(cb.cols() == r);
      CHECK(oracle::rank(hstack(a, cb)) == r);
    }
  }

  TEST_CASE("submatrix, replace_column, power") {
    const RMatrix a{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
    CHECK(submatrix(a, IndexSet({1, 3}), IndexSet({2, 3})) == RMatrix{{2, 3}, {8, 9}});
    CHECK(replace_column(a, 2, RMatrix{{0}, {0}, {1}}) == RMatrix{{1, 0, 3}, {4, 0, 6}, {7, 1, 9}});
    CHECK(matrix_power(a, 0) == RMatrix::identity(3));
    CHECK(matrix_power(a, 3) == oracle::pow(a, 3));
    CHECK(IndexSet({1, 2, 4}).to_string() == "{1,2,4}");
    CHECK_GINV_ERROR(submatrix(a, IndexSet({4}), IndexSet({1})), ErrorCode::invalid_argument);
  }

  TEST_CASE("in_range") {
    const RMatrix a{{1, 0}, {0, 0}, {0, 1}};
    CHECK(in_range(a, RMatrix{{2}, {0}, {3}}));
    CHECK_FALSE(in_range(a, RMatrix{{0}, {1}, {0}}));
  }

  TEST_CASE("float rank uses singular values and flags ambiguity") {
    const double tol = 1e-8;
    CHECK(rank(CMatrix{{1.0, 0.0}, {0.0, 1e-12}}, tol) == 1);
    CHECK(rank(CMatrix{{1.0, 0.0}, {0.0, 1e-6}}, tol) == 2);
    CHECK_GINV_ERROR(rank(CMatrix{{1.0, 0.0}, {0.0, 2e-8}}, tol), ErrorCode::rank_ambiguity);
    // Rotated so that no single entry reveals the small singular value.
    const double c = std::sqrt(0.5);
    const CMatrix rot{{c, -c}, {c, c}};
    CHECK(rank(CMatrix(rot * CMatrix{{3.0, 0.0}, {0.0, 1e-13}} * rot), tol) == 1);
  }

  TEST_CASE("float results track the exact ones") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const std::size_t n = 2 + s % 4;
      const RMatrix a = random_integer_matrix<Rational>(n, n, derive_seed(16, s));
      if (oracle::det(a).is_zero()) continue;
      CHECK(equal(inverse(matrix_cast<Complex>(a), 1e-10), matrix_cast<Complex>(inverse(a)), 1e-9));
      CHECK(std::abs(det(matrix_cast<Complex>(a)) - det(a).to_complex()) < 1e-8);
    }
  }
}
