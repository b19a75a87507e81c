#include "support/helpers.hpp"
#include "support/oracle.hpp"

#include "ginv/geninv.hpp"
#include "ginv/solver.hpp"

using namespace ginv;
using test::q;

namespace {

// Mixture of invertible, singular and nilpotent integer matrices.
RMatrix sample(std::uint64_t s) {
  const std::size_t n = 2 + s % 5;
  RMatrix a = random_integer_matrix<Rational>(n, n, derive_seed(31, s));
  switch (s % 4) {
    case 1:  // strictly upper triangular, hence nilpotent
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) a(i, j) = Rational(0);
      break;
    case 2:  // repeated row
      for (std::size_t j = 0; j < n; ++j) a(n - 1, j) = a(0, j);
      break;
    case 3: {  // core block plus a nilpotent Jordan block
      RMatrix j = RMatrix::zeros(n, n);
      j(0, 0) = Rational(2);
      for (std::size_t i = 1; i + 1 < n; ++i) j(i, i + 1) = Rational(1);
      a = j;
      break;
    }
    default:
      break;
  }
  return a;
}

}  // namespace

TEST_SUITE("geninv") {
  TEST_CASE("index follows the rank sequence") {
    for (std::uint64_t s = 0; s < 60; ++s) {
      const RMatrix a = sample(s);
      CHECK(index(a) == oracle::index(a));
    }
    CHECK(index(RMatrix::identity(3)) == 0);
    CHECK(index(RMatrix{{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}) == 3);
  }

  TEST_CASE("Moore-Penrose inverse satisfies the Penrose equations") {
    CHECK(moore_penrose(RMatrix{{1, 1}, {1, 1}}) == RMatrix{{q("1/4"), q("1/4")}, {q("1/4"), q("1/4")}});
    for (std::uint64_t s = 0; s < 40; ++s) {
      const RMatrix a = s % 5 == 0 ? random_integer_matrix<Rational>(3, 5, derive_seed(32, s)) : sample(s);
      CHECK(oracle::is_moore_penrose(a, moore_penrose(a)));
    }
    const RMatrix c{{test::gi(1, 1), Rational(0)}, {Rational(2), test::gi(0, -1)}};
    CHECK(oracle::is_moore_penrose(c, moore_penrose(c)));
  }

  TEST_CASE("Drazin inverse satisfies the defining equations") {
    for (std::uint64_t s = 0; s < 60; ++s) {
      const RMatrix a = sample(s);
      const auto d = drazin(a);
      CHECK(d.index == oracle::index(a));
      CHECK(oracle::is_drazin(a, d.d_inverse));
      CHECK(drazin_core_factorization(a) == d.d_inverse);
      CHECK(d.eigenprojection == RMatrix::identity(a.rows()) - oracle::mul(a, d.d_inverse));
    }
    CHECK(drazin(RMatrix::identity(3)).d_inverse == RMatrix::identity(3));
    CHECK(drazin(RMatrix{{0, 1}, {0, 0}}).d_inverse == RMatrix::zeros(2, 2));
  }

  TEST_CASE("outer inverse with R(A^k), N(A^k) is the Drazin inverse") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const RMatrix a = sample(s);
      const std::size_t k = oracle::index(a);
      const RMatrix ak = oracle::pow(a, k);
      const RMatrix x = outer_inverse_st(a, column_space(ak), null_space(ak));
      CHECK(oracle::is_drazin(a, x));
    }
  }

  TEST_CASE("block lemmas against the defining equations") {
    for (std::uint64_t s = 0; s < 25; ++s) {
      const RMatrix a = sample(s);
      const std::size_t n = a.rows();
      const RMatrix b = random_integer_matrix<Rational>(n, n, derive_seed(33, s));
      const RMatrix e = sample(s + 7).rows() == n ? sample(s + 7) : RMatrix::identity(n);
      const RMatrix zero = RMatrix::zeros(n, n);
      CHECK(oracle::is_drazin(block(a, b, zero, e),
                              drazin_block_triangular(a, b, e, BlockOrientation::upper)));
      CHECK(oracle::is_drazin(block(e, zero, b, a),
                              drazin_block_triangular(a, b, e, BlockOrientation::lower)));
      CHECK(oracle::is_drazin(block(a, zero, b, zero), drazin_column_bordered(a, b)));
      CHECK(drazin_product_check(a, b));
      const RMatrix d = random_integer_matrix<Rational>(n, n, derive_seed(34, s));
      CHECK(bordered_rank_check(a, b, d, e));
    }
  }

  TEST_CASE("orthogonal sum lemma needs MN = NM = 0") {
    const RMatrix m{{1, 0}, {0, 0}};
    const RMatrix n{{0, 0}, {0, 3}};
    CHECK(drazin_orthogonal_sum_check(m, n));
    CHECK_GINV_ERROR(drazin_orthogonal_sum_check(m, RMatrix{{1, 1}, {0, 0}}), ErrorCode::precondition);
  }

  TEST_CASE("float Drazin and MP track the exact results") {
    for (std::uint64_t s = 0; s < 40; ++s) {
      const RMatrix a = sample(s);
      const CMatrix af = matrix_cast<Complex>(a);
      CHECK(equal(drazin(af, 1e-8).d_inverse, matrix_cast<Complex>(drazin(a).d_inverse), 1e-7));
      CHECK(equal(moore_penrose(af, 1e-8), matrix_cast<Complex>(moore_penrose(a)), 1e-7));
      CHECK(index(af, 1e-8) == index(a));
    }
  }
}
