#include "support/helpers.hpp"
#include "support/oracle.hpp"

#include "ginv/solver.hpp"
#include "ginv/suites.hpp"

using namespace ginv;
using test::q;

namespace {

BddContext<Rational> context(const Instance& inst) {
  return BddContext<Rational>::build(inst.a, Subspace<Rational>::span(inst.l_span));
}

// x_min is the unique minimizer of ||P^{-1}(x_min + G z)|| over z iff the
// gradient at z = 0 vanishes: G* P^{-*} P^{-1} x_min = 0.
bool first_order_minimal(const RMatrix& x_min, const RMatrix& g, const RMatrix& p) {
  const RMatrix p_inv = *oracle::inverse(p);
  const RMatrix grad = oracle::mul(oracle::mul(oracle::adjoint(oracle::mul(p_inv, g)), p_inv), x_min);
  return grad.is_zero();
}

}  // namespace

TEST_SUITE("solver") {
  TEST_CASE("Example 4.1 minimum P-norm solution by three routes [reference]") {
    const auto ctx = context(example_41());
    const RMatrix b = test::load_fixture("ex41_b");
    const RMatrix expected{{1}, {q("1/2")}, {q("1/2")}, {0}};
    CHECK(solve_constrained(ctx, b).x_min == expected);
    CHECK(cramer_min_p_norm(ctx, b) == expected);
    CHECK(cramer_min_p_norm(ctx, b, test::load_fixture("ex41_F"), test::load_fixture("ex41_G")) == expected);
    CHECK(oracle::mul(ctx.bdd(), b) == expected);
  }

  TEST_CASE("Cramer rejects borders that do not match S and T") {
    const auto ctx = context(example_41());
    const RMatrix b = test::load_fixture("ex41_b");
    const RMatrix f = test::load_fixture("ex41_F");
    const RMatrix g = test::load_fixture("ex41_G");
    CHECK_GINV_ERROR(cramer_min_p_norm(ctx, b, g, f), ErrorCode::invalid_argument);
    CHECK_GINV_ERROR(cramer_min_p_norm(ctx, b, RMatrix(f * RMatrix{{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}), g),
                     ErrorCode::invalid_argument);
    CHECK_GINV_ERROR(cramer_min_p_norm(ctx, b, oracle::eye(4), g), ErrorCode::invalid_argument);
  }

  TEST_CASE("inconsistent right-hand sides are reported") {
    const auto ctx = context(example_41());
    const RMatrix bad = test::load_fixture("ex41_b_bad");
    CHECK_GINV_ERROR(solve_constrained(ctx, bad), ErrorCode::inconsistent);
    CHECK_GINV_ERROR(cramer_min_p_norm(ctx, bad), ErrorCode::inconsistent);
    CHECK_GINV_ERROR(solve_constrained(ctx, RMatrix{{1}, {2}}), ErrorCode::invalid_argument);
  }

  TEST_CASE("constrained family solves P_L A x = b inside L") {
    for (const auto& inst : corpus(41, 40)) {
      const auto ctx = context(inst);
      const std::size_t n = ctx.n();
      const RMatrix m = ctx.compressed();
      const RMatrix b = oracle::mul(oracle::pow(m, ctx.core_index()),
                                    random_integer_matrix<Rational>(n, 1, derive_seed(42, inst.seed)));
      const auto sol = solve_constrained(ctx, b);
      CHECK(cramer_min_p_norm(ctx, b) == sol.x_min);
      for (std::uint64_t i = 0; i < 5; ++i) {
        const RMatrix x = sol.x_min + sol.family_generator * random_integer_matrix<Rational>(n, 1, derive_seed(43, i));
        CHECK(oracle::mul(oracle::mul(ctx.p_l(), ctx.a()), x) == b);
        CHECK(oracle::mul(ctx.p_l(), x) == x);
      }
      const PNorm<Rational> p = default_pnorm(ctx);
      CHECK_MESSAGE(first_order_minimal(sol.x_min, sol.family_generator, p.p), inst.name << " " << p.source);
      const auto cert = min_p_norm_certify(ctx, b, p, 20, 1);
      CHECK(cert.ok());
    }
  }

  TEST_CASE("restricted system A x + y = beta") {
    for (const auto& inst : corpus(44, 40)) {
      const auto ctx = context(inst);
      const std::size_t n = ctx.n();
      const RMatrix shift = ctx.a() * ctx.p_l() + ctx.p_lperp();
      const RMatrix beta = oracle::mul(oracle::pow(shift, ctx.k()),
                                       random_integer_matrix<Rational>(n, 1, derive_seed(45, inst.seed)));
      for (bool core : {false, true}) {
        const auto s = solve_restricted(ctx, beta, core);
        for (std::uint64_t i = 0; i < 4; ++i) {
          const RMatrix u = random_integer_matrix<Rational>(n, 1, derive_seed(46, i));
          const RMatrix x = s.x_particular + s.family_generator * u;
          const RMatrix y = s.y_particular + s.y_family_generator * u;
          CHECK(oracle::mul(ctx.a(), x) + y == beta);
          CHECK(oracle::mul(ctx.p_l(), x) == x);
          CHECK(oracle::mul(ctx.p_lperp(), y) == y);
        }
        if (core) CHECK(s.family_generator.is_zero());
      }
    }
    const auto ctx = context(example_41());
    // R(N^2) for N = A P_L + P_{L^perp} is span{(2,1,1,0), e4}.
    CHECK_GINV_ERROR(solve_restricted(ctx, test::load_fixture("ex41_b_bad")), ErrorCode::inconsistent);
    CHECK_NOTHROW(solve_restricted(ctx, RMatrix{{0}, {0}, {0}, {1}}));
  }

  TEST_CASE("Jordan bases") {
    // Similarity transform of a defective matrix with eigenvalues 2, 2, 3.
    const RMatrix j{{2, 1, 0}, {0, 2, 0}, {0, 0, 3}};
    const RMatrix s{{1, 1, 0}, {0, 1, 1}, {1, 0, 1}};
    const RMatrix m = oracle::mul(oracle::mul(s, j), *oracle::inverse(s));
    const auto pn = jordan_basis(m);
    const RMatrix jf = oracle::mul(oracle::mul(*oracle::inverse(pn.p), m), pn.p);
    CHECK(is_jordan_form(jf));
    for (std::size_t i = 0; i < 3; ++i) CHECK(oracle::det(m - jf(i, i) * oracle::eye(3)) == Rational(0));
    CHECK_GINV_ERROR(jordan_basis_diagonalizable(m), ErrorCode::precondition);
    CHECK_GINV_ERROR(jordan_basis(RMatrix{{0, 1}, {2, 0}}), ErrorCode::precondition);  // eigenvalues +-sqrt 2
    const auto rot = jordan_basis(RMatrix{{0, -1}, {1, 0}});                              // eigenvalues +-i
    CHECK(is_jordan_form(RMatrix(rot.p_inv * RMatrix{{0, -1}, {1, 0}} * rot.p)));
    CHECK_FALSE(is_jordan_form(RMatrix{{1, 1}, {0, 2}}));
  }

  TEST_CASE("Example 4.1 uses a Jordan chain basis") {
    const auto ctx = context(example_41());
    const auto p = default_pnorm(ctx);
    CHECK(p.source == "Jordan chain basis");
    CHECK(is_jordan_form(RMatrix(p.p_inv * ctx.compressed() * p.p)));
    CHECK(min_p_norm_certify(ctx, test::load_fixture("ex41_b"), p, 100).ok());
  }

  TEST_CASE("P-norm") {
    CHECK_GINV_ERROR(PNorm<Rational>::from_matrix(test::load_fixture("singular_P")), ErrorCode::precondition);
    const auto p = PNorm<Rational>::from_matrix(RMatrix{{2, 0}, {0, 1}});
    CHECK(p.squared(RMatrix{{2}, {3}}) == Rational(10));
  }

  TEST_CASE("seeded sampling is deterministic") {
    CHECK(random_integer_matrix<Rational>(3, 3, 99) == random_integer_matrix<Rational>(3, 3, 99));
    CHECK(derive_seed(1, 2) != derive_seed(2, 1));
    const RMatrix r = random_integer_matrix<Rational>(6, 6, 5);
    for (const auto& x : r.entries()) {
      CHECK(x.is_real());
      CHECK(abs(x.re()) <= 3);
    }
  }

  TEST_CASE("float solvers agree with exact ones") {
    const auto inst = example_41();
    const double tol = 1e-8;
    const auto f = BddContext<Complex>::build(matrix_cast<Complex>(inst.a),
                                              Subspace<Complex>::span(matrix_cast<Complex>(inst.l_span), tol), tol);
    const CMatrix b = matrix_cast<Complex>(test::load_fixture("ex41_b"));
    const CMatrix expected = CMatrix{{1.0}, {0.5}, {0.5}, {0.0}};
    CHECK(equal(solve_constrained(f, b).x_min, expected, 1e-9));
    CHECK(equal(cramer_min_p_norm(f, b), expected, 1e-9));
  }
}
