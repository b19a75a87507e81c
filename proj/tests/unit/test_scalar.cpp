#include "support/helpers.hpp"

using namespace ginv;
using test::q;

TEST_SUITE("scalar") {
  TEST_CASE("rational strings parse to the expected fraction") {
    CHECK(q("1/12") == Rational(mpq_class(1, 12)));
    CHECK(q("-3/6") == Rational(mpq_class(-1, 2)));
    CHECK(q(" 7 ") == Rational(7));
    CHECK(q("+4/8") == Rational(mpq_class(1, 2)));
    CHECK_GINV_ERROR(q("1/0"), ErrorCode::parse);
    CHECK_GINV_ERROR(q("abc"), ErrorCode::parse);
    CHECK_GINV_ERROR(q("1/-2"), ErrorCode::parse);
    CHECK_GINV_ERROR(q(""), ErrorCode::parse);
  }

  TEST_CASE("doubles convert exactly") {
    // 0.1 is the dyadic 3602879701896397 / 2^55.
    const Rational tenth = Rational::from_double(0.1);
    CHECK(tenth.re() == mpq_class(mpz_class("3602879701896397"), mpz_class("36028797018963968")));
    CHECK(Rational::from_double(-0.75, 2.5) == Rational(mpq_class(-3, 4), mpq_class(5, 2)));
  }

  TEST_CASE("Gaussian rational arithmetic") {
    const Rational a(mpq_class(1), mpq_class(2));   // 1 + 2i
    const Rational b(mpq_class(3), mpq_class(-1));  // 3 - i
    CHECK(a * b == Rational(mpq_class(5), mpq_class(5)));
    const Rational one_plus_i(mpq_class(1), mpq_class(1));
    CHECK(one_plus_i / one_plus_i.conj() == Rational(mpq_class(0), mpq_class(1)));
    CHECK(a - a == Rational(0));
    CHECK(a.norm() == 5);
    CHECK(!a.is_real());
    CHECK((a + a.conj()).is_real());
    CHECK_GINV_ERROR(a / Rational(0), ErrorCode::invalid_argument);
  }

  TEST_CASE("string form round-trips") {
    for (const char* s : {"0", "-5", "7/3", "-1/12"}) {
      CHECK(Rational::parse_real(q(s).to_string()) == q(s));
    }
  }

  TEST_CASE("float comparison is relative") {
    CHECK(scalar_equal(Complex(1e6), Complex(1e6 + 1e-5), 1e-10));
    CHECK_FALSE(scalar_equal(Complex(1.0), Complex(1.0 + 1e-8), 1e-10));
    CHECK(scalar_equal(Complex(0.0), Complex(1e-12), 1e-10));
    CHECK(scalar_equal(q("1/3"), q("2/6")));
    CHECK_FALSE(scalar_equal(q("1/3"), q("1/4")));
  }
}
