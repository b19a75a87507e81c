#pragma once

// Shared helpers for the test programs: literal construction, fixtures, and
// doctest printing of library types.

#include <doctest.h>

#include <sstream>
#include <string>

#include "ginv/io.hpp"
#include "ginv/matrix.hpp"
#include "ginv/scalar.hpp"

namespace test {

using ginv::CMatrix;
using ginv::Rational;
using ginv::RMatrix;

inline Rational q(const char* text) { return Rational::parse_real(text); }
inline Rational q(long p, long d) { return Rational(mpq_class(p, d)); }
inline Rational gi(long re, long im) { return Rational(mpq_class(re), mpq_class(im)); }

inline std::string fixture(const std::string& name) {
  return std::string(GINV_FIXTURE_DIR) + "/" + name + ".json";
}

inline RMatrix load_fixture(const std::string& name) {
  return ginv::load_matrix(fixture(name)).matrix;
}

template <class T>
std::string show(const ginv::Matrix<T>& m) {
  return ginv::matrix_to_json(m).dump();
}

}  // namespace test

namespace doctest {
template <class T>
struct StringMaker<ginv::Matrix<T>> {
  static String convert(const ginv::Matrix<T>& m) { return test::show(m).c_str(); }
};
template <>
struct StringMaker<ginv::Rational> {
  static String convert(const ginv::Rational& r) { return r.to_string().c_str(); }
};
}  // namespace doctest

// Runs `expr` and checks that it throws ginv::Error with the given code.
#define CHECK_GINV_ERROR(expr, ec)                                   \
  do {                                                               \
    bool thrown_ = false;                                            \
    try {                                                            \
      (void)(expr);                                                  \
    } catch (const ginv::Error& e_) {                                \
      thrown_ = true;                                                \
      CHECK_MESSAGE(e_.code() == (ec), "unexpected error: " << e_.what()); \
    }                                                                \
    CHECK_MESSAGE(thrown_, "expected ginv::Error from " #expr);      \
  } while (0)
