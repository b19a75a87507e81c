#include "support/helpers.hpp"

#include <filesystem>

#include "ginv/io.hpp"
#include "ginv/solver.hpp"

using namespace ginv;
using test::gi;
using test::q;

TEST_SUITE("io") {
  TEST_CASE("entry forms") {
    const auto f = parse_matrix_text(
        R"({"rows":1,"cols":5,"backend":"exact","entries":[["1/12", 3, {"re":"0","im":"1"}, {"re":"-1/2"}, 0.5]]})");
    CHECK(f.backend == Backend::exact);
    CHECK(f.matrix(0, 0) == q("1/12"));
    CHECK(f.matrix(0, 1) == Rational(3));
    CHECK(f.matrix(0, 2) == gi(0, 1));
    CHECK(f.matrix(0, 3) == q("-1/2"));
    CHECK(f.matrix(0, 4) == q("1/2"));
    const auto g = parse_matrix_text(R"({"rows":1,"cols":2,"backend":"f64","entries":[[0.25, {"re":1.5,"im":-2}]]})");
    CHECK(g.backend == Backend::f64);
    CHECK(g.matrix(0, 1) == Rational(mpq_class(3, 2), mpq_class(-2)));
    const auto h = parse_matrix_text(R"({"rows":0,"cols":0,"entries":[]})");
    CHECK(h.matrix.rows() == 0);
  }

  TEST_CASE("malformed files are parse errors") {
    for (const char* bad : {
             R"({"rows":2,"cols":1,"entries":[["1"]]})",
             R"({"rows":1,"cols":2,"entries":[["1"]]})",
             R"({"cols":1,"entries":[["1"]]})",
             R"({"rows":1,"cols":1,"entries":[["1/0"]]})",
             R"({"rows":1,"cols":1,"entries":[["x"]]})",
             R"({"rows":1,"cols":1,"entries":[[{"re":"1","imag":"2"}]]})",
             R"({"rows":1,"cols":1,"backend":"f32","entries":[["1"]]})",
             R"({"rows":1,"cols":1,"entries":[[true]]})",
             R"({"rows":-1,"cols":1,"entries":[]})",
             R"([1,2])",
             R"({"rows":1,)",
         }) {
      CAPTURE(bad);
      CHECK_GINV_ERROR(parse_matrix_text(bad), ErrorCode::parse);
    }
    CHECK_GINV_ERROR(load_matrix("/nonexistent/file.json"), ErrorCode::parse);
  }

  TEST_CASE("exact round trip is lossless") {
    for (std::uint64_t s = 0; s < 30; ++s) {
      RMatrix m = random_integer_matrix<Rational>(1 + s % 4, 1 + s % 3, derive_seed(51, s));
      m = m * q("7/13") + random_integer_matrix<Rational>(m.rows(), m.cols(), derive_seed(52, s)) * gi(0, 1);
      const auto back = parse_matrix_json(matrix_to_json(m));
      CHECK(back.backend == Backend::exact);
      CHECK(back.matrix == m);
    }
  }

  TEST_CASE("float round trip is lossless") {
    const CMatrix m{{Complex(0.1, -2.5), Complex(1e-300)}, {Complex(3.0), Complex(-7.25, 1.0 / 3.0)}};
    const auto back = parse_matrix_json(matrix_to_json(m));
    CHECK(back.backend == Backend::f64);
    CHECK(matrix_cast<Complex>(back.matrix) == m);
  }

  TEST_CASE("Example 4.1 A fixture matches the displayed matrix [reference]") {
    CHECK(test::load_fixture("ex41_A") == RMatrix{{3, 3, 3, 2}, {1, 2, 2, 3}, {2, 1, 1, 3}, {0, 0, 0, 0}});
    CHECK(test::load_fixture("ex51_A") == RMatrix{{1, 1, 1, 1}, {0, 1, 2, 3}, {1, 1, 1, 1}, {1, 1, 1, 1}});
  }

  TEST_CASE("hash is stable and discriminating") {
    const RMatrix a{{1, 2}, {3, 4}};
    CHECK(matrix_hash(a) == matrix_hash(RMatrix{{1, 2}, {3, 4}}));
    CHECK(matrix_hash(a) != matrix_hash(RMatrix{{1, 2}, {3, 5}}));
    CHECK(matrix_hash(a).size() == 16);
  }

  TEST_CASE("report serialization keeps counts and witnesses") {
    VerificationReport<Rational> r("inst");
    r.pass("a");
    r.skip("b", "why");
    r.check("c", false, RMatrix{{1}});
    r.note("k", "v");
    const json j = report_to_json(r);
    CHECK(j["summary"]["total"] == 3);
    CHECK(j["summary"]["pass"] == 1);
    CHECK(j["summary"]["fail"] == 1);
    CHECK(j["summary"]["skipped"] == 1);
    CHECK(j["facts"]["k"] == "v");
    for (const auto& e : j["entries"]) {
      if (e["status"] == "fail") CHECK(e.contains("witness"));
    }
  }

  TEST_CASE("file write and read") {
    const auto path = std::filesystem::temp_directory_path() / "ginv_io_test.json";
    const RMatrix m{{q("1/3"), 0}};
    write_file(path, matrix_to_json(m).dump());
    CHECK(load_matrix(path).matrix == m);
    std::filesystem::remove(path);
  }
}
