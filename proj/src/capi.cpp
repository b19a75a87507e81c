#include "ginv/ginv.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <thread>

#include "ginv/bdd.hpp"
#include "ginv/geninv.hpp"
#include "ginv/io.hpp"
#include "ginv/solver.hpp"
#include "ginv/suites.hpp"

// A handle keeps its values exactly; float results are dyadic rationals, so the
// tag alone decides how the matrix is computed with and serialized.
struct ginv_matrix {
  ginv::Backend backend = ginv::Backend::exact;
  ginv::RMatrix value;
};

namespace {

using namespace ginv;

thread_local std::string g_last_error;

ginv_status to_status(ErrorCode code) { return static_cast<ginv_status>(static_cast<int>(code)); }

template <class F>
ginv_status guarded(F&& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return GINV_INTERNAL_ERROR;
}

void require(const void* p, const char* what) {
  if (!p) fail(ErrorCode::invalid_argument, std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ginv_matrix* make_handle(Backend backend, RMatrix value) {
  return new ginv_matrix{backend, std::move(value)};
}

template <class T>
ginv_matrix* make_handle(const Matrix<T>& m) {
  return make_handle(ScalarTraits<T>::backend, matrix_cast<Rational>(m));
}

ginv_options resolved(const ginv_options* options) {
  ginv_options o;
  ginv_options_init(&o);
  if (options) o = *options;
  if (!(o.tol > 0.0)) o.tol = kDefaultTol;
  if (o.backend != GINV_BACKEND_EXACT && o.backend != GINV_BACKEND_F64) {
    fail(ErrorCode::invalid_argument, "unknown backend");
  }
  if (o.threads == 0) o.threads = std::max(1u, std::thread::hardware_concurrency());
  return o;
}

SuiteOptions suite_options(const ginv_options& o, Suite suite) {
  SuiteOptions s;
  s.suite = suite;
  s.tol = o.tol;
  s.seed = o.seed;
  s.samples = o.samples;
  s.threads = o.threads;
  return s;
}

// ---- compute ---------------------------------------------------------------

template <class T>
Matrix<T> compute(const std::string& kind, const RMatrix& a_exact, const ginv_matrix* l_span,
                  double tol) {
  const Matrix<T> a = as_backend<T>(a_exact);
  if (kind == "mp") return moore_penrose(a, tol);
  if (kind == "drazin") {
    if (!a.square()) fail(ErrorCode::invalid_argument, "drazin needs a square matrix");
    return drazin(a, tol).d_inverse;
  }
  if (kind == "bd" || kind == "bdd") {
    if (!l_span) fail(ErrorCode::invalid_argument, kind + " needs a subspace");
    const Subspace<T> l = Subspace<T>::span(as_backend<T>(l_span->value), tol);
    return kind == "bd" ? bott_duffin(a, l, tol) : bdd_inverse(a, l, tol);
  }
  fail(ErrorCode::invalid_argument, "kind must be mp, drazin, bd or bdd, got \"" + kind + "\"");
}

// ---- verify ----------------------------------------------------------------

template <class T>
ginv_status verify(Suite suite, const ginv_matrix* a, const ginv_matrix* l_span,
                   const ginv_matrix* candidate, const ginv_options& o, char** report_json) {
  const SuiteOptions opts = suite_options(o, suite);
  VerificationReport<T> report("");
  if (a) {
    Instance inst{"input", "file", o.seed, a->value, l_span->value};
    if (candidate) {
      report = run_candidate<T>(inst, as_backend<T>(candidate->value), opts);
    } else {
      report = run_instance<T>(inst, opts);
    }
  } else {
    report = run_corpus<T>(corpus(o.seed, o.count), opts);
  }
  json j = report_to_json(report);
  j["suite"] = suite_name(suite);
  j["backend"] = backend_name(ScalarTraits<T>::backend);
  j["seed"] = o.seed;
  if (!a) j["count"] = o.count;
  *report_json = dup_string(j.dump(2));
  return report.ok() ? GINV_OK : GINV_PROPERTY_FAILURE;
}

// ---- solve -----------------------------------------------------------------

template <class T>
ginv_status solve(const std::string& mode, const ginv_matrix* a, const ginv_matrix* l_span,
                  const ginv_matrix* rhs, const ginv_matrix* pnorm, const ginv_options& o,
                  char** result_json) {
  const double tol = o.tol;
  const BddContext<T> ctx =
      BddContext<T>::build(as_backend<T>(a->value),
                           Subspace<T>::span(as_backend<T>(l_span->value), tol), tol);
  const Matrix<T> b = as_backend<T>(rhs->value);
  if (b.rows() != ctx.n() || b.cols() != 1) {
    fail(ErrorCode::invalid_argument, "rhs must be a " + std::to_string(ctx.n()) + "x1 column");
  }
  json out{{"mode", mode}, {"backend", backend_name(ScalarTraits<T>::backend)}};
  VerificationReport<T> report("input");

  if (mode == "restricted") {
    const RestrictedSolution<T> s = solve_restricted(ctx, b);
    const Matrix<T>& pl = ctx.p_l();
    const Matrix<T>& plp = ctx.p_lperp();
    auto solves = [&](const Matrix<T>& x, const Matrix<T>& y) {
      return equal(Matrix<T>(ctx.a() * x + y), b, tol) && equal(Matrix<T>(pl * x), x, tol) &&
             equal(Matrix<T>(plp * y), y, tol);
    };
    report.check("Ax+y=beta, x in L, y in L^perp", solves(s.x_particular, s.y_particular),
                 hstack(s.x_particular, s.y_particular));
    for (std::size_t i = 0; i < o.samples; ++i) {
      const Matrix<T> u = random_integer_matrix<T>(ctx.n(), 1, derive_seed(o.seed, i));
      const Matrix<T> x = s.x_particular + s.family_generator * u;
      const Matrix<T> y = s.y_particular + s.y_family_generator * u;
      if (!solves(x, y)) {
        report.fail("family member solves the system", "sample " + std::to_string(i), hstack(x, y));
        break;
      }
      if (i + 1 == o.samples) {
        report.pass("family member solves the system", std::to_string(o.samples) + " samples");
      }
    }
    out["x"] = matrix_to_json(s.x_particular);
    out["y"] = matrix_to_json(s.y_particular);
    out["family_generator"] = matrix_to_json(s.family_generator);
    out["y_family_generator"] = matrix_to_json(s.y_family_generator);
    out["unique"] = s.unique;
  } else if (mode == "constrained" || mode == "cramer") {
    const ConstrainedSolution<T> s = solve_constrained(ctx, b);
    Matrix<T> x = s.x_min;
    if (mode == "cramer") {
      x = cramer_min_p_norm(ctx, b);
      report.check("Cramer solution equals A_(L)^(D) b", equal(x, s.x_min, tol), Matrix<T>(x - s.x_min));
    }
    if (pnorm && (pnorm->value.rows() != ctx.n() || pnorm->value.cols() != ctx.n())) {
      fail(ErrorCode::invalid_argument, "P must be " + ctx.a().shape());
    }
    const PNorm<T> p = pnorm ? PNorm<T>::from_matrix(as_backend<T>(pnorm->value), tol)
                             : default_pnorm(ctx);
    report.note("pnorm source", p.source);
    if (o.samples > 0) report.append(min_p_norm_certify(ctx, b, p, o.samples, o.seed));
    out["x"] = matrix_to_json(x);
    out["family_generator"] = matrix_to_json(s.family_generator);
    out["pnorm"] = matrix_to_json(p.p);
  } else {
    fail(ErrorCode::invalid_argument,
         "mode must be restricted, constrained or cramer, got \"" + mode + "\"");
  }
  out["report"] = report_to_json(report);
  *result_json = dup_string(out.dump(2));
  return report.ok() ? GINV_OK : GINV_PROPERTY_FAILURE;
}

}  // namespace

extern "C" {

const char* ginv_version(void) { return "1.0.0"; }

const char* ginv_last_error(void) { return g_last_error.c_str(); }

const char* ginv_status_name(ginv_status status) {
  switch (status) {
    case GINV_OK: return "ok";
    case GINV_PROPERTY_FAILURE: return "property_failure";
    case GINV_INCONSISTENT: return "inconsistent";
    case GINV_PRECONDITION: return "precondition";
    case GINV_RANK_AMBIGUITY: return "rank_ambiguity";
    case GINV_INVALID_ARGUMENT: return "invalid_argument";
    case GINV_PARSE_ERROR: return "parse_error";
    case GINV_INTERNAL_ERROR: return "internal_error";
  }
  return "unknown";
}

void ginv_options_init(ginv_options* options) {
  if (!options) return;
  options->backend = GINV_BACKEND_EXACT;
  options->tol = kDefaultTol;
  options->seed = 0;
  options->count = 100;
  options->samples = 100;
  options->threads = 1;
}

ginv_status ginv_matrix_parse(const char* json_text, ginv_matrix** out) {
  return guarded([&] {
    require(json_text, "json_text");
    require(out, "out");
    MatrixFile f = parse_matrix_text(json_text);
    *out = make_handle(f.backend, std::move(f.matrix));
    return GINV_OK;
  });
}

ginv_status ginv_matrix_load(const char* path, ginv_matrix** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    MatrixFile f = load_matrix(path);
    *out = make_handle(f.backend, std::move(f.matrix));
    return GINV_OK;
  });
}

ginv_status ginv_matrix_from_strings(size_t rows, size_t cols, const char* const* entries,
                                     ginv_matrix** out) {
  return guarded([&] {
    require(out, "out");
    if (rows * cols > 0) require(entries, "entries");
    RMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        const char* e = entries[i * cols + j];
        require(e, "entry");
        m(i, j) = Rational::parse_real(e);
      }
    }
    *out = make_handle(Backend::exact, std::move(m));
    return GINV_OK;
  });
}

ginv_status ginv_matrix_to_json(const ginv_matrix* m, char** out) {
  return guarded([&] {
    require(m, "matrix");
    require(out, "out");
    const json j = m->backend == Backend::exact ? matrix_to_json(m->value)
                                                : matrix_to_json(as_backend<Complex>(m->value));
    *out = dup_string(j.dump());
    return GINV_OK;
  });
}

ginv_status ginv_matrix_save(const ginv_matrix* m, const char* path) {
  return guarded([&] {
    require(m, "matrix");
    require(path, "path");
    const json j = m->backend == Backend::exact ? matrix_to_json(m->value)
                                                : matrix_to_json(as_backend<Complex>(m->value));
    write_file(path, j.dump(2) + "\n");
    return GINV_OK;
  });
}

ginv_status ginv_matrix_shape(const ginv_matrix* m, size_t* rows, size_t* cols) {
  return guarded([&] {
    require(m, "matrix");
    if (rows) *rows = m->value.rows();
    if (cols) *cols = m->value.cols();
    return GINV_OK;
  });
}

ginv_status ginv_matrix_backend(const ginv_matrix* m, ginv_backend* out) {
  return guarded([&] {
    require(m, "matrix");
    require(out, "out");
    *out = m->backend == Backend::exact ? GINV_BACKEND_EXACT : GINV_BACKEND_F64;
    return GINV_OK;
  });
}

ginv_status ginv_matrix_convert(const ginv_matrix* m, ginv_backend backend, ginv_matrix** out) {
  return guarded([&] {
    require(m, "matrix");
    require(out, "out");
    if (backend == GINV_BACKEND_EXACT) {
      *out = make_handle(Backend::exact, m->value);
    } else if (backend == GINV_BACKEND_F64) {
      // Round every entry to double precision.
      *out = make_handle(as_backend<Complex>(m->value));
    } else {
      fail(ErrorCode::invalid_argument, "unknown backend");
    }
    return GINV_OK;
  });
}

ginv_status ginv_matrix_equal(const ginv_matrix* a, const ginv_matrix* b, double tol, int* out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    if (a->backend == Backend::exact && b->backend == Backend::exact) {
      *out = a->value == b->value;
    } else {
      *out = equal(as_backend<Complex>(a->value), as_backend<Complex>(b->value),
                   tol > 0.0 ? tol : kDefaultTol);
    }
    return GINV_OK;
  });
}

void ginv_matrix_free(ginv_matrix* m) { delete m; }

void ginv_string_free(char* s) { std::free(s); }

ginv_status ginv_compute(const char* kind, const ginv_matrix* a, const ginv_matrix* l_span,
                         const ginv_options* options, ginv_matrix** out) {
  return guarded([&] {
    require(kind, "kind");
    require(a, "matrix");
    require(out, "out");
    const ginv_options o = resolved(options);
    if (o.backend == GINV_BACKEND_EXACT) {
      *out = make_handle(compute<Rational>(kind, a->value, l_span, o.tol));
    } else {
      *out = make_handle(compute<Complex>(kind, a->value, l_span, o.tol));
    }
    return GINV_OK;
  });
}

ginv_status ginv_verify(const char* suite, const ginv_matrix* a, const ginv_matrix* l_span,
                        const ginv_matrix* candidate, const ginv_options* options,
                        char** report_json) {
  return guarded([&] {
    require(suite, "suite");
    require(report_json, "report_json");
    *report_json = nullptr;
    const Suite s = parse_suite(suite);
    if ((a == nullptr) != (l_span == nullptr)) {
      fail(ErrorCode::invalid_argument, "a matrix and a subspace must be given together");
    }
    if (candidate && !a) fail(ErrorCode::invalid_argument, "a candidate needs a matrix and subspace");
    if (candidate && s != Suite::thm4) {
      fail(ErrorCode::invalid_argument, "a candidate is only meaningful for suite thm4");
    }
    const ginv_options o = resolved(options);
    return o.backend == GINV_BACKEND_EXACT ? verify<Rational>(s, a, l_span, candidate, o, report_json)
                                           : verify<Complex>(s, a, l_span, candidate, o, report_json);
  });
}

ginv_status ginv_solve(const char* mode, const ginv_matrix* a, const ginv_matrix* l_span,
                       const ginv_matrix* rhs, const ginv_matrix* pnorm,
                       const ginv_options* options, char** result_json) {
  return guarded([&] {
    require(mode, "mode");
    require(a, "matrix");
    require(l_span, "subspace");
    require(rhs, "rhs");
    require(result_json, "result_json");
    *result_json = nullptr;
    const ginv_options o = resolved(options);
    return o.backend == GINV_BACKEND_EXACT
               ? solve<Rational>(mode, a, l_span, rhs, pnorm, o, result_json)
               : solve<Complex>(mode, a, l_span, rhs, pnorm, o, result_json);
  });
}

}  // extern "C"
