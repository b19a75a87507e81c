// Command-line front end. Talks to the library only through the C API.
//
// Exit codes: 0 ok, 1 property failure, 2 inconsistent system, 3 precondition
// or bad input, 4 float rank ambiguity.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "ginv/ginv.h"

namespace {

struct MatrixDeleter {
  void operator()(ginv_matrix* m) const { ginv_matrix_free(m); }
};
using MatrixPtr = std::unique_ptr<ginv_matrix, MatrixDeleter>;

struct StringDeleter {
  void operator()(char* s) const { ginv_string_free(s); }
};
using StringPtr = std::unique_ptr<char, StringDeleter>;

int exit_code(ginv_status s) {
  switch (s) {
    case GINV_OK:
    case GINV_PROPERTY_FAILURE:
    case GINV_INCONSISTENT:
    case GINV_PRECONDITION:
    case GINV_RANK_AMBIGUITY:
      return static_cast<int>(s);
    case GINV_INVALID_ARGUMENT:
    case GINV_PARSE_ERROR:
      return 3;
    case GINV_INTERNAL_ERROR:
      return 1;
  }
  return 1;
}

// Carries a status out of a command after the message has been printed.
struct Exit {
  int code;
};

[[noreturn]] void die(ginv_status s, const std::string& context) {
  std::cerr << "ginv: " << context << ": " << ginv_last_error() << " [" << ginv_status_name(s)
            << "]\n";
  throw Exit{exit_code(s)};
}

void check(ginv_status s, const std::string& context) {
  if (s != GINV_OK) die(s, context);
}

MatrixPtr load(const std::string& path, const char* what) {
  ginv_matrix* m = nullptr;
  check(ginv_matrix_load(path.c_str(), &m), std::string("reading ") + what);
  return MatrixPtr(m);
}

MatrixPtr load_optional(const std::string& path, const char* what) {
  return path.empty() ? MatrixPtr() : load(path, what);
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f || !(f << text << '\n')) {
    std::cerr << "ginv: cannot write " << out << '\n';
    throw Exit{3};
  }
}

struct Common {
  std::string backend = "exact";
  double tol = 0.0;
  std::uint64_t seed = 0;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--backend", c.backend, "exact or f64")
      ->check(CLI::IsMember({"exact", "f64"}))
      ->capture_default_str();
  cmd->add_option("--tol", c.tol, "float tolerance (default 1e-10)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", c.seed, "seed for random instances and samples")->capture_default_str();
  cmd->add_option("--out", c.out, "write the result here instead of stdout");
}

ginv_options options_from(const Common& c) {
  ginv_options o;
  ginv_options_init(&o);
  o.backend = c.backend == "f64" ? GINV_BACKEND_F64 : GINV_BACKEND_EXACT;
  o.tol = c.tol;
  o.seed = c.seed;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized inverses with respect to a subspace: compute, verify, solve"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ginv_version());

  Common common;
  std::string matrix_path, subspace_path, candidate_path, rhs_path, pnorm_path;
  std::string kind, suite, mode;
  std::size_t count = 100, samples = 100, threads = 1;

  CLI::App* compute = app.add_subcommand("compute", "compute mp, drazin, bd or bdd");
  compute->add_option("kind", kind, "mp | drazin | bd | bdd")
      ->required()
      ->check(CLI::IsMember({"mp", "drazin", "bd", "bdd"}));
  compute->add_option("--matrix", matrix_path, "matrix file")->required();
  compute->add_option("--subspace", subspace_path, "matrix file whose columns span L");
  add_common(compute, common);

  CLI::App* verify = app.add_subcommand("verify", "run a property suite");
  verify->add_option("suite", suite, "thm31 | thm32 | thm4 | thm5 | lemmas | thm6 | all")
      ->required()
      ->check(CLI::IsMember({"thm31", "thm32", "thm4", "thm5", "lemmas", "thm6", "all"}));
  verify->add_option("--matrix", matrix_path, "fixed instance matrix");
  verify->add_option("--subspace", subspace_path, "fixed instance subspace");
  verify->add_option("--candidate", candidate_path, "candidate inverse (thm4 only)");
  verify->add_option("--count", count, "random instances when no matrix is given")
      ->capture_default_str();
  verify->add_option("--samples", samples, "P-norm samples per instance")->capture_default_str();
  verify->add_flag("--parallel{0}", threads,
                   "evaluate instances concurrently; --parallel=N fixes the thread count");
  add_common(verify, common);

  CLI::App* solve = app.add_subcommand("solve", "solve a constrained linear system");
  solve->add_option("mode", mode, "restricted | constrained | cramer")
      ->required()
      ->check(CLI::IsMember({"restricted", "constrained", "cramer"}));
  solve->add_option("--matrix", matrix_path, "matrix file")->required();
  solve->add_option("--subspace", subspace_path, "matrix file whose columns span L")->required();
  solve->add_option("--rhs", rhs_path, "right-hand side column")->required();
  solve->add_option("--pnorm", pnorm_path, "nonsingular P for the P-norm");
  solve->add_option("--samples", samples, "family / P-norm samples")->capture_default_str();
  add_common(solve, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  try {
    ginv_options opts = options_from(common);
    if (*compute) {
      MatrixPtr a = load(matrix_path, "--matrix");
      MatrixPtr l = load_optional(subspace_path, "--subspace");
      ginv_matrix* result = nullptr;
      check(ginv_compute(kind.c_str(), a.get(), l.get(), &opts, &result), "compute " + kind);
      MatrixPtr r(result);
      char* text = nullptr;
      check(ginv_matrix_to_json(r.get(), &text), "serializing the result");
      emit(StringPtr(text).get(), common.out);
      return 0;
    }
    if (*verify) {
      opts.count = count;
      opts.samples = samples;
      opts.threads = threads;
      MatrixPtr a = load_optional(matrix_path, "--matrix");
      MatrixPtr l = load_optional(subspace_path, "--subspace");
      MatrixPtr x = load_optional(candidate_path, "--candidate");
      char* report = nullptr;
      const ginv_status s = ginv_verify(suite.c_str(), a.get(), l.get(), x.get(), &opts, &report);
      if (!report) die(s, "verify " + suite);
      emit(StringPtr(report).get(), common.out);
      if (s != GINV_OK) std::cerr << "ginv: verify " << suite << ": property failures\n";
      return exit_code(s);
    }
    if (*solve) {
      opts.samples = samples;
      MatrixPtr a = load(matrix_path, "--matrix");
      MatrixPtr l = load(subspace_path, "--subspace");
      MatrixPtr b = load(rhs_path, "--rhs");
      MatrixPtr p = load_optional(pnorm_path, "--pnorm");
      char* result = nullptr;
      const ginv_status s =
          ginv_solve(mode.c_str(), a.get(), l.get(), b.get(), p.get(), &opts, &result);
      if (!result) die(s, "solve " + mode);
      emit(StringPtr(result).get(), common.out);
      if (s != GINV_OK) std::cerr << "ginv: solve " << mode << ": verification failures\n";
      return exit_code(s);
    }
  } catch (const Exit& e) {
    return e.code;
  }
  return 0;
}
