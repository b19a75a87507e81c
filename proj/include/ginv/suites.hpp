#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ginv/bdd.hpp"
#include "ginv/report.hpp"

namespace ginv {

enum class Suite { thm31, thm32, thm4, thm5, lemmas, thm6, all };

/// "thm31", ..., "all"; ErrorCode::invalid_argument otherwise.
Suite parse_suite(std::string_view name);
const char* suite_name(Suite s) noexcept;

/// One (A, L) test instance; L is the column space of `l_span`. Always held exactly.
struct Instance {
  std::string name;
  std::string kind;
  std::uint64_t seed = 0;
  RMatrix a;
  RMatrix l_span;
};

Instance example_41();
Instance example_51();
/// A = I with a proper L: the index pattern excluded by the index theorem at k = 1.
Instance identity_witness();

/// Seeded random instance: n in {2..6}, entries in {-3..3}, L a coordinate,
/// real or Gaussian-integer column space.
Instance random_instance(std::uint64_t seed, std::size_t index);
/// The three fixed instances followed by `count` random ones.
std::vector<Instance> corpus(std::uint64_t seed, std::size_t count, bool with_fixtures = true);

struct SuiteOptions {
  Suite suite = Suite::all;
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  std::size_t perturbations = 50;  // rank-equation uniqueness
  std::size_t samples = 100;       // P-norm certificate
  std::size_t threads = 1;
};

/// Runs `opts.suite` on one instance. Errors raised by the library are
/// recorded as failures rather than propagated.
template <class T>
VerificationReport<T> run_instance(const Instance& inst, const SuiteOptions& opts);

/// Runs every instance (in parallel when opts.threads > 1) and merges the
/// reports in instance order.
template <class T>
VerificationReport<T> run_corpus(const std::vector<Instance>& instances, const SuiteOptions& opts);

/// Candidate mode for the characterization theorems: each criterion entry
/// passes iff its verdict agrees with (x == A_(L)^(D)). Verdicts and the two
/// projector identities are recorded as facts.
template <class T>
VerificationReport<T> run_candidate(const Instance& inst, const Matrix<T>& x,
                                    const SuiteOptions& opts);

/// Individual suites on a prepared context.
template <class T>
void suite_thm31(const BddContext<T>& ctx, VerificationReport<T>& r);
template <class T>
void suite_thm32(const BddContext<T>& ctx, VerificationReport<T>& r);
template <class T>
void suite_thm4(const BddContext<T>& ctx, const SuiteOptions& opts, VerificationReport<T>& r);
template <class T>
void suite_thm5(const BddContext<T>& ctx, const SuiteOptions& opts, VerificationReport<T>& r);
template <class T>
void suite_lemmas(const BddContext<T>& ctx, const SuiteOptions& opts, VerificationReport<T>& r);
template <class T>
void suite_thm6(const BddContext<T>& ctx, const SuiteOptions& opts, VerificationReport<T>& r);

}  // namespace ginv
