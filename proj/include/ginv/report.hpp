#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ginv/matrix.hpp"

namespace ginv {

enum class CheckStatus { pass, fail, skipped };

const char* to_string(CheckStatus s) noexcept;

template <class T>
struct CheckResult {
  std::string id;
  std::string instance;
  CheckStatus status = CheckStatus::pass;
  std::string detail;
  std::optional<Matrix<T>> witness;  // always set for failures
};

/// Ordered list of property outcomes for one instance (or a merged corpus).
template <class T>
class VerificationReport {
 public:
  VerificationReport() = default;
  explicit VerificationReport(std::string instance) : instance_(std::move(instance)) {}

  const std::string& instance() const noexcept { return instance_; }
  void set_instance(std::string s) { instance_ = std::move(s); }
  const std::vector<CheckResult<T>>& entries() const noexcept { return entries_; }

  void pass(std::string id, std::string detail = {}) {
    entries_.push_back({std::move(id), instance_, CheckStatus::pass, std::move(detail), std::nullopt});
  }
  void skip(std::string id, std::string reason) {
    entries_.push_back({std::move(id), instance_, CheckStatus::skipped, std::move(reason), std::nullopt});
  }
  void fail(std::string id, std::string detail, Matrix<T> witness) {
    entries_.push_back({std::move(id), instance_, CheckStatus::fail, std::move(detail), std::move(witness)});
  }
  /// Records pass or fail; `witness` is kept only on failure.
  void check(std::string id, bool ok, const Matrix<T>& witness, std::string detail = {}) {
    if (ok) {
      pass(std::move(id), std::move(detail));
    } else {
      fail(std::move(id), std::move(detail), witness);
    }
  }

  /// Informational observation that is neither a pass nor a failure.
  void note(std::string key, std::string value) {
    facts_.emplace_back(std::move(key), std::move(value));
  }
  const std::vector<std::pair<std::string, std::string>>& facts() const noexcept { return facts_; }

  /// Appends the entries of `other`; entries without an instance tag inherit
  /// `other.instance()`.
  void append(const VerificationReport& other) {
    for (auto e : other.entries_) {
      if (e.instance.empty()) e.instance = other.instance_;
      entries_.push_back(std::move(e));
    }
    for (const auto& f : other.facts_) {
      facts_.emplace_back(other.instance_.empty() ? f.first : other.instance_ + ": " + f.first,
                          f.second);
    }
  }

  std::size_t count(CheckStatus s) const {
    std::size_t n = 0;
    for (const auto& e : entries_) n += e.status == s ? 1 : 0;
    return n;
  }
  std::size_t passed() const { return count(CheckStatus::pass); }
  std::size_t failed() const { return count(CheckStatus::fail); }
  std::size_t skipped() const { return count(CheckStatus::skipped); }
  bool ok() const { return failed() == 0; }

 private:
  std::string instance_;
  std::vector<CheckResult<T>> entries_;
  std::vector<std::pair<std::string, std::string>> facts_;
};

inline const char* to_string(CheckStatus s) noexcept {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::skipped:
      return "skipped";
  }
  return "unknown";
}

}  // namespace ginv
