#pragma once

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "ginv/matrix.hpp"
#include "ginv/report.hpp"

namespace ginv {

using json = nlohmann::json;

/// A parsed matrix file. Entries are held exactly whatever the tag: a float
/// entry is a dyadic rational, so nothing is lost either way.
struct MatrixFile {
  Backend backend = Backend::exact;
  RMatrix matrix;
};

const char* backend_name(Backend b) noexcept;
/// "exact" or "f64"; ErrorCode::parse otherwise.
Backend parse_backend(std::string_view name);

/// Schema: {"rows": r, "cols": c, "backend": "exact"|"f64", "entries": [[...], ...]}.
/// Exact entries are "p/q" strings (or integers), floats are numbers; either
/// may be {"re": ..., "im": ...}. Throws ErrorCode::parse on any violation.
MatrixFile parse_matrix_json(const json& j);
MatrixFile parse_matrix_text(std::string_view text);
MatrixFile load_matrix(const std::filesystem::path& path);

/// Exact matrices serialize as strings; float matrices as numbers.
template <class T>
json matrix_to_json(const Matrix<T>& m);

/// Loads as exact and converts to the requested scalar type.
template <class T>
Matrix<T> as_backend(const RMatrix& m) {
  return matrix_cast<T>(m);
}

/// Short stable fingerprint of a matrix's serialized form.
template <class T>
std::string matrix_hash(const Matrix<T>& m);

template <class T>
json report_to_json(const VerificationReport<T>& r);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

}  // namespace ginv
