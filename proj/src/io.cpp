#include "ginv/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace ginv {

namespace {

Rational parse_exact_part(const json& v) {
  if (v.is_string()) return Rational::parse_real(v.get<std::string>());
  if (v.is_number_integer()) return Rational(mpq_class(mpz_class(v.dump())));
  if (v.is_number_float()) return Rational::from_double(v.get<double>());
  fail(ErrorCode::parse, "entry must be a rational string or a number, got " + v.dump());
}

Rational parse_entry(const json& v) {
  if (v.is_object()) {
    for (const auto& [key, _] : v.items()) {
      if (key != "re" && key != "im") fail(ErrorCode::parse, "unknown key in complex entry: " + key);
    }
    Rational re = v.contains("re") ? parse_exact_part(v.at("re")) : Rational(0);
    Rational im = v.contains("im") ? parse_exact_part(v.at("im")) : Rational(0);
    return Rational(re.re(), im.re());
  }
  return parse_exact_part(v);
}

std::size_t parse_dim(const json& j, const char* key) {
  if (!j.contains(key)) fail(ErrorCode::parse, std::string("missing \"") + key + "\"");
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    fail(ErrorCode::parse, std::string("\"") + key + "\" must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

json entry_to_json(const Rational& x) {
  if (x.is_real()) return x.to_string();
  return json{{"re", mpq_class(x.re()).get_str()}, {"im", mpq_class(x.im()).get_str()}};
}

json entry_to_json(const Complex& x) {
  if (x.imag() == 0.0) return x.real();
  return json{{"re", x.real()}, {"im", x.imag()}};
}

}  // namespace

const char* backend_name(Backend b) noexcept { return b == Backend::exact ? "exact" : "f64"; }

Backend parse_backend(std::string_view name) {
  if (name == "exact") return Backend::exact;
  if (name == "f64") return Backend::f64;
  fail(ErrorCode::parse, "backend must be \"exact\" or \"f64\", got \"" + std::string(name) + "\"");
}

MatrixFile parse_matrix_json(const json& j) {
  if (!j.is_object()) fail(ErrorCode::parse, "matrix file must be a JSON object");
  MatrixFile f;
  const std::size_t rows = parse_dim(j, "rows");
  const std::size_t cols = parse_dim(j, "cols");
  if (j.contains("backend")) {
    if (!j.at("backend").is_string()) fail(ErrorCode::parse, "\"backend\" must be a string");
    f.backend = parse_backend(j.at("backend").get<std::string>());
  }
  if (!j.contains("entries") || !j.at("entries").is_array()) {
    fail(ErrorCode::parse, "\"entries\" must be an array of rows");
  }
  const json& e = j.at("entries");
  if (e.size() != rows) {
    fail(ErrorCode::parse, "\"entries\" has " + std::to_string(e.size()) + " rows, expected " +
                               std::to_string(rows));
  }
  RMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = e.at(i);
    if (!row.is_array() || row.size() != cols) {
      fail(ErrorCode::parse, "row " + std::to_string(i + 1) + " must have " +
                                 std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      try {
        m(i, c) = parse_entry(row.at(c));
      } catch (const Error& err) {
        fail(ErrorCode::parse, "entry (" + std::to_string(i + 1) + "," + std::to_string(c + 1) +
                                   "): " + err.what());
      }
    }
  }
  f.matrix = std::move(m);
  return f;
}

MatrixFile parse_matrix_text(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::parse, std::string("invalid JSON: ") + e.what());
  }
  return parse_matrix_json(j);
}

MatrixFile load_matrix(const std::filesystem::path& path) {
  try {
    return parse_matrix_text(read_file(path));
  } catch (const Error& e) {
    fail(e.code(), path.string() + ": " + e.what());
  }
}

template <class T>
json matrix_to_json(const Matrix<T>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(entry_to_json(m(i, c)));
    rows.push_back(std::move(row));
  }
  return json{{"rows", m.rows()},
              {"cols", m.cols()},
              {"backend", backend_name(ScalarTraits<T>::backend)},
              {"entries", std::move(rows)}};
}

template <class T>
std::string matrix_hash(const Matrix<T>& m) {
  // FNV-1a over the canonical serialization.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : matrix_to_json(m).dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

template <class T>
json report_to_json(const VerificationReport<T>& r) {
  json entries = json::array();
  for (const auto& e : r.entries()) {
    json je{{"id", e.id}, {"status", to_string(e.status)}};
    if (!e.instance.empty()) je["instance"] = e.instance;
    if (!e.detail.empty()) je["detail"] = e.detail;
    if (e.witness) je["witness"] = matrix_to_json(*e.witness);
    entries.push_back(std::move(je));
  }
  json facts = json::object();
  for (const auto& [k, v] : r.facts()) facts[k] = v;
  return json{{"summary",
               {{"total", r.entries().size()},
                {"pass", r.passed()},
                {"fail", r.failed()},
                {"skipped", r.skipped()}}},
              {"facts", std::move(facts)},
              {"entries", std::move(entries)}};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::parse, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::invalid_argument, "cannot write " + path.string());
  out << text;
  if (!out) fail(ErrorCode::invalid_argument, "write failed for " + path.string());
}

template json matrix_to_json(const Matrix<Rational>&);
template json matrix_to_json(const Matrix<Complex>&);
template std::string matrix_hash(const Matrix<Rational>&);
template std::string matrix_hash(const Matrix<Complex>&);
template json report_to_json(const VerificationReport<Rational>&);
template json report_to_json(const VerificationReport<Complex>&);

}  // namespace ginv
