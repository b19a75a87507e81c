#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ginv/error.hpp"
#include "ginv/scalar.hpp"

namespace ginv {

/// Dense row-major matrix with value semantics. Every operation returns a new
/// matrix; a Matrix is never shared mutably between computations.
template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
      fail(ErrorCode::invalid_argument, "entry count does not match dimensions");
    }
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) fail(ErrorCode::invalid_argument, "ragged initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix column(std::span<const T> v) {
    return Matrix(v.size(), 1, std::vector<T>(v.begin(), v.end()));
  }
  /// Standard basis vector e_i (0-based).
  static Matrix unit(std::size_t n, std::size_t i) {
    Matrix m(n, 1);
    m(i, 0) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  std::span<const T> entries() const noexcept { return data_; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) { return exact_zero(x); });
  }

  Matrix col(std::size_t j) const {
    Matrix c(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix conj_transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = conjugate((*this)(i, j));
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o, "add");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o, "sub");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      fail(ErrorCode::invalid_argument, "dimension mismatch in mul: " + a.shape() + " * " +
                                            b.shape());
    }
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (exact_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (exact_zero(b(k, j))) continue;
          c(i, j) += aik * b(k, j);
        }
      }
    }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void require_same_shape(const Matrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      fail(ErrorCode::invalid_argument,
           std::string("dimension mismatch in ") + op + ": " + shape() + " vs " + o.shape());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RMatrix = Matrix<Rational>;
using CMatrix = Matrix<Complex>;

template <class T>
double max_magnitude(const Matrix<T>& a) {
  double m = 0.0;
  for (const auto& x : a.entries()) m = std::max(m, magnitude(x));
  return m;
}

/// Exact equality for the rational backend. For floats:
/// max|a-b| <= tol * max(1, max|a|, max|b|).
template <class T>
bool equal(const Matrix<T>& a, const Matrix<T>& b, double tol = kDefaultTol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if constexpr (is_exact_v<T>) {
    return a == b;
  } else {
    double scale = std::max({1.0, max_magnitude(a), max_magnitude(b)});
    double diff = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k) {
      diff = std::max(diff, magnitude(a.entries()[k] - b.entries()[k]));
    }
    return diff <= tol * scale;
  }
}

template <class To, class From>
Matrix<To> matrix_cast(const Matrix<From>& m) {
  std::vector<To> out;
  out.reserve(m.entries().size());
  for (const auto& x : m.entries()) out.push_back(scalar_cast<To>(x));
  return Matrix<To>(m.rows(), m.cols(), std::move(out));
}

/// [a | b]
template <class T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) fail(ErrorCode::invalid_argument, "hstack: row count mismatch");
  Matrix<T> m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

/// [a ; b]
template <class T>
Matrix<T> vstack(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.cols()) fail(ErrorCode::invalid_argument, "vstack: column count mismatch");
  Matrix<T> m(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, j) = b(i, j);
  return m;
}

/// [[a, b], [c, d]]
template <class T>
Matrix<T> block(const Matrix<T>& a, const Matrix<T>& b, const Matrix<T>& c, const Matrix<T>& d) {
  return vstack(hstack(a, b), hstack(c, d));
}

/// Top-left r x c corner starting at (r0, c0).
template <class T>
Matrix<T> slice(const Matrix<T>& a, std::size_t r0, std::size_t c0, std::size_t r, std::size_t c) {
  if (r0 + r > a.rows() || c0 + c > a.cols()) fail(ErrorCode::invalid_argument, "slice out of range");
  Matrix<T> m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = a(r0 + i, c0 + j);
  return m;
}

}  // namespace ginv
