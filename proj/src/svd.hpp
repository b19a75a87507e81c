#pragma once

// Float-backend rank decisions through the singular value decomposition.

#include <Eigen/SVD>

#include <algorithm>
#include <cstdio>
#include <string>

#include "ginv/matrix.hpp"

namespace ginv::detail {

inline Eigen::MatrixXcd to_eigen(const Matrix<Complex>& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

inline Matrix<Complex> from_eigen(const Eigen::MatrixXcd& e) {
  Matrix<Complex> m(e.rows(), e.cols());
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

struct Svd {
  Eigen::MatrixXcd u;  // full
  Eigen::VectorXd s;
  Eigen::MatrixXcd v;  // full
  std::size_t rank = 0;
};

/// Singular values below tol * max(1, sigma_max) count as zero; a value inside
/// [tol/8, 8 tol] of that scale is reported as a rank ambiguity.
inline Svd svd(const Matrix<Complex>& a, double tol) {
  Svd r;
  if (a.rows() == 0 || a.cols() == 0) {
    r.u = Eigen::MatrixXcd::Identity(a.rows(), a.rows());
    r.v = Eigen::MatrixXcd::Identity(a.cols(), a.cols());
    return r;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> solver(to_eigen(a), Eigen::ComputeFullU | Eigen::ComputeFullV);
  r.u = solver.matrixU();
  r.v = solver.matrixV();
  r.s = solver.singularValues();
  const double scale = std::max(1.0, r.s.size() ? r.s(0) : 0.0);
  for (Eigen::Index i = 0; i < r.s.size(); ++i) {
    const double rel = r.s(i) / scale;
    if (rel >= tol / 8.0 && rel <= 8.0 * tol) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "rank ambiguity: relative singular value %.3e lies in [%.1e, %.1e]",
                    rel, tol / 8.0, 8.0 * tol);
      fail(ErrorCode::rank_ambiguity, buf);
    }
    if (rel >= tol) ++r.rank;
  }
  return r;
}

}  // namespace ginv::detail
