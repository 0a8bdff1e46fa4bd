#include "homflow/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace homflow {

ScalarMatrix::ScalarMatrix(std::size_t rows, std::size_t cols, ScalarMode mode)
    : rows_(rows), cols_(cols), mode_(mode), data_(rows * cols, Scalar::zero(mode)) {}

ScalarMatrix ScalarMatrix::from_rows(const std::vector<ScalarVector>& rows, std::size_t cols, ScalarMode mode) {
  ScalarMatrix m(rows.size(), cols, mode);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) {
      if (rows[r][c].mode() != mode) throw ModeMismatch("matrix row has the wrong scalar mode");
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

ScalarVector ScalarMatrix::row(std::size_t r) const {
  return ScalarVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                      data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

ScalarMatrix ScalarMatrix::transposed() const {
  ScalarMatrix t(cols_, rows_, mode_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

std::vector<double> ScalarMatrix::to_doubles() const {
  std::vector<double> out(data_.size());
  for (std::size_t i = 0; i < data_.size(); ++i) out[i] = data_[i].to_double();
  return out;
}

namespace {

using RationalRows = std::vector<std::vector<Rational>>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RationalRows& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t prow = 0;
  for (std::size_t c = 0; c < cols && prow < a.size(); ++c) {
    std::size_t sel = prow;
    while (sel < a.size() && sgn(a[sel][c]) == 0) ++sel;
    if (sel == a.size()) continue;
    std::swap(a[sel], a[prow]);
    Rational inv = 1 / a[prow][c];
    for (auto& v : a[prow]) v *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == prow || sgn(a[r][c]) == 0) continue;
      Rational f = a[r][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[prow][k];
    }
    pivots.push_back(c);
    ++prow;
  }
  return pivots;
}

RationalRows to_rational_rows(const ScalarMatrix& m) {
  RationalRows a(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) a[r][c] = m(r, c).rational();
  return a;
}

Eigen::MatrixXd to_eigen(const ScalarMatrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) e(r, c) = m(r, c).to_double();
  return e;
}

std::size_t svd_rank(const Eigen::MatrixXd& e, double rel_tol) {
  if (e.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(e);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++r;
  return r;
}

}  // namespace

std::size_t rank(const ScalarMatrix& m, double rel_tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if (m.mode() == ScalarMode::exact) {
    auto a = to_rational_rows(m);
    return rref(a, m.cols()).size();
  }
  return svd_rank(to_eigen(m), rel_tol);
}

std::vector<ScalarVector> kernel(const ScalarMatrix& m, double rel_tol) {
  const std::size_t n = m.cols();
  std::vector<ScalarVector> basis;
  if (m.mode() == ScalarMode::exact) {
    auto a = to_rational_rows(m);
    auto pivots = rref(a, n);
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots) is_pivot[c] = true;
    for (std::size_t free = 0; free < n; ++free) {
      if (is_pivot[free]) continue;
      ScalarVector v(n, Scalar::zero(ScalarMode::exact));
      v[free] = Scalar::one(ScalarMode::exact);
      for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = Scalar(Rational(-a[i][free]));
      basis.push_back(std::move(v));
    }
    return basis;
  }
  if (m.rows() == 0) {
    for (std::size_t i = 0; i < n; ++i) {
      ScalarVector v(n, Scalar::zero(ScalarMode::floating));
      v[i] = Scalar::one(ScalarMode::floating);
      basis.push_back(std::move(v));
    }
    return basis;
  }
  Eigen::MatrixXd e = to_eigen(m);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(e, Eigen::ComputeFullV);
  const std::size_t r = svd_rank(e, rel_tol);
  const Eigen::MatrixXd& v = svd.matrixV();
  for (std::size_t k = r; k < n; ++k) {
    ScalarVector col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = Scalar::floating(v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)));
    basis.push_back(std::move(col));
  }
  return basis;
}

std::size_t rank_of_rows(const std::vector<ScalarVector>& rows, std::size_t cols, ScalarMode mode, double rel_tol) {
  return rank(ScalarMatrix::from_rows(rows, cols, mode), rel_tol);
}

std::size_t numeric_rank(const std::vector<double>& row_major, std::size_t rows, std::size_t cols, double rel_tol) {
  Eigen::MatrixXd e(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) e(r, c) = row_major[r * cols + c];
  return svd_rank(e, rel_tol);
}

}  // namespace homflow
