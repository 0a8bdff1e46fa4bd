#pragma once

#include "homflow/scalar.hpp"

#include <cstddef>
#include <vector>

namespace homflow {

/// Relative singular-value cutoff used for numerical rank in floating mode.
inline constexpr double kDefaultRankTolerance = 1e-10;

/// Dense row-major matrix of Scalars; every entry shares one mode.
class ScalarMatrix {
 public:
  ScalarMatrix() = default;
  ScalarMatrix(std::size_t rows, std::size_t cols, ScalarMode mode);
  static ScalarMatrix from_rows(const std::vector<ScalarVector>& rows, std::size_t cols, ScalarMode mode);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  ScalarMode mode() const { return mode_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  ScalarVector row(std::size_t r) const;
  ScalarMatrix transposed() const;
  std::vector<double> to_doubles() const;  // row-major

 private:
  std::size_t rows_ = 0, cols_ = 0;
  ScalarMode mode_ = ScalarMode::exact;
  std::vector<Scalar> data_;
};

/// Rank of M. Exact mode: row reduction over Q. Floating mode: count of
/// singular values above rel_tol * sigma_max.
std::size_t rank(const ScalarMatrix& m, double rel_tol = kDefaultRankTolerance);

/// Basis of the right null space {y : M y = 0}.
std::vector<ScalarVector> kernel(const ScalarMatrix& m, double rel_tol = kDefaultRankTolerance);

/// Rank of the matrix whose rows are the given vectors (all of length cols).
std::size_t rank_of_rows(const std::vector<ScalarVector>& rows, std::size_t cols, ScalarMode mode,
                         double rel_tol = kDefaultRankTolerance);

/// Double-precision helpers used by the numeric layers.
std::size_t numeric_rank(const std::vector<double>& row_major, std::size_t rows, std::size_t cols,
                         double rel_tol = kDefaultRankTolerance);

}  // namespace homflow
