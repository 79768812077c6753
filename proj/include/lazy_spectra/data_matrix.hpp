#pragma once

#include <vector>

#include "lazy_spectra/kernels.hpp"
#include "lazy_spectra/types.hpp"

namespace lazy_spectra {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Dense n x d sample matrix, one sample per row.
class DataMatrix {
 public:
  DataMatrix() = default;
  explicit DataMatrix(RowMatrix values);
  DataMatrix(Index rows, Index cols, std::vector<double> row_major);

  Index rows() const { return values_.rows(); }
  Index cols() const { return values_.cols(); }
  const RowMatrix& values() const { return values_; }
  double operator()(Index i, Index j) const { return values_(i, j); }
  const double* row(Index i) const { return values_.data() + i * cols(); }

  Vector times(const Vector& v) const;            // X v, length n
  Vector transpose_times(const Vector& u) const;  // X^T u, length d
  void times(const Vector& v, Vector& out) const;
  void transpose_times(const Vector& u, Vector& out) const;

  Vector row_norms_squared() const;
  DataMatrix scaled(double c) const;

  kernels::RowMajorView view() const { return {rows(), cols(), values_.data()}; }

 private:
  RowMatrix values_;
};

}  // namespace lazy_spectra
