#include "lazy_spectra/data_matrix.hpp"

#include <cmath>

#include "lazy_spectra/errors.hpp"

namespace lazy_spectra {

DataMatrix::DataMatrix(RowMatrix values) : values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() < 1) throw DimensionError("data matrix must be non-empty");
  if (!values_.allFinite()) throw ValueError("data matrix has non-finite entries");
}

DataMatrix::DataMatrix(Index rows, Index cols, std::vector<double> row_major) {
  if (rows < 1 || cols < 1) throw DimensionError("data matrix must be non-empty");
  if (static_cast<Index>(row_major.size()) != rows * cols) throw DimensionError("data size does not match shape");
  values_ = Eigen::Map<RowMatrix>(row_major.data(), rows, cols);
  if (!values_.allFinite()) throw ValueError("data matrix has non-finite entries");
}

void DataMatrix::times(const Vector& v, Vector& out) const {
  if (v.size() != cols()) throw DimensionError("X v: dimension mismatch");
  out.resize(rows());
  kernels::gemv(view(), v.data(), out.data());
}

void DataMatrix::transpose_times(const Vector& u, Vector& out) const {
  if (u.size() != rows()) throw DimensionError("X^T u: dimension mismatch");
  out.resize(cols());
  kernels::gemv_t(view(), u.data(), out.data());
}

Vector DataMatrix::times(const Vector& v) const {
  Vector out;
  times(v, out);
  return out;
}

Vector DataMatrix::transpose_times(const Vector& u) const {
  Vector out;
  transpose_times(u, out);
  return out;
}

Vector DataMatrix::row_norms_squared() const { return values_.rowwise().squaredNorm(); }

DataMatrix DataMatrix::scaled(double c) const { return DataMatrix(RowMatrix(values_ * c)); }

}  // namespace lazy_spectra
