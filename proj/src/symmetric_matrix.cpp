#include "lazy_spectra/symmetric_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lazy_spectra/errors.hpp"

namespace lazy_spectra {

SymmetricMatrix SymmetricMatrix::from_triplets(Index dim, const std::vector<Triplet>& entries, bool mirrored) {
  if (dim < 1) throw DimensionError("matrix dimension must be positive");
  std::vector<Triplet> all;
  all.reserve(entries.size() * (mirrored ? 2 : 1));
  for (const auto& t : entries) {
    if (t.row < 0 || t.row >= dim || t.col < 0 || t.col >= dim) {
      throw DimensionError("entry (" + std::to_string(t.row + 1) + "," + std::to_string(t.col + 1) +
                           ") outside a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
    }
    if (!std::isfinite(t.value)) throw ValueError("non-finite matrix entry");
    all.push_back(t);
    if (mirrored && t.row != t.col) all.push_back({t.col, t.row, t.value});
  }
  std::stable_sort(all.begin(), all.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  SymmetricMatrix m;
  m.dim_ = dim;
  m.row_ptr_.assign(static_cast<std::size_t>(dim + 1), 0);
  for (std::size_t p = 0; p < all.size();) {
    std::size_t q = p;
    double sum = 0.0;
    while (q < all.size() && all[q].row == all[p].row && all[q].col == all[p].col) sum += all[q++].value;
    m.col_idx_.push_back(all[p].col);
    m.values_.push_back(sum);
    m.row_ptr_[static_cast<std::size_t>(all[p].row + 1)]++;
    p = q;
  }
  for (Index i = 0; i < dim; ++i) m.row_ptr_[i + 1] += m.row_ptr_[i];

  if (!mirrored) {
    for (Index i = 0; i < dim; ++i) {
      for (Index p = m.row_ptr_[i]; p < m.row_ptr_[i + 1]; ++p) {
        const Index j = m.col_idx_[p];
        if (j != i && m.entry(j, i) != m.values_[p]) {
          throw FormatError("matrix is not symmetric at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                            ")");
        }
      }
    }
  }
  return m;
}

SymmetricMatrix SymmetricMatrix::from_dense(const DenseMatrix& d, double drop_tol) {
  if (d.rows() != d.cols()) throw DimensionError("dense matrix is not square");
  std::vector<Triplet> t;
  for (Index i = 0; i < d.rows(); ++i) {
    for (Index j = 0; j <= i; ++j) {
      if (d(i, j) != d(j, i)) throw ValueError("dense matrix is not symmetric");
      if (std::abs(d(i, j)) > drop_tol) t.push_back({i, j, d(i, j)});
    }
  }
  return from_triplets(d.rows(), t, true);
}

SymmetricMatrix SymmetricMatrix::identity(Index dim) { return diagonal(Vector::Ones(dim)); }

SymmetricMatrix SymmetricMatrix::diagonal(const Vector& diag) {
  std::vector<Triplet> t;
  for (Index i = 0; i < diag.size(); ++i) t.push_back({i, i, diag[i]});
  return from_triplets(diag.size(), t, true);
}

void SymmetricMatrix::apply(const Vector& x, Vector& y) const {
  if (x.size() != dim_) throw DimensionError("matvec dimension mismatch");
  y.resize(dim_);
  kernels::csr_spmv(csr(), x.data(), y.data());
}

double SymmetricMatrix::entry(Index i, Index j) const {
  const auto begin = col_idx_.begin() + row_ptr_[i];
  const auto end = col_idx_.begin() + row_ptr_[i + 1];
  const auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j) return 0.0;
  return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

Vector SymmetricMatrix::diagonal_entries() const {
  Vector d(dim_);
  for (Index i = 0; i < dim_; ++i) d[i] = entry(i, i);
  return d;
}

double SymmetricMatrix::trace() const { return diagonal_entries().sum(); }

double SymmetricMatrix::gershgorin_bound() const {
  double best = 0.0;
  for (Index i = 0; i < dim_; ++i) {
    double s = 0.0;
    for (Index p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) s += std::abs(values_[p]);
    best = std::max(best, s);
  }
  return best;
}

DenseMatrix SymmetricMatrix::to_dense() const {
  DenseMatrix d = DenseMatrix::Zero(dim_, dim_);
  for (Index i = 0; i < dim_; ++i) {
    for (Index p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) d(i, col_idx_[p]) = values_[p];
  }
  return d;
}

SymmetricMatrix SymmetricMatrix::scaled(double c) const {
  SymmetricMatrix m = *this;
  for (auto& v : m.values_) v *= c;
  return m;
}

}  // namespace lazy_spectra
