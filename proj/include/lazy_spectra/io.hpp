#pragma once

#include <string>

#include "lazy_spectra/data_matrix.hpp"
#include "lazy_spectra/symmetric_matrix.hpp"

namespace lazy_spectra {

enum class DatasetFormat { csv, binary };

// Matrix Market coordinate files, field real/integer/pattern, symmetry
// symmetric or general (general must actually be symmetric).
SymmetricMatrix load_matrix_market(const std::string& path);
// Writes the lower triangle with 17 significant digits (exact round trip).
void save_matrix_market(const SymmetricMatrix& m, const std::string& path);

DataMatrix load_dataset(const std::string& path, DatasetFormat format);
// Picks binary when the file starts with the binary magic, CSV otherwise.
DataMatrix load_dataset(const std::string& path);
void save_dataset(const DataMatrix& x, const std::string& path, DatasetFormat format);

// Dense column-major block (e.g. result vectors) in the binary dataset
// layout, one row per vector entry.
void save_dense_binary(const DenseMatrix& m, const std::string& path);
DenseMatrix load_dense_binary(const std::string& path);

inline constexpr char kBinaryMagic[9] = "LSPECDM1";

}  // namespace lazy_spectra
