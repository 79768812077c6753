#include "lazy_spectra/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

#include "lazy_spectra/errors.hpp"

namespace lazy_spectra {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_index(std::string_view s, long long& out) {
  s = trim(s);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::ifstream open_input(const std::string& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
void put_le(std::ostream& out, T value) {
  unsigned char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
bool get_le(std::istream& in, T& value) {
  unsigned char buf[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(T))) return false;
  if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
  std::memcpy(&value, buf, sizeof(T));
  return true;
}

}  // namespace

SymmetricMatrix load_matrix_market(const std::string& path) {
  auto in = open_input(path);
  std::string line;
  std::size_t lineno = 0;

  if (!std::getline(in, line)) throw FormatError("empty Matrix Market file", 1);
  ++lineno;
  const auto header = split_ws(line);
  if (header.size() < 5 || lower(std::string(header[0])) != "%%matrixmarket") {
    throw FormatError("missing %%MatrixMarket header", lineno);
  }
  const std::string object = lower(std::string(header[1]));
  const std::string layout = lower(std::string(header[2]));
  const std::string field = lower(std::string(header[3]));
  const std::string symmetry = lower(std::string(header[4]));
  if (object != "matrix" || layout != "coordinate") throw FormatError("only coordinate matrices are supported", lineno);
  if (field != "real" && field != "integer" && field != "double" && field != "pattern") {
    throw FormatError("unsupported field '" + field + "'", lineno);
  }
  if (symmetry != "symmetric" && symmetry != "general") {
    throw FormatError("unsupported symmetry '" + symmetry + "'", lineno);
  }
  const bool pattern = field == "pattern";

  long long rows = -1, cols = -1, nnz = -1;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t.front() == '%') continue;
    const auto f = split_ws(t);
    if (f.size() != 3 || !parse_index(f[0], rows) || !parse_index(f[1], cols) || !parse_index(f[2], nnz)) {
      throw FormatError("malformed size line", lineno);
    }
    break;
  }
  if (rows < 0) throw FormatError("missing size line", lineno);
  if (rows != cols) throw DimensionError("matrix is " + std::to_string(rows) + "x" + std::to_string(cols) + ", not square");
  if (rows < 1 || nnz < 0) throw FormatError("invalid size line", lineno);

  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(nnz));
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t.front() == '%') continue;
    const auto f = split_ws(t);
    long long i = 0, j = 0;
    double v = 1.0;
    if (f.size() != (pattern ? 2u : 3u) || !parse_index(f[0], i) || !parse_index(f[1], j) ||
        (!pattern && !parse_double(f[2], v))) {
      throw FormatError("malformed entry", lineno);
    }
    if (i < 1 || i > rows || j < 1 || j > cols) throw FormatError("entry index out of range", lineno);
    if (!std::isfinite(v)) throw FormatError("non-finite entry", lineno);
    if (static_cast<long long>(entries.size()) >= nnz) throw FormatError("more entries than declared", lineno);
    entries.push_back({i - 1, j - 1, v});
  }
  if (static_cast<long long>(entries.size()) != nnz) {
    throw FormatError("expected " + std::to_string(nnz) + " entries, found " + std::to_string(entries.size()), lineno);
  }
  return SymmetricMatrix::from_triplets(rows, entries, symmetry == "symmetric");
}

void save_matrix_market(const SymmetricMatrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  std::vector<Triplet> lower_entries;
  for (Index i = 0; i < m.dim(); ++i) {
    for (Index p = m.row_ptr()[i]; p < m.row_ptr()[i + 1]; ++p) {
      const Index j = m.col_idx()[p];
      if (j <= i) lower_entries.push_back({i, j, m.values()[p]});
    }
  }
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << m.dim() << ' ' << m.dim() << ' ' << lower_entries.size() << '\n';
  char buf[64];
  for (const auto& t : lower_entries) {
    std::snprintf(buf, sizeof(buf), "%.17g", t.value);
    out << (t.row + 1) << ' ' << (t.col + 1) << ' ' << buf << '\n';
  }
  if (!out) throw InputError("write failed for '" + path + "'");
}

namespace {

DataMatrix load_csv(const std::string& path) {
  auto in = open_input(path);
  std::string line;
  std::size_t lineno = 0;
  std::vector<double> values;
  Index cols = -1;
  Index rows = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty()) continue;
    Index count = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = t.find(',', start);
      const auto field = t.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      double v = 0.0;
      if (!parse_double(field, v)) throw FormatError("unparseable value '" + std::string(trim(field)) + "'", lineno);
      if (!std::isfinite(v)) throw ValueError("line " + std::to_string(lineno) + ": non-finite value");
      values.push_back(v);
      ++count;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (cols < 0) cols = count;
    if (count != cols) {
      throw FormatError("ragged row: expected " + std::to_string(cols) + " fields, found " + std::to_string(count),
                        lineno);
    }
    ++rows;
  }
  if (rows == 0) throw FormatError("empty dataset '" + path + "'");
  return DataMatrix(rows, cols, std::move(values));
}

DataMatrix load_binary(const std::string& path) {
  auto in = open_input(path, std::ios::in | std::ios::binary);
  char magic[8];
  if (!in.read(magic, 8) || std::memcmp(magic, kBinaryMagic, 8) != 0) throw FormatError("bad binary magic in '" + path + "'");
  std::uint64_t rows = 0, cols = 0;
  if (!get_le(in, rows) || !get_le(in, cols)) throw FormatError("truncated binary header");
  if (rows == 0 || cols == 0) throw FormatError("empty dataset '" + path + "'");
  std::vector<double> values(rows * cols);
  for (auto& v : values) {
    if (!get_le(in, v)) throw FormatError("truncated binary payload");
    if (!std::isfinite(v)) throw ValueError("non-finite value in '" + path + "'");
  }
  return DataMatrix(static_cast<Index>(rows), static_cast<Index>(cols), std::move(values));
}

}  // namespace

DataMatrix load_dataset(const std::string& path, DatasetFormat format) {
  return format == DatasetFormat::csv ? load_csv(path) : load_binary(path);
}

DataMatrix load_dataset(const std::string& path) {
  auto in = open_input(path, std::ios::in | std::ios::binary);
  char magic[8] = {};
  in.read(magic, 8);
  const bool binary = in.gcount() == 8 && std::memcmp(magic, kBinaryMagic, 8) == 0;
  return load_dataset(path, binary ? DatasetFormat::binary : DatasetFormat::csv);
}

void save_dataset(const DataMatrix& x, const std::string& path, DatasetFormat format) {
  std::ofstream out(path, format == DatasetFormat::binary ? std::ios::out | std::ios::binary : std::ios::out);
  if (!out) throw InputError("cannot write '" + path + "'");
  if (format == DatasetFormat::binary) {
    out.write(kBinaryMagic, 8);
    put_le<std::uint64_t>(out, static_cast<std::uint64_t>(x.rows()));
    put_le<std::uint64_t>(out, static_cast<std::uint64_t>(x.cols()));
    for (Index i = 0; i < x.rows(); ++i)
      for (Index j = 0; j < x.cols(); ++j) put_le(out, x(i, j));
  } else {
    char buf[64];
    for (Index i = 0; i < x.rows(); ++i) {
      for (Index j = 0; j < x.cols(); ++j) {
        std::snprintf(buf, sizeof(buf), "%.17g", x(i, j));
        if (j) out << ',';
        out << buf;
      }
      out << '\n';
    }
  }
  if (!out) throw InputError("write failed for '" + path + "'");
}

void save_dense_binary(const DenseMatrix& m, const std::string& path) {
  save_dataset(DataMatrix(RowMatrix(m)), path, DatasetFormat::binary);
}

DenseMatrix load_dense_binary(const std::string& path) {
  return DenseMatrix(load_dataset(path, DatasetFormat::binary).values());
}

}  // namespace lazy_spectra
