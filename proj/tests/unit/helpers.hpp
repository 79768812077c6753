#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "lazy_spectra/rng.hpp"
#include "lazy_spectra/types.hpp"

namespace test_util {

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("lazy_spectra_unit_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline lazy_spectra::DenseMatrix random_spd(lazy_spectra::Index d, std::uint64_t seed, double shift = 1.0) {
  lazy_spectra::CounterRng rng(seed, 77);
  lazy_spectra::DenseMatrix g(d, d);
  for (lazy_spectra::Index j = 0; j < d; ++j) g.col(j) = rng.gaussian_vector(d);
  lazy_spectra::DenseMatrix m = g * g.transpose() / static_cast<double>(d);
  m = 0.5 * (m + m.transpose()).eval();
  return m + shift * lazy_spectra::DenseMatrix::Identity(d, d);
}

inline lazy_spectra::DenseMatrix random_dense(lazy_spectra::Index rows, lazy_spectra::Index cols, std::uint64_t seed) {
  lazy_spectra::CounterRng rng(seed, 78);
  lazy_spectra::DenseMatrix g(rows, cols);
  for (lazy_spectra::Index j = 0; j < cols; ++j) g.col(j) = rng.gaussian_vector(rows);
  return g;
}

}  // namespace test_util
