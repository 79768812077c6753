#pragma once

#include <cstdint>

#include "lazy_spectra/types.hpp"

namespace lazy_spectra {

// SplitMix64 in counter mode: draw i of a stream is mix(key + i * golden).
// Streams are cheap to fork, which keeps every stochastic stage reproducible
// from a single recorded seed.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed = 0, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  double uniform();                          // [0, 1)
  std::uint64_t uniform_index(std::uint64_t n);  // [0, n)
  double gaussian();
  Vector gaussian_vector(Index n);

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

  // Seed for an independent child stream.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64_mix(std::uint64_t z);

}  // namespace lazy_spectra
