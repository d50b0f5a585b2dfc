#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace lowdeg {

// Every sampler draws from std::mt19937_64, whose output sequence is fixed by
// the standard. Bounded integers and normals are derived here rather than via
// <random> distributions, whose algorithms differ between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, bound), bound > 0. Rejection sampling, no modulo bias.
  std::uint64_t uniform(std::uint64_t bound);

  // Fair bit, consumed from a cached 64-bit word.
  bool bit();

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  // Standard normal via Box-Muller; the second variate is cached.
  double normal();

  // Uniform permutation of 0..n-1 (Fisher-Yates).
  std::vector<std::size_t> permutation(std::size_t n);

 private:
  std::mt19937_64 engine_;
  std::uint64_t bit_word_ = 0;
  int bits_left_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t z);

// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view s);

// Seed for one trial stream: mix64(mix64(mix64(master) ^ trial_id) ^ fnv1a(label)).
std::uint64_t derive_subseed(std::uint64_t master_seed, std::uint64_t trial_id,
                             std::string_view label);

}  // namespace lowdeg
