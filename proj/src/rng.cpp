#include "lowdeg/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lowdeg {

std::uint64_t Rng::uniform(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::uniform: bound must be positive");
  // 2^64 mod bound; values below it would bias the residue.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = engine_();
    if (r >= threshold) return r % bound;
  }
}

bool Rng::bit() {
  if (bits_left_ == 0) {
    bit_word_ = engine_();
    bits_left_ = 64;
  }
  const bool b = bit_word_ & 1u;
  bit_word_ >>= 1;
  --bits_left_;
  return b;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform01();  // (0, 1]
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

std::vector<std::size_t> Rng::permutation(std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = uniform(i);
    std::swap(p[i - 1], p[j]);
  }
  return p;
}

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t derive_subseed(std::uint64_t master_seed, std::uint64_t trial_id,
                             std::string_view label) {
  return mix64(mix64(mix64(master_seed) ^ trial_id) ^ fnv1a(label));
}

}  // namespace lowdeg
