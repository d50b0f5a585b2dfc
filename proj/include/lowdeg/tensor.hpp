#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace lowdeg {

std::uint64_t binomial(std::uint64_t a, std::uint64_t b);

// Bits of a symmetric order-k tensor on [n], one per strictly increasing
// tuple, stored in lexicographic tuple order.
struct SymTensor {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<std::uint64_t> words;

  static SymTensor zeros(std::size_t n, std::size_t k);

  std::size_t size() const { return static_cast<std::size_t>(binomial(n, k)); }
  bool bit(std::size_t idx) const { return (words[idx >> 6] >> (idx & 63)) & 1u; }
  void set_bit(std::size_t idx, bool v) {
    const std::uint64_t m = std::uint64_t{1} << (idx & 63);
    if (v) words[idx >> 6] |= m;
    else words[idx >> 6] &= ~m;
  }
  // Lexicographic rank of a strictly increasing tuple.
  std::size_t rank(std::span<const std::size_t> sorted) const;
  std::size_t rank2(std::size_t i, std::size_t j) const {  // k = 2, i < j
    return i * n - i * (i + 1) / 2 + (j - i - 1);
  }
  // Entry at an arbitrary tuple; repeated indices read as 0.
  bool at(std::span<const std::size_t> idx) const;

  friend bool operator==(const SymTensor&, const SymTensor&) = default;
};

// Advances a strictly increasing tuple over [n] to its lexicographic
// successor; returns false after the last one.
bool next_combination(std::vector<std::size_t>& tuple, std::size_t n);

// Dense l1 x l2 x n bit tensor; entry (a, b, j) at (a l2 + b) n + j.
struct PartiteTensor {
  std::size_t l1 = 0, l2 = 0, n = 0;
  std::vector<std::uint64_t> words;

  static PartiteTensor zeros(std::size_t l1, std::size_t l2, std::size_t n);

  std::size_t size() const { return l1 * l2 * n; }
  std::size_t index(std::size_t a, std::size_t b, std::size_t j) const { return (a * l2 + b) * n + j; }
  bool bit(std::size_t idx) const { return (words[idx >> 6] >> (idx & 63)) & 1u; }
  void set_bit(std::size_t idx, bool v) {
    const std::uint64_t m = std::uint64_t{1} << (idx & 63);
    if (v) words[idx >> 6] |= m;
    else words[idx >> 6] &= ~m;
  }
  bool at(std::size_t a, std::size_t b, std::size_t j) const { return bit(index(a, b, j)); }

  friend bool operator==(const PartiteTensor&, const PartiteTensor&) = default;
};

// Real-valued tensor. kind 0: symmetric order-k values in canonical order;
// kind 2: dense n x n matrix, row-major.
struct RealTensor {
  std::uint8_t kind = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<double> values;
};

// Binary format: "LDT1", u8 kind (0 symmetric, 1 partite), u8 k, u32 dims
// (n, or l1 l2 n), then bits little-endian 8 per byte in canonical order.
// Real format: "LDR1", u8 kind, u8 k, u32 n, then little-endian doubles.
void write_tensor(std::ostream& os, const SymTensor& t);
void write_tensor(std::ostream& os, const PartiteTensor& t);
std::variant<SymTensor, PartiteTensor> read_tensor(std::istream& is);
void write_real_tensor(std::ostream& os, const RealTensor& t);
RealTensor read_real_tensor(std::istream& is);

void save_tensor(const std::string& path, const std::variant<SymTensor, PartiteTensor>& t);
std::variant<SymTensor, PartiteTensor> load_tensor(const std::string& path);

}  // namespace lowdeg
