#include "lowdeg/tensor.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace lowdeg {

std::uint64_t binomial(std::uint64_t a, std::uint64_t b) {
  if (b > a) return 0;
  b = std::min(b, a - b);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

SymTensor SymTensor::zeros(std::size_t n, std::size_t k) {
  if (k < 1 || n < k) throw std::invalid_argument("SymTensor: need 1 <= k <= n");
  SymTensor t;
  t.n = n;
  t.k = k;
  t.words.assign((binomial(n, k) + 63) / 64, 0);
  return t;
}

std::size_t SymTensor::rank(std::span<const std::size_t> s) const {
  if (k == 2) return rank2(s[0], s[1]);
  std::size_t r = 0;
  std::size_t lo = 0;  // smallest value allowed at this position
  for (std::size_t p = 0; p < k; ++p) {
    // Tuples whose position p lies in [lo, s[p]) come first.
    r += static_cast<std::size_t>(binomial(n - lo, k - p) - binomial(n - s[p], k - p));
    lo = s[p] + 1;
  }
  return r;
}

bool SymTensor::at(std::span<const std::size_t> idx) const {
  if (idx.size() != k) throw std::invalid_argument("SymTensor::at: wrong tuple length");
  std::array<std::size_t, 16> buf{};
  if (k > buf.size()) throw std::invalid_argument("SymTensor::at: order too large");
  std::copy(idx.begin(), idx.end(), buf.begin());
  std::sort(buf.begin(), buf.begin() + k);
  for (std::size_t p = 0; p < k; ++p) {
    if (buf[p] >= n) throw std::out_of_range("SymTensor::at: index out of range");
    if (p > 0 && buf[p] == buf[p - 1]) return false;
  }
  return bit(rank(std::span<const std::size_t>(buf.data(), k)));
}

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  std::size_t p = k;
  while (p > 0 && c[p - 1] == n - k + p - 1) --p;
  if (p == 0) return false;
  ++c[p - 1];
  for (std::size_t i = p; i < k; ++i) c[i] = c[i - 1] + 1;
  return true;
}

PartiteTensor PartiteTensor::zeros(std::size_t l1, std::size_t l2, std::size_t n) {
  PartiteTensor t;
  t.l1 = l1;
  t.l2 = l2;
  t.n = n;
  t.words.assign((l1 * l2 * n + 63) / 64, 0);
  return t;
}

namespace {

void put_u8(std::ostream& os, std::uint8_t v) { os.put(static_cast<char>(v)); }

void put_u32(std::ostream& os, std::uint64_t v) {
  if (v > 0xffffffffULL) throw std::invalid_argument("tensor dimension exceeds u32");
  for (int i = 0; i < 4; ++i) os.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint8_t get_u8(std::istream& is) {
  const int c = is.get();
  if (c == EOF) throw std::runtime_error("tensor file truncated");
  return static_cast<std::uint8_t>(c);
}

std::uint32_t get_u32(std::istream& is) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t{get_u8(is)} << (8 * i);
  return v;
}

void put_bits(std::ostream& os, const std::vector<std::uint64_t>& words, std::size_t count) {
  for (std::size_t byte = 0; byte < (count + 7) / 8; ++byte) {
    std::uint8_t b = static_cast<std::uint8_t>(words[byte / 8] >> (8 * (byte % 8)));
    if (byte == count / 8 && count % 8) b &= static_cast<std::uint8_t>((1u << (count % 8)) - 1);
    put_u8(os, b);
  }
}

void get_bits(std::istream& is, std::vector<std::uint64_t>& words, std::size_t count) {
  for (std::size_t byte = 0; byte < (count + 7) / 8; ++byte)
    words[byte / 8] |= std::uint64_t{get_u8(is)} << (8 * (byte % 8));
  if (count % 64) words.back() &= (std::uint64_t{1} << (count % 64)) - 1;
}

void expect_magic(std::istream& is, const char* magic) {
  char buf[4];
  is.read(buf, 4);
  if (!is || !std::equal(buf, buf + 4, magic)) throw std::runtime_error("bad tensor file magic");
}

}  // namespace

void write_tensor(std::ostream& os, const SymTensor& t) {
  os.write("LDT1", 4);
  put_u8(os, 0);
  put_u8(os, static_cast<std::uint8_t>(t.k));
  put_u32(os, t.n);
  put_bits(os, t.words, t.size());
}

void write_tensor(std::ostream& os, const PartiteTensor& t) {
  os.write("LDT1", 4);
  put_u8(os, 1);
  put_u8(os, 3);
  put_u32(os, t.l1);
  put_u32(os, t.l2);
  put_u32(os, t.n);
  put_bits(os, t.words, t.size());
}

std::variant<SymTensor, PartiteTensor> read_tensor(std::istream& is) {
  expect_magic(is, "LDT1");
  const std::uint8_t kind = get_u8(is);
  const std::uint8_t k = get_u8(is);
  if (kind == 0) {
    const std::uint32_t n = get_u32(is);
    SymTensor t = SymTensor::zeros(n, k);
    get_bits(is, t.words, t.size());
    return t;
  }
  if (kind == 1) {
    if (k != 3) throw std::runtime_error("partite tensor must have k = 3");
    const std::uint32_t l1 = get_u32(is), l2 = get_u32(is), n = get_u32(is);
    PartiteTensor t = PartiteTensor::zeros(l1, l2, n);
    get_bits(is, t.words, t.size());
    return t;
  }
  throw std::runtime_error("unknown tensor kind");
}

void write_real_tensor(std::ostream& os, const RealTensor& t) {
  os.write("LDR1", 4);
  put_u8(os, t.kind);
  put_u8(os, static_cast<std::uint8_t>(t.k));
  put_u32(os, t.n);
  for (double v : t.values) {
    std::uint64_t u;
    static_assert(sizeof(u) == sizeof(v));
    std::memcpy(&u, &v, sizeof u);
    for (int i = 0; i < 8; ++i) os.put(static_cast<char>((u >> (8 * i)) & 0xff));
  }
}

RealTensor read_real_tensor(std::istream& is) {
  expect_magic(is, "LDR1");
  RealTensor t;
  t.kind = get_u8(is);
  t.k = get_u8(is);
  t.n = get_u32(is);
  std::size_t count = 0;
  if (t.kind == 0) count = static_cast<std::size_t>(binomial(t.n, t.k));
  else if (t.kind == 2) count = t.n * t.n;
  else throw std::runtime_error("unknown real tensor kind");
  t.values.resize(count);
  for (auto& v : t.values) {
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= std::uint64_t{get_u8(is)} << (8 * i);
    std::memcpy(&v, &u, sizeof v);
  }
  return t;
}

void save_tensor(const std::string& path, const std::variant<SymTensor, PartiteTensor>& t) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  std::visit([&](const auto& x) { write_tensor(os, x); }, t);
  if (!os) throw std::runtime_error("write failed: " + path);
}

std::variant<SymTensor, PartiteTensor> load_tensor(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  return read_tensor(is);
}

}  // namespace lowdeg
