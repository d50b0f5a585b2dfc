#include "lowdeg/field.hpp"

#include <array>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace lowdeg {

namespace {

// Index t holds the modulus for GF(2^t).
constexpr std::array<std::uint64_t, 64> kModulus = {
    0x0ULL,
    0x3ULL,                 // x + 1
    0x7ULL,                 // x^2 + x + 1
    0xbULL,                 // x^3 + x + 1
    0x13ULL,                // x^4 + x + 1
    0x25ULL,                // x^5 + x^2 + 1
    0x43ULL,                // x^6 + x + 1
    0x83ULL,                // x^7 + x + 1
    0x11bULL,               // x^8 + x^4 + x^3 + x + 1
    0x203ULL,               // x^9 + x + 1
    0x409ULL,               // x^10 + x^3 + 1
    0x805ULL,               // x^11 + x^2 + 1
    0x1009ULL,              // x^12 + x^3 + 1
    0x201bULL,              // x^13 + x^4 + x^3 + x + 1
    0x4021ULL,              // x^14 + x^5 + 1
    0x8003ULL,              // x^15 + x + 1
    0x1002bULL,             // x^16 + x^5 + x^3 + x + 1
    0x20009ULL,             // x^17 + x^3 + 1
    0x40009ULL,             // x^18 + x^3 + 1
    0x80027ULL,             // x^19 + x^5 + x^2 + x + 1
    0x100009ULL,            // x^20 + x^3 + 1
    0x200005ULL,            // x^21 + x^2 + 1
    0x400003ULL,            // x^22 + x + 1
    0x800021ULL,            // x^23 + x^5 + 1
    0x100001bULL,           // x^24 + x^4 + x^3 + x + 1
    0x2000009ULL,           // x^25 + x^3 + 1
    0x400001bULL,           // x^26 + x^4 + x^3 + x + 1
    0x8000027ULL,           // x^27 + x^5 + x^2 + x + 1
    0x10000003ULL,          // x^28 + x + 1
    0x20000005ULL,          // x^29 + x^2 + 1
    0x40000003ULL,          // x^30 + x + 1
    0x80000009ULL,          // x^31 + x^3 + 1
    0x10000008dULL,         // x^32 + x^7 + x^3 + x^2 + 1
    0x200000401ULL,         // x^33 + x^10 + 1
    0x400000081ULL,         // x^34 + x^7 + 1
    0x800000005ULL,         // x^35 + x^2 + 1
    0x1000000201ULL,        // x^36 + x^9 + 1
    0x2000000053ULL,        // x^37 + x^6 + x^4 + x + 1
    0x4000000063ULL,        // x^38 + x^6 + x^5 + x + 1
    0x8000000011ULL,        // x^39 + x^4 + 1
    0x10000000039ULL,       // x^40 + x^5 + x^4 + x^3 + 1
    0x20000000009ULL,       // x^41 + x^3 + 1
    0x40000000081ULL,       // x^42 + x^7 + 1
    0x80000000059ULL,       // x^43 + x^6 + x^4 + x^3 + 1
    0x100000000021ULL,      // x^44 + x^5 + 1
    0x20000000001bULL,      // x^45 + x^4 + x^3 + x + 1
    0x400000000003ULL,      // x^46 + x + 1
    0x800000000021ULL,      // x^47 + x^5 + 1
    0x100000000002dULL,     // x^48 + x^5 + x^3 + x^2 + 1
    0x2000000000201ULL,     // x^49 + x^9 + 1
    0x400000000001dULL,     // x^50 + x^4 + x^3 + x^2 + 1
    0x800000000004bULL,     // x^51 + x^6 + x^3 + x + 1
    0x10000000000009ULL,    // x^52 + x^3 + 1
    0x20000000000047ULL,    // x^53 + x^6 + x^2 + x + 1
    0x40000000000201ULL,    // x^54 + x^9 + 1
    0x80000000000081ULL,    // x^55 + x^7 + 1
    0x100000000000095ULL,   // x^56 + x^7 + x^4 + x^2 + 1
    0x200000000000011ULL,   // x^57 + x^4 + 1
    0x400000000080001ULL,   // x^58 + x^19 + 1
    0x800000000000095ULL,   // x^59 + x^7 + x^4 + x^2 + 1
    0x1000000000000003ULL,  // x^60 + x + 1
    0x2000000000000027ULL,  // x^61 + x^5 + x^2 + x + 1
    0x4000000020000001ULL,  // x^62 + x^29 + 1
    0x8000000000000003ULL,  // x^63 + x + 1
};

constexpr unsigned kTableMaxDegree = 16;

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> ps;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

}  // namespace

namespace gf2poly {

int degree(unsigned __int128 a) {
  int d = -1;
  while (a) {
    a >>= 1;
    ++d;
  }
  return d;
}

unsigned __int128 mod(unsigned __int128 a, unsigned __int128 b) {
  const int db = degree(b);
  if (db < 0) throw std::domain_error("gf2poly::mod: division by zero");
  for (int da = degree(a); da >= db; da = degree(a)) a ^= b << (da - db);
  return a;
}

unsigned __int128 clmul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 r = 0;
  const unsigned __int128 wa = a;
  while (b) {
    const int i = __builtin_ctzll(b);
    r ^= wa << i;
    b &= b - 1;
  }
  return r;
}

bool irreducible_by_division(std::uint64_t f) {
  const int d = degree(f);
  if (d < 1) return false;
  for (int k = 1; k <= d / 2; ++k) {
    for (std::uint64_t g = std::uint64_t{1} << k; g < (std::uint64_t{2} << k); ++g) {
      if (mod(f, g) == 0) return false;
    }
  }
  return true;
}

}  // namespace gf2poly

GaloisField::GaloisField(unsigned t) : t_(t), q_(std::uint64_t{1} << t), modulus_(kModulus[t]) {
  if (t_ > kTableMaxDegree) return;
  if (!gf2poly::irreducible_by_division(modulus_))
    throw std::logic_error("modulus table entry is reducible for t=" + std::to_string(t));
  const std::uint64_t group = q_ - 1;
  const auto ps = prime_factors(group);
  std::uint64_t g = 1;
  for (std::uint64_t cand = (q_ == 2 ? 1 : 2); cand < q_; ++cand) {
    bool primitive = true;
    for (std::uint64_t p : ps) {
      if (pow(cand, static_cast<std::int64_t>(group / p)) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      g = cand;
      break;
    }
  }
  generator_ = g;
  log_.assign(q_, 0);
  exp_.assign(2 * group, 0);
  std::uint64_t x = 1;
  for (std::uint64_t i = 0; i < group; ++i) {
    exp_[i] = exp_[i + group] = static_cast<std::uint32_t>(x);
    log_[x] = static_cast<std::uint32_t>(i);
    x = mul_slow(x, g);
  }
}

std::uint64_t GaloisField::mul_slow(std::uint64_t a, std::uint64_t b) const {
  unsigned __int128 p = gf2poly::clmul(a, b);
  const unsigned __int128 f = modulus_;
  for (int i = 2 * static_cast<int>(t_) - 2; i >= static_cast<int>(t_); --i) {
    if ((p >> i) & 1) p ^= f << (i - t_);
  }
  return static_cast<std::uint64_t>(p);
}

std::uint64_t GaloisField::inv(std::uint64_t a) const {
  if (a == 0) throw std::domain_error("GaloisField::inv: zero has no inverse");
  if (!log_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  // Binary extended Euclid: keeps g1*a = u and g2*a = v modulo f.
  unsigned __int128 u = a, v = modulus_, g1 = 1, g2 = 0;
  while (u != 1) {
    int j = gf2poly::degree(u) - gf2poly::degree(v);
    if (j < 0) {
      std::swap(u, v);
      std::swap(g1, g2);
      j = -j;
    }
    u ^= v << j;
    g1 ^= g2 << j;
  }
  return static_cast<std::uint64_t>(gf2poly::mod(g1, modulus_));
}

std::uint64_t GaloisField::pow(std::uint64_t a, std::int64_t e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  if (a == 0) return e == 0 ? 1 : 0;
  // a^(q-1) = 1 for units.
  auto ue = static_cast<std::uint64_t>(e) % (q_ - 1);
  std::uint64_t result = 1;
  std::uint64_t base = a;
  while (ue) {
    if (ue & 1) result = mul(result, base);
    base = mul(base, base);
    ue >>= 1;
  }
  return result;
}

const GaloisField& make_field(unsigned t) {
  if (t < 1 || t > 63) throw std::invalid_argument("make_field: t must lie in [1, 63]");
  static std::array<std::unique_ptr<GaloisField>, 64> cache;
  static std::array<std::once_flag, 64> once;
  std::call_once(once[t], [t] { cache[t].reset(new GaloisField(t)); });
  return *cache[t];
}

std::uint64_t field_modulus(unsigned t) {
  if (t < 1 || t > 63) throw std::invalid_argument("field_modulus: t must lie in [1, 63]");
  return kModulus[t];
}

const GaloisField& field_for_order(std::uint64_t q) {
  if (q < 2 || (q & (q - 1)) != 0 || q > (std::uint64_t{1} << 63))
    throw std::invalid_argument("field_for_order: q must be a power of two in [2, 2^63]");
  return make_field(static_cast<unsigned>(__builtin_ctzll(q)));
}

FieldElem::FieldElem(const GaloisField& f, std::uint64_t v) : field_(&f), value_(v) {
  if (!f.contains(v)) throw std::invalid_argument("FieldElem: value out of range");
}

namespace {
void require_same(const FieldElem& a, const FieldElem& b) {
  if (&a.field() != &b.field()) throw std::invalid_argument("field mismatch");
}
}  // namespace

FieldElem add(const FieldElem& a, const FieldElem& b) {
  require_same(a, b);
  return FieldElem(a.field(), a.value() ^ b.value());
}

FieldElem mul(const FieldElem& a, const FieldElem& b) {
  require_same(a, b);
  return FieldElem(a.field(), a.field().mul(a.value(), b.value()));
}

FieldElem inv(const FieldElem& a) { return FieldElem(a.field(), a.field().inv(a.value())); }

FieldElem pow(const FieldElem& a, std::int64_t e) {
  return FieldElem(a.field(), a.field().pow(a.value(), e));
}

std::vector<std::uint8_t> binary_encode(const GaloisField& f, std::uint64_t a) {
  std::vector<std::uint8_t> bits(f.degree());
  for (unsigned i = 0; i < f.degree(); ++i) bits[i] = (a >> i) & 1u;
  return bits;
}

std::vector<std::uint8_t> binary_encode(const FieldElem& a) {
  return binary_encode(a.field(), a.value());
}

FieldElem binary_decode(const GaloisField& f, std::span<const std::uint8_t> bits) {
  if (bits.size() != f.degree()) throw std::invalid_argument("binary_decode: wrong bit length");
  std::uint64_t v = 0;
  for (unsigned i = 0; i < f.degree(); ++i) {
    if (bits[i] > 1) throw std::invalid_argument("binary_decode: non-binary entry");
    v |= std::uint64_t{bits[i]} << i;
  }
  return FieldElem(f, v);
}

}  // namespace lowdeg
