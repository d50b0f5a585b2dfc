#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lowdeg {

// GF(2^t), 1 <= t <= 63. Elements are the integers [0, 2^t) read as
// polynomials over GF(2) (bit i is the coefficient of x^i) modulo a fixed
// irreducible polynomial. Instances are immutable and shared.
class GaloisField {
 public:
  GaloisField(const GaloisField&) = delete;
  GaloisField& operator=(const GaloisField&) = delete;

  unsigned degree() const { return t_; }
  std::uint64_t order() const { return q_; }
  // Full modulus including the x^t term.
  std::uint64_t modulus() const { return modulus_; }
  bool has_tables() const { return !log_.empty(); }
  // Primitive element used for the exp/log tables (t <= 16 only).
  std::uint64_t generator() const { return generator_; }

  bool contains(std::uint64_t a) const { return a < q_; }

  static std::uint64_t add(std::uint64_t a, std::uint64_t b) { return a ^ b; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    if (!log_.empty()) {
      if (a == 0 || b == 0) return 0;
      return exp_[log_[a] + log_[b]];
    }
    return mul_slow(a, b);
  }
  std::uint64_t sqr(std::uint64_t a) const { return mul(a, a); }
  // Throws std::domain_error on zero.
  std::uint64_t inv(std::uint64_t a) const;
  // Negative exponents are allowed for a != 0.
  std::uint64_t pow(std::uint64_t a, std::int64_t e) const;
  std::uint64_t div(std::uint64_t a, std::uint64_t b) const { return mul(a, inv(b)); }

  // Carry-less multiply followed by reduction; independent of the tables.
  std::uint64_t mul_slow(std::uint64_t a, std::uint64_t b) const;

 private:
  explicit GaloisField(unsigned t);
  friend const GaloisField& make_field(unsigned t);

  unsigned t_;
  std::uint64_t q_;
  std::uint64_t modulus_;
  std::uint64_t generator_ = 0;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> exp_;  // length 2(q-1) so log sums need no reduction
};

// Returns the process-wide field for degree t. Throws std::invalid_argument
// unless 1 <= t <= 63.
const GaloisField& make_field(unsigned t);

// Fixed modulus for degree t: the lowest-weight irreducible polynomial,
// preferring x^t + x^a + 1 with least a, else x^t + x^c + x^b + x^a + 1 with
// lexicographically least (c, b, a). t = 1 uses x + 1.
std::uint64_t field_modulus(unsigned t);

// Field of order q; q must be a power of two in [2, 2^63].
const GaloisField& field_for_order(std::uint64_t q);

class FieldElem {
 public:
  FieldElem(const GaloisField& f, std::uint64_t v);
  const GaloisField& field() const { return *field_; }
  std::uint64_t value() const { return value_; }

  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

 private:
  const GaloisField* field_;
  std::uint64_t value_;
};

// These throw std::invalid_argument when the operands live in different fields.
FieldElem add(const FieldElem& a, const FieldElem& b);
FieldElem mul(const FieldElem& a, const FieldElem& b);
FieldElem inv(const FieldElem& a);
FieldElem pow(const FieldElem& a, std::int64_t e);

inline FieldElem operator+(const FieldElem& a, const FieldElem& b) { return add(a, b); }
inline FieldElem operator*(const FieldElem& a, const FieldElem& b) { return mul(a, b); }

// Little-endian bits of the value, length t.
std::vector<std::uint8_t> binary_encode(const FieldElem& a);
std::vector<std::uint8_t> binary_encode(const GaloisField& f, std::uint64_t a);
// Throws std::invalid_argument unless bits.size() == t.
FieldElem binary_decode(const GaloisField& f, std::span<const std::uint8_t> bits);

// Exact polynomial arithmetic over GF(2), used for the modulus checks.
namespace gf2poly {
int degree(unsigned __int128 a);
unsigned __int128 mod(unsigned __int128 a, unsigned __int128 b);
unsigned __int128 clmul(std::uint64_t a, std::uint64_t b);
// Trial division by every polynomial of degree 1..deg(f)/2.
bool irreducible_by_division(std::uint64_t f);
}  // namespace gf2poly

}  // namespace lowdeg
