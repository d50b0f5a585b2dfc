#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lowdeg/field.hpp"
#include "lowdeg/rng.hpp"

namespace lowdeg {

// p(x) = sum_j coeffs[j] x^j. The length is the degree bound m (deg p < m);
// trailing zeros are kept.
struct PolyFq {
  const GaloisField* field = nullptr;
  std::vector<std::uint64_t> coeffs;

  PolyFq() = default;
  PolyFq(const GaloisField& f, std::vector<std::uint64_t> c);

  std::size_t bound() const { return coeffs.size(); }
  FieldElem coeff(std::size_t j) const { return FieldElem(*field, coeffs.at(j)); }

  friend bool operator==(const PolyFq& a, const PolyFq& b) {
    return a.field == b.field && a.coeffs == b.coeffs;
  }
  friend bool operator<(const PolyFq& a, const PolyFq& b) { return a.coeffs < b.coeffs; }
};

// Horner evaluation on raw values.
std::uint64_t poly_eval(const GaloisField& f, std::span<const std::uint64_t> coeffs,
                        std::uint64_t x);
// Throws std::invalid_argument on field mismatch.
FieldElem poly_eval(const PolyFq& p, const FieldElem& x);

// m i.i.d. uniform coefficients.
PolyFq sample_message(const GaloisField& f, std::size_t m, Rng& rng);

struct EvalSet {
  const GaloisField* field = nullptr;
  std::vector<std::uint64_t> alphas;
  std::vector<std::uint64_t> betas;
  // resampled[i] != 0 iff alphas[i] occurs more than once.
  std::vector<std::uint8_t> resampled;

  std::size_t size() const { return alphas.size(); }
};

// mask[i] = 1 iff values[i] occurs at least twice in values.
std::vector<std::uint8_t> duplicate_mask(std::span<const std::uint64_t> values);

// Draws N i.i.d. uniform alphas, then walks i = 0..N-1 setting
// betas[i] = p(alphas[i]) for unique alphas and drawing a fresh uniform
// beta for every occurrence of a repeated value.
EvalSet sample_evalset(const GaloisField& f, const PolyFq& p, std::size_t N, Rng& rng);

// Same as sample_evalset but with the alphas supplied by the caller.
EvalSet evalset_from_alphas(const GaloisField& f, const PolyFq& p,
                            std::vector<std::uint64_t> alphas, Rng& rng);

}  // namespace lowdeg
