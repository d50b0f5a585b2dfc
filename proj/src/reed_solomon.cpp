#include "lowdeg/reed_solomon.hpp"

#include <stdexcept>
#include <unordered_map>

namespace lowdeg {

PolyFq::PolyFq(const GaloisField& f, std::vector<std::uint64_t> c) : field(&f), coeffs(std::move(c)) {
  for (auto v : coeffs)
    if (!f.contains(v)) throw std::invalid_argument("PolyFq: coefficient out of range");
}

std::uint64_t poly_eval(const GaloisField& f, std::span<const std::uint64_t> coeffs,
                        std::uint64_t x) {
  std::uint64_t acc = 0;
  for (std::size_t j = coeffs.size(); j-- > 0;) acc = f.mul(acc, x) ^ coeffs[j];
  return acc;
}

FieldElem poly_eval(const PolyFq& p, const FieldElem& x) {
  if (p.field != &x.field()) throw std::invalid_argument("poly_eval: field mismatch");
  return FieldElem(*p.field, poly_eval(*p.field, p.coeffs, x.value()));
}

PolyFq sample_message(const GaloisField& f, std::size_t m, Rng& rng) {
  if (m < 1) throw std::invalid_argument("sample_message: m must be at least 1");
  std::vector<std::uint64_t> c(m);
  for (auto& v : c) v = rng.uniform(f.order());
  return PolyFq(f, std::move(c));
}

std::vector<std::uint8_t> duplicate_mask(std::span<const std::uint64_t> values) {
  std::unordered_map<std::uint64_t, std::size_t> count;
  count.reserve(values.size() * 2);
  for (auto v : values) ++count[v];
  std::vector<std::uint8_t> mask(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) mask[i] = count[values[i]] > 1;
  return mask;
}

EvalSet evalset_from_alphas(const GaloisField& f, const PolyFq& p,
                            std::vector<std::uint64_t> alphas, Rng& rng) {
  if (p.field != &f) throw std::invalid_argument("sample_evalset: field mismatch");
  EvalSet es;
  es.field = &f;
  es.alphas = std::move(alphas);
  es.resampled = duplicate_mask(es.alphas);
  es.betas.resize(es.alphas.size());
  for (std::size_t i = 0; i < es.alphas.size(); ++i) {
    es.betas[i] = es.resampled[i] ? rng.uniform(f.order()) : poly_eval(f, p.coeffs, es.alphas[i]);
  }
  return es;
}

EvalSet sample_evalset(const GaloisField& f, const PolyFq& p, std::size_t N, Rng& rng) {
  if (N < 1) throw std::invalid_argument("sample_evalset: N must be at least 1");
  std::vector<std::uint64_t> alphas(N);
  for (auto& a : alphas) a = rng.uniform(f.order());
  return evalset_from_alphas(f, p, std::move(alphas), rng);
}

}  // namespace lowdeg
