#include "lowdeg/planted.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lowdeg {

std::size_t pack_side(std::size_t t, std::size_t k) {
  if (k < 2) throw std::invalid_argument("pack_side: k must be at least 2");
  std::size_t l = 1;
  for (;; ++l) {
    std::size_t cells = 1;
    for (std::size_t i = 0; i + 1 < k && cells < t; ++i) cells *= l;
    if (cells >= t) return l;
  }
}

namespace {

std::size_t cell_count(std::size_t l, std::size_t k) {
  std::size_t c = 1;
  for (std::size_t i = 0; i + 1 < k; ++i) c *= l;
  return c;
}

void fill_random(std::vector<std::uint64_t>& words, std::size_t bits, Rng& rng) {
  for (auto& w : words) w = rng.next_u64();
  if (bits % 64) words.back() &= (std::uint64_t{1} << (bits % 64)) - 1;
}

std::vector<std::size_t> identity_perm(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return p;
}

void check_symmetric_params(std::size_t n, std::size_t k, std::uint64_t q, std::size_t m) {
  if (k < 2) throw std::invalid_argument("planted tensor: k must be at least 2");
  if (m < 2) throw std::invalid_argument("planted tensor: m must be at least 2");
  if (q < n) throw std::invalid_argument("planted tensor: requires q >= n");
  const auto& f = field_for_order(q);
  const std::size_t l = pack_side(f.degree(), k);
  if ((2 * k - 2) * l > (n + 1) / 2)
    throw std::invalid_argument("planted tensor: placement regions do not fit in ceil(n/2)");
}

}  // namespace

std::vector<std::uint8_t> binary_pack_k(const FieldElem& a, std::size_t k, Rng& rng) {
  const std::size_t t = a.field().degree();
  const std::size_t l = pack_side(t, k);
  std::vector<std::uint8_t> cells = binary_encode(a);
  cells.resize(cell_count(l, k));
  for (std::size_t c = t; c < cells.size(); ++c) cells[c] = rng.bit();
  return cells;
}

FieldElem binary_unpack_k(const GaloisField& f, std::span<const std::uint8_t> cells, std::size_t k) {
  if (cells.size() != cell_count(pack_side(f.degree(), k), k))
    throw std::invalid_argument("binary_unpack_k: wrong cell count");
  return binary_decode(f, cells.first(f.degree()));
}

PartiteLayout PartiteLayout::for_degree(std::size_t t) {
  PartiteLayout L;
  L.l1 = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(t)) - 1e-12));
  while (L.l1 * L.l1 < t) ++L.l1;
  L.l2 = (2 * t + L.l1 - 1) / L.l1;
  return L;
}

bool is_permutation_of_range(std::span<const std::size_t> p) {
  std::vector<std::uint8_t> seen(p.size(), 0);
  for (auto v : p) {
    if (v >= p.size() || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

SymTensor sample_null_tensor(std::size_t n, std::size_t k, Rng& rng) {
  SymTensor t = SymTensor::zeros(n, k);
  fill_random(t.words, t.size(), rng);
  return t;
}

SymTensor sample_null_matrix(std::size_t n, Rng& rng) {
  if (n < 2) throw std::invalid_argument("sample_null_matrix: n must be at least 2");
  return sample_null_tensor(n, 2, rng);
}

SymTensor rebuild_planted(const PlantedWitness& w) {
  if (w.partite) throw std::invalid_argument("rebuild_planted: witness is partite");
  const std::size_t n = w.n, k = w.k;
  const GaloisField& f = *w.evalset.field;
  const std::size_t t = f.degree();
  const std::size_t l = pack_side(t, k);
  const std::size_t cells = cell_count(l, k);
  const std::size_t col0 = (n + 1) / 2;

  Rng fill(w.filler_seed);
  SymTensor T = sample_null_tensor(n, k, fill);
  std::vector<std::size_t> tuple(k);
  auto place = [&](const std::vector<std::uint8_t>& bits, std::size_t offset, std::size_t col) {
    for (std::size_t c = 0; c < cells; ++c) {
      std::size_t rest = c;
      for (std::size_t i = k - 1; i-- > 0;) {
        tuple[i] = i * 2 * l + offset + rest % l;
        rest /= l;
      }
      tuple[k - 1] = col;
      T.set_bit(T.rank(tuple), bits[c] != 0);
    }
  };
  for (std::size_t j = 0; j < w.evalset.size(); ++j) {
    const auto a = binary_pack_k(FieldElem(f, w.evalset.alphas[j]), k, fill);
    const auto b = binary_pack_k(FieldElem(f, w.evalset.betas[j]), k, fill);
    place(a, 0, col0 + j);
    place(b, l, col0 + j);
  }
  if (w.sigma.empty()) return T;
  return apply_relabeling(T, w.sigma);
}

PlantedSample sample_planted_tensor(std::size_t n, std::size_t k, std::uint64_t q, std::size_t m,
                                    Rng& rng, bool identity_permutation) {
  check_symmetric_params(n, k, q, m);
  const GaloisField& f = field_for_order(q);
  PlantedSample s;
  PlantedWitness& w = s.witness;
  w.n = n;
  w.k = k;
  w.q = q;
  w.m = m;
  w.message = sample_message(f, m, rng);
  w.evalset = sample_evalset(f, w.message, n / 2, rng);
  w.filler_seed = rng.next_u64();
  w.sigma = identity_permutation ? identity_perm(n) : rng.permutation(n);
  s.tensor = rebuild_planted(w);
  return s;
}

PlantedSample sample_planted_matrix(std::size_t n, std::uint64_t q, std::size_t m, Rng& rng,
                                    bool identity_permutation) {
  return sample_planted_tensor(n, 2, q, m, rng, identity_permutation);
}

TensorGuess oracle_guess(const PlantedWitness& w) {
  if (w.partite) throw std::invalid_argument("oracle_guess: witness is partite");
  const std::size_t l = pack_side(w.evalset.field->degree(), w.k);
  TensorGuess g;
  for (std::size_t i = 0; i + 1 < w.k; ++i) {
    std::vector<std::size_t> a(l), b(l);
    for (std::size_t c = 0; c < l; ++c) {
      a[c] = w.sigma[i * 2 * l + c];
      b[c] = w.sigma[i * 2 * l + l + c];
    }
    g.alpha.push_back(std::move(a));
    g.beta.push_back(std::move(b));
  }
  return g;
}

PartiteTensor rebuild_partite(const PlantedWitness& w) {
  if (!w.partite) throw std::invalid_argument("rebuild_partite: witness is not partite");
  const GaloisField& f = *w.evalset.field;
  const std::size_t t = f.degree();
  const PartiteLayout L = w.layout;
  const std::size_t h = L.half();
  Rng fill(w.filler_seed);
  PartiteTensor T = PartiteTensor::zeros(L.l1, L.l2, w.n);
  // Background bits double as the padding cells.
  fill_random(T.words, T.size(), fill);
  for (std::size_t j = 0; j < w.evalset.size(); ++j) {
    for (std::size_t c = 0; c < t; ++c) {
      T.set_bit(T.index(c / L.l2, c % L.l2, j), (w.evalset.alphas[j] >> c) & 1);
      T.set_bit(T.index((h + c) / L.l2, (h + c) % L.l2, j), (w.evalset.betas[j] >> c) & 1);
    }
  }
  return apply_relabeling(T, w.perm1, w.perm2, w.perm3);
}

PartiteSample sample_partite(std::size_t n, std::uint64_t q, std::size_t m, bool planted, Rng& rng,
                             PartiteLayout layout, bool identity_permutation) {
  const GaloisField& f = field_for_order(q);
  const std::size_t t = f.degree();
  if (layout.l1 == 0) layout = PartiteLayout::for_degree(t);
  if (layout.l1 * layout.l2 < 2 * t)
    throw std::invalid_argument("sample_partite: slice too small for 2 log2 q bits");
  if (layout.l1 > 6 || layout.l2 > 6 || n < 1)
    throw std::invalid_argument("sample_partite: slice sides must be at most 6");
  PartiteSample s;
  s.planted = planted;
  if (!planted) {
    s.tensor = PartiteTensor::zeros(layout.l1, layout.l2, n);
    fill_random(s.tensor.words, s.tensor.size(), rng);
    return s;
  }
  if (m < 2) throw std::invalid_argument("sample_partite: m must be at least 2");
  PlantedWitness& w = s.witness;
  w.partite = true;
  w.n = n;
  w.k = 3;
  w.q = q;
  w.m = m;
  w.layout = layout;
  w.message = sample_message(f, m, rng);
  w.evalset = sample_evalset(f, w.message, n, rng);
  w.filler_seed = rng.next_u64();
  if (identity_permutation) {
    w.perm1 = identity_perm(layout.l1);
    w.perm2 = identity_perm(layout.l2);
    w.perm3 = identity_perm(n);
  } else {
    w.perm1 = rng.permutation(layout.l1);
    w.perm2 = rng.permutation(layout.l2);
    w.perm3 = rng.permutation(n);
  }
  s.tensor = rebuild_partite(w);
  return s;
}

SymTensor apply_noise(const SymTensor& t, double eps, Rng& rng) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("apply_noise: eps must lie in [0, 1]");
  SymTensor out = t;
  if (eps == 0.0) return out;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (rng.bernoulli(eps)) out.set_bit(i, rng.bit());
  return out;
}

PartiteTensor apply_noise(const PartiteTensor& t, double eps, Rng& rng) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("apply_noise: eps must lie in [0, 1]");
  PartiteTensor out = t;
  if (eps == 0.0) return out;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (rng.bernoulli(eps)) out.set_bit(i, rng.bit());
  return out;
}

SymTensor apply_relabeling(const SymTensor& t, std::span<const std::size_t> sigma) {
  if (sigma.size() != t.n || !is_permutation_of_range(sigma))
    throw std::invalid_argument("apply_relabeling: invalid permutation");
  SymTensor out = SymTensor::zeros(t.n, t.k);
  if (t.k == 2) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < t.n; ++i) {
      for (std::size_t j = i + 1; j < t.n; ++j, ++idx) {
        if (!t.bit(idx)) continue;
        const std::size_t a = sigma[i], b = sigma[j];
        out.set_bit(a < b ? out.rank2(a, b) : out.rank2(b, a), true);
      }
    }
    return out;
  }
  std::vector<std::size_t> tuple(t.k), mapped(t.k);
  std::iota(tuple.begin(), tuple.end(), std::size_t{0});
  std::size_t idx = 0;
  do {
    if (t.bit(idx)) {
      for (std::size_t p = 0; p < t.k; ++p) mapped[p] = sigma[tuple[p]];
      std::sort(mapped.begin(), mapped.end());
      out.set_bit(out.rank(mapped), true);
    }
    ++idx;
  } while (next_combination(tuple, t.n));
  return out;
}

PartiteTensor apply_relabeling(const PartiteTensor& t, std::span<const std::size_t> p1,
                               std::span<const std::size_t> p2, std::span<const std::size_t> p3) {
  if (p1.size() != t.l1 || p2.size() != t.l2 || p3.size() != t.n || !is_permutation_of_range(p1) ||
      !is_permutation_of_range(p2) || !is_permutation_of_range(p3))
    throw std::invalid_argument("apply_relabeling: invalid permutation");
  PartiteTensor out = PartiteTensor::zeros(t.l1, t.l2, t.n);
  for (std::size_t a = 0; a < t.l1; ++a)
    for (std::size_t b = 0; b < t.l2; ++b)
      for (std::size_t j = 0; j < t.n; ++j)
        if (t.at(a, b, j)) out.set_bit(out.index(p1[a], p2[b], p3[j]), true);
  return out;
}

RealTensor gaussian_lift(const SymTensor& t, Rng& rng) {
  RealTensor r;
  r.kind = 0;
  r.n = t.n;
  r.k = t.k;
  r.values.resize(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double g = std::fabs(rng.normal());
    r.values[i] = t.bit(i) ? g : -g;
  }
  return r;
}

}  // namespace lowdeg
