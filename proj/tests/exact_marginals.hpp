#pragma once

// Exact single-entry law of the planted matrix, by enumerating the message,
// every alpha tuple and every refill of the resampled betas. Background
// entries are fair bits by construction and count as exactly half ones. The
// relabeling is handled by summing over all of S_n.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "lowdeg/field.hpp"
#include "lowdeg/planted.hpp"
#include "lowdeg/reed_solomon.hpp"

namespace exact {

struct EntryLaw {
  std::vector<std::uint64_t> pre_ones;   // before relabeling, per canonical entry
  std::uint64_t pre_total = 0;
  std::vector<std::uint64_t> post_ones;  // after a uniform relabeling
  std::uint64_t post_total = 0;
};

inline EntryLaw planted_matrix_entry_law(unsigned t, std::size_t m, std::size_t n) {
  using namespace lowdeg;
  const GaloisField& f = make_field(t);
  const std::uint64_t q = f.order();
  const std::size_t N = n / 2, col0 = (n + 1) / 2;
  std::uint64_t msgs = 1, cells = 1;
  for (std::size_t i = 0; i < m; ++i) msgs *= q;
  for (std::size_t i = 0; i < N; ++i) cells *= q;

  const SymTensor shape = SymTensor::zeros(n, 2);
  std::vector<std::uint8_t> placed(shape.size(), 0);
  for (std::size_t i = 0; i < 2 * t; ++i)
    for (std::size_t j = 0; j < N; ++j) placed[shape.rank2(i, col0 + j)] = 1;

  EntryLaw law;
  law.pre_ones.assign(shape.size(), 0);
  law.pre_total = msgs * cells * cells;

  std::vector<std::uint64_t> c(m), a(N);
  for (std::uint64_t u = 0; u < msgs; ++u) {
    std::uint64_t v = u;
    for (auto& x : c) { x = v % q; v /= q; }
    PlantedWitness w;
    w.n = n;
    w.k = 2;
    w.q = q;
    w.m = m;
    w.message = PolyFq(f, c);
    for (std::uint64_t cell = 0; cell < cells; ++cell) {
      std::uint64_t z = cell;
      for (auto& x : a) { x = z % q; z /= q; }
      EvalSet es;
      es.field = &f;
      es.alphas = a;
      es.resampled = duplicate_mask(a);
      es.betas.assign(N, 0);
      std::vector<std::size_t> free;
      for (std::size_t i = 0; i < N; ++i) {
        if (es.resampled[i]) free.push_back(i);
        else es.betas[i] = poly_eval(f, c, a[i]);
      }
      std::uint64_t fills = 1;
      for (std::size_t i = 0; i < free.size(); ++i) fills *= q;
      const std::uint64_t weight = cells / fills;
      for (std::uint64_t s = 0; s < fills; ++s) {
        std::uint64_t y = s;
        for (auto i : free) { es.betas[i] = y % q; y /= q; }
        w.evalset = es;
        const SymTensor T = rebuild_planted(w);
        for (std::size_t e = 0; e < T.size(); ++e)
          if (placed[e] && T.bit(e)) law.pre_ones[e] += weight;
      }
    }
  }
  for (std::size_t e = 0; e < shape.size(); ++e)
    if (!placed[e]) law.pre_ones[e] = law.pre_total / 2;

  law.post_ones.assign(shape.size(), 0);
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  std::uint64_t perms = 0;
  do {
    ++perms;
    std::size_t e = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j, ++e) {
        const std::size_t x = std::min(sigma[i], sigma[j]), y = std::max(sigma[i], sigma[j]);
        law.post_ones[shape.rank2(x, y)] += law.pre_ones[e];
      }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  law.post_total = perms * law.pre_total;
  return law;
}

}  // namespace exact
