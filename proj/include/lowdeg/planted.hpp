#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lowdeg/field.hpp"
#include "lowdeg/reed_solomon.hpp"
#include "lowdeg/rng.hpp"
#include "lowdeg/tensor.hpp"

namespace lowdeg {

// Smallest l with l^(k-1) >= t: the side of the (k-1)-dimensional block that
// holds one field element. For k = 2 this is t itself.
std::size_t pack_side(std::size_t t, std::size_t k);

// l^(k-1) cells in row-major order: the first t hold binary_encode(a), the
// rest are fresh uniform bits. k = 2 draws nothing from rng.
std::vector<std::uint8_t> binary_pack_k(const FieldElem& a, std::size_t k, Rng& rng);
// Reads the first t cells and ignores the padding.
FieldElem binary_unpack_k(const GaloisField& f, std::span<const std::uint8_t> cells, std::size_t k);

// Slice layout for the partite construction: l1 x l2 cells, alpha bits in
// cells [0, t), beta bits in [half, half + t), uniform padding elsewhere,
// where half = ceil(l1 l2 / 2).
struct PartiteLayout {
  std::size_t l1 = 0, l2 = 0;
  std::size_t half() const { return (l1 * l2 + 1) / 2; }
  // l1 = ceil(sqrt(t)), l2 = ceil(2t / l1).
  static PartiteLayout for_degree(std::size_t t);
};

struct PlantedWitness {
  bool partite = false;
  std::size_t n = 0, k = 0, q = 0, m = 0;
  PolyFq message;
  EvalSet evalset;
  // Seeds the stream for the uniform background and padding bits.
  std::uint64_t filler_seed = 0;
  // Symmetric: sigma relabels [n]. Partite: perm1, perm2, perm3 act on the modes.
  std::vector<std::size_t> sigma;
  PartiteLayout layout;
  std::vector<std::size_t> perm1, perm2, perm3;
};

struct PlantedSample {
  SymTensor tensor;
  PlantedWitness witness;
};

struct PartiteSample {
  PartiteTensor tensor;
  PlantedWitness witness;  // meaningful only when planted
  bool planted = false;
};

// Fair i.i.d. bits on all C(n, k) canonical entries.
SymTensor sample_null_tensor(std::size_t n, std::size_t k, Rng& rng);
SymTensor sample_null_matrix(std::size_t n, Rng& rng);

// Planted order-k tensor. Draw order from rng: message, evaluation set with
// N = floor(n/2), filler seed, then sigma. With l = pack_side(log2 q, k) the
// regions R_i = [(i-1) 2l, i 2l) for i < k hold alpha_j in the first l
// indices of each region and beta_j in the last l, against mode-k index
// ceil(n/2) + j. identity_permutation is a test hook.
PlantedSample sample_planted_tensor(std::size_t n, std::size_t k, std::uint64_t q, std::size_t m,
                                    Rng& rng, bool identity_permutation = false);
PlantedSample sample_planted_matrix(std::size_t n, std::uint64_t q, std::size_t m, Rng& rng,
                                    bool identity_permutation = false);
// Rebuilds the tensor bit-exactly from its witness.
SymTensor rebuild_planted(const PlantedWitness& w);

// Index tuples where the data sits after relabeling. alpha[i] and beta[i]
// are the ordered l-tuples for mode i < k - 1.
struct TensorGuess {
  std::vector<std::vector<std::size_t>> alpha;
  std::vector<std::vector<std::size_t>> beta;
};
TensorGuess oracle_guess(const PlantedWitness& w);

// Partite sample over dims (layout.l1, layout.l2, n). Planted: N = n slices
// all carry data; then independent uniform permutations of the three modes.
PartiteSample sample_partite(std::size_t n, std::uint64_t q, std::size_t m, bool planted, Rng& rng,
                             PartiteLayout layout = {}, bool identity_permutation = false);
PartiteTensor rebuild_partite(const PlantedWitness& w);

// Each canonical coordinate is replaced by a fresh fair bit with probability eps.
SymTensor apply_noise(const SymTensor& t, double eps, Rng& rng);
PartiteTensor apply_noise(const PartiteTensor& t, double eps, Rng& rng);

// Output entry at sorted(sigma(i_1), ..., sigma(i_k)) equals input at (i_1, ..., i_k).
SymTensor apply_relabeling(const SymTensor& t, std::span<const std::size_t> sigma);
// Output (p1[a], p2[b], p3[j]) equals input (a, b, j).
PartiteTensor apply_relabeling(const PartiteTensor& t, std::span<const std::size_t> p1,
                               std::span<const std::size_t> p2, std::span<const std::size_t> p3);

// Entry (2 bit - 1) |g| with g standard normal per canonical coordinate.
RealTensor gaussian_lift(const SymTensor& t, Rng& rng);

bool is_permutation_of_range(std::span<const std::size_t> p);

}  // namespace lowdeg
