#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lowdeg/field.hpp"
#include "lowdeg/planted.hpp"
#include "lowdeg/reed_solomon.hpp"
#include "lowdeg/tensor.hpp"

namespace lowdeg {

struct GuessPolicy {
  enum class Mode { exhaustive, budgeted, oracle };
  Mode mode = Mode::exhaustive;
  std::uint64_t budget = 0;  // budgeted: number of distinct random guesses
  std::uint64_t seed = 0;    // budgeted: stream for the random guesses
  std::optional<TensorGuess> placement;  // oracle

  static GuessPolicy exhaustive() { return {}; }
  static GuessPolicy budgeted(std::uint64_t count, std::uint64_t seed);
  static GuessPolicy oracle(const PlantedWitness& w);
};

struct DistinguishReport {
  int decision = 0;
  std::optional<PolyFq> accepted_polynomial;
  std::size_t agreement_count = 0;
  std::uint64_t guesses_tried = 0;
  std::size_t threshold = 0;     // n' used by the last decode attempted
  std::size_t unique_pairs = 0;  // |S'| at that attempt
};

// Acceptance threshold for N unique pairs: the largest of
//  - the least t with t^2 > N m (list decoding regime),
//  - gs_min_agreement(N, m, 2), so decoding runs with multiplicity <= 2,
//  - the least t with q^m C(N, t) q^-t <= 2^-40 (expected number of
//    polynomials agreeing with t uniform pairs by chance).
std::size_t default_threshold(std::size_t N, std::size_t m, std::uint64_t q);
std::size_t null_safe_agreement(std::size_t N, std::size_t m, std::uint64_t q,
                                double log2_target = -40.0);

struct ExtractResult {
  bool accepted = false;
  std::optional<PolyFq> poly;
  std::size_t agreements = 0;
  std::size_t unique_pairs = 0;
  std::size_t threshold = 0;
};

// Keeps the pairs whose alpha occurs once, list decodes them with t = n_prime
// (default_threshold when n_prime is 0) and accepts iff a polynomial agrees
// with at least n_prime of them. Throws std::invalid_argument when an explicit
// n_prime does not exceed sqrt(N m).
ExtractResult extract_and_decode(const GaloisField& f, std::span<const std::uint64_t> alphas,
                                 std::span<const std::uint64_t> betas, std::size_t m,
                                 std::size_t n_prime);
// Bit-level entry point: every entry must hold exactly log2 q bits.
ExtractResult extract_and_decode(const GaloisField& f,
                                 std::span<const std::vector<std::uint8_t>> alpha_bits,
                                 std::span<const std::vector<std::uint8_t>> beta_bits,
                                 std::size_t m, std::size_t n_prime);

// Reads (alpha_j, beta_j) for every index j outside the guess.
void extract_pairs(const SymTensor& M, const GaloisField& f, const TensorGuess& guess,
                   std::vector<std::uint64_t>& alphas, std::vector<std::uint64_t>& betas);

// Guess-and-decode over ordered index tuples. Exhaustive mode enumerates
// all arrangements lexicographically; budgeted draws distinct uniform ones;
// oracle uses the witness placement. Returns on the first acceptance.
DistinguishReport distinguish_tensor_k(const SymTensor& M, std::uint64_t q, std::size_t m,
                                       std::size_t n_prime, const GuessPolicy& policy);
DistinguishReport distinguish_symmetric(const SymTensor& M, std::uint64_t q, std::size_t m,
                                        std::size_t n_prime, const GuessPolicy& policy);

// Tries every pair of mode-1 and mode-2 permutations in lexicographic order.
DistinguishReport distinguish_partite(const PartiteTensor& T, std::uint64_t q, std::size_t m,
                                      std::size_t n_prime);

}  // namespace lowdeg
