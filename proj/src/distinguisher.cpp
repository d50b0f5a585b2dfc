#include "lowdeg/distinguisher.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "lowdeg/list_decoding.hpp"

namespace lowdeg {

GuessPolicy GuessPolicy::budgeted(std::uint64_t count, std::uint64_t seed) {
  if (count == 0) throw std::invalid_argument("GuessPolicy: budget must be positive");
  GuessPolicy p;
  p.mode = Mode::budgeted;
  p.budget = count;
  p.seed = seed;
  return p;
}

GuessPolicy GuessPolicy::oracle(const PlantedWitness& w) {
  GuessPolicy p;
  p.mode = Mode::oracle;
  p.placement = oracle_guess(w);
  return p;
}

std::size_t null_safe_agreement(std::size_t N, std::size_t m, std::uint64_t q,
                                double log2_target) {
  const double lq = std::log2(static_cast<double>(q));
  for (std::size_t t = 0; t <= N; ++t) {
    const double log2_binom =
        (std::lgamma(N + 1.0) - std::lgamma(t + 1.0) - std::lgamma(N - t + 1.0)) / std::log(2.0);
    if (m * lq + log2_binom - t * lq <= log2_target) return t;
  }
  return N + 1;
}

std::size_t default_threshold(std::size_t N, std::size_t m, std::uint64_t q) {
  std::size_t t = 1;
  while (t * t <= N * m) ++t;
  if (N > 0 && m >= 2) t = std::max(t, gs_min_agreement(N, m, 2));
  return std::max(t, null_safe_agreement(N, m, q));
}

ExtractResult extract_and_decode(const GaloisField& f, std::span<const std::uint64_t> alphas,
                                 std::span<const std::uint64_t> betas, std::size_t m,
                                 std::size_t n_prime) {
  if (alphas.size() != betas.size())
    throw std::invalid_argument("extract_and_decode: alpha/beta count mismatch");
  const auto dup = duplicate_mask(alphas);
  std::vector<Point> pts;
  for (std::size_t j = 0; j < alphas.size(); ++j)
    if (!dup[j]) pts.push_back({alphas[j], betas[j]});
  ExtractResult r;
  r.unique_pairs = pts.size();
  const std::size_t N = pts.size();
  if (n_prime == 0) n_prime = default_threshold(N, m, f.order());
  r.threshold = n_prime;
  // Fewer pairs than the threshold cannot accept.
  if (n_prime > N) return r;
  if (n_prime * n_prime <= N * m)
    throw std::invalid_argument("extract_and_decode: n_prime must exceed sqrt(N m)");
  const DecodeResult dec = list_decode(f, pts, m, n_prime);
  for (std::size_t i = 0; i < dec.polys.size(); ++i) {
    if (dec.agreements[i] >= n_prime && (!r.accepted || dec.agreements[i] > r.agreements)) {
      r.accepted = true;
      r.poly = dec.polys[i];
      r.agreements = dec.agreements[i];
    }
  }
  return r;
}

ExtractResult extract_and_decode(const GaloisField& f,
                                 std::span<const std::vector<std::uint8_t>> alpha_bits,
                                 std::span<const std::vector<std::uint8_t>> beta_bits,
                                 std::size_t m, std::size_t n_prime) {
  if (alpha_bits.size() != beta_bits.size())
    throw std::invalid_argument("extract_and_decode: alpha/beta count mismatch");
  std::vector<std::uint64_t> a, b;
  for (std::size_t j = 0; j < alpha_bits.size(); ++j) {
    a.push_back(binary_decode(f, alpha_bits[j]).value());
    b.push_back(binary_decode(f, beta_bits[j]).value());
  }
  return extract_and_decode(f, a, b, m, n_prime);
}

void extract_pairs(const SymTensor& M, const GaloisField& f, const TensorGuess& guess,
                   std::vector<std::uint64_t>& alphas, std::vector<std::uint64_t>& betas) {
  const std::size_t k = M.k;
  const std::size_t t = f.degree();
  const std::size_t l = pack_side(t, k);
  if (guess.alpha.size() != k - 1 || guess.beta.size() != k - 1)
    throw std::invalid_argument("extract_pairs: guess has the wrong number of tuples");
  std::vector<std::uint8_t> used(M.n, 0);
  for (const auto* side : {&guess.alpha, &guess.beta})
    for (const auto& tup : *side) {
      if (tup.size() != l) throw std::invalid_argument("extract_pairs: tuple length mismatch");
      for (auto v : tup) {
        if (v >= M.n || used[v]) throw std::invalid_argument("extract_pairs: indices must be distinct");
        used[v] = 1;
      }
    }
  alphas.clear();
  betas.clear();
  std::vector<std::size_t> tuple(k);
  auto read = [&](const std::vector<std::vector<std::size_t>>& modes, std::size_t j) {
    std::uint64_t v = 0;
    for (std::size_t c = 0; c < t; ++c) {
      std::size_t rest = c;
      for (std::size_t i = k - 1; i-- > 0;) {
        tuple[i] = modes[i][rest % l];
        rest /= l;
      }
      tuple[k - 1] = j;
      if (M.at(tuple)) v |= std::uint64_t{1} << c;
    }
    return v;
  };
  for (std::size_t j = 0; j < M.n; ++j) {
    if (used[j]) continue;
    alphas.push_back(read(guess.alpha, j));
    betas.push_back(read(guess.beta, j));
  }
}

namespace {

TensorGuess unflatten(const std::vector<std::size_t>& flat, std::size_t k, std::size_t l) {
  TensorGuess g;
  for (std::size_t r = 0; r < 2 * k - 2; ++r) {
    std::vector<std::size_t> tup(flat.begin() + r * l, flat.begin() + (r + 1) * l);
    (r < k - 1 ? g.alpha : g.beta).push_back(std::move(tup));
  }
  return g;
}

// Lexicographic successor among length-L arrangements of distinct values in [n].
bool next_arrangement(std::vector<std::size_t>& a, std::size_t n) {
  const std::size_t L = a.size();
  std::vector<std::uint8_t> used(n, 0);
  for (auto v : a) used[v] = 1;
  for (std::size_t p = L; p-- > 0;) {
    used[a[p]] = 0;
    std::size_t v = a[p] + 1;
    while (v < n && used[v]) ++v;
    if (v < n) {
      a[p] = v;
      used[v] = 1;
      std::size_t next = 0;
      for (std::size_t i = p + 1; i < L; ++i) {
        while (used[next]) ++next;
        a[i] = next;
        used[next] = 1;
      }
      return true;
    }
  }
  return false;
}

}  // namespace

DistinguishReport distinguish_tensor_k(const SymTensor& M, std::uint64_t q, std::size_t m,
                                       std::size_t n_prime, const GuessPolicy& policy) {
  const GaloisField& f = field_for_order(q);
  const std::size_t k = M.k;
  if (k < 2) throw std::invalid_argument("distinguish_tensor_k: k must be at least 2");
  const std::size_t l = pack_side(f.degree(), k);
  const std::size_t L = (2 * k - 2) * l;
  if (L >= M.n) throw std::invalid_argument("distinguish_tensor_k: guess does not fit in [n]");

  DistinguishReport rep;
  std::vector<std::uint64_t> alphas, betas;
  auto attempt = [&](const TensorGuess& g) {
    ++rep.guesses_tried;
    extract_pairs(M, f, g, alphas, betas);
    const ExtractResult r = extract_and_decode(f, alphas, betas, m, n_prime);
    rep.threshold = r.threshold;
    rep.unique_pairs = r.unique_pairs;
    if (r.accepted) {
      rep.decision = 1;
      rep.accepted_polynomial = r.poly;
      rep.agreement_count = r.agreements;
    }
    return r.accepted;
  };

  switch (policy.mode) {
    case GuessPolicy::Mode::oracle:
      if (!policy.placement) throw std::invalid_argument("oracle policy without a witness");
      attempt(*policy.placement);
      break;
    case GuessPolicy::Mode::budgeted: {
      if (policy.budget == 0) throw std::invalid_argument("budgeted policy with zero budget");
      Rng rng(policy.seed);
      std::set<std::vector<std::size_t>> seen;
      // The number of arrangements n!/(n-L)! caps the budget.
      long double total = 1;
      for (std::size_t i = 0; i < L; ++i) total *= static_cast<long double>(M.n - i);
      const std::uint64_t budget =
          total < static_cast<long double>(policy.budget) ? static_cast<std::uint64_t>(total)
                                                          : policy.budget;
      while (seen.size() < budget) {
        std::vector<std::size_t> perm = rng.permutation(M.n);
        perm.resize(L);
        if (!seen.insert(perm).second) continue;
        if (attempt(unflatten(perm, k, l))) break;
      }
      break;
    }
    case GuessPolicy::Mode::exhaustive: {
      std::vector<std::size_t> a(L);
      std::iota(a.begin(), a.end(), std::size_t{0});
      do {
        if (attempt(unflatten(a, k, l))) break;
      } while (next_arrangement(a, M.n));
      break;
    }
  }
  return rep;
}

DistinguishReport distinguish_symmetric(const SymTensor& M, std::uint64_t q, std::size_t m,
                                        std::size_t n_prime, const GuessPolicy& policy) {
  if (M.k != 2) throw std::invalid_argument("distinguish_symmetric: expects a matrix (k = 2)");
  return distinguish_tensor_k(M, q, m, n_prime, policy);
}

DistinguishReport distinguish_partite(const PartiteTensor& T, std::uint64_t q, std::size_t m,
                                      std::size_t n_prime) {
  const GaloisField& f = field_for_order(q);
  const std::size_t t = f.degree();
  const std::size_t l1 = T.l1, l2 = T.l2;
  if (l1 > 6 || l2 > 6) throw std::invalid_argument("distinguish_partite: sides above 6 are not searched");
  if (l1 * l2 < 2 * t) throw std::invalid_argument("distinguish_partite: slice too small for the layout");
  const std::size_t h = (l1 * l2 + 1) / 2;

  DistinguishReport rep;
  std::vector<std::size_t> g1(l1), g2(l2);
  std::iota(g1.begin(), g1.end(), std::size_t{0});
  std::vector<std::uint64_t> alphas(T.n), betas(T.n);
  // Cell c of the original layout sits at (g1[c / l2], g2[c % l2]).
  std::vector<std::size_t> offs_a(t), offs_b(t);
  do {
    std::iota(g2.begin(), g2.end(), std::size_t{0});
    do {
      for (std::size_t c = 0; c < t; ++c) {
        offs_a[c] = T.index(g1[c / l2], g2[c % l2], 0);
        offs_b[c] = T.index(g1[(h + c) / l2], g2[(h + c) % l2], 0);
      }
      for (std::size_t j = 0; j < T.n; ++j) {
        std::uint64_t a = 0, b = 0;
        for (std::size_t c = 0; c < t; ++c) {
          a |= std::uint64_t{T.bit(offs_a[c] + j)} << c;
          b |= std::uint64_t{T.bit(offs_b[c] + j)} << c;
        }
        alphas[j] = a;
        betas[j] = b;
      }
      ++rep.guesses_tried;
      const ExtractResult r = extract_and_decode(f, alphas, betas, m, n_prime);
      rep.threshold = r.threshold;
      rep.unique_pairs = r.unique_pairs;
      if (r.accepted) {
        rep.decision = 1;
        rep.accepted_polynomial = r.poly;
        rep.agreement_count = r.agreements;
        return rep;
      }
    } while (std::next_permutation(g2.begin(), g2.end()));
  } while (std::next_permutation(g1.begin(), g1.end()));
  return rep;
}

}  // namespace lowdeg
