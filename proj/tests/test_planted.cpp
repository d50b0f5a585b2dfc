#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "exact_marginals.hpp"
#include "lowdeg/lda.hpp"
#include "lowdeg/planted.hpp"
#include "lowdeg/stats.hpp"
#include "lowdeg/tensor.hpp"

using namespace lowdeg;

namespace {

std::vector<std::size_t> compose(const std::vector<std::size_t>& s2, const std::vector<std::size_t>& s1) {
  std::vector<std::size_t> r(s1.size());
  for (std::size_t i = 0; i < s1.size(); ++i) r[i] = s2[s1[i]];
  return r;
}

std::vector<std::size_t> inverse(const std::vector<std::size_t>& s) {
  std::vector<std::size_t> r(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) r[s[i]] = i;
  return r;
}

std::size_t popcount(const SymTensor& t) {
  std::size_t c = 0;
  for (auto w : t.words) c += static_cast<std::size_t>(__builtin_popcountll(w));
  return c;
}

}  // namespace

TEST(SymTensorTest, RankEnumeratesCanonicalOrder) {
  for (std::size_t k : {1u, 2u, 3u, 4u}) {
    const SymTensor t = SymTensor::zeros(9, k);
    std::vector<std::size_t> tup(k);
    std::iota(tup.begin(), tup.end(), std::size_t{0});
    std::size_t idx = 0;
    do {
      ASSERT_EQ(t.rank(tup), idx);
      if (k == 2) ASSERT_EQ(t.rank2(tup[0], tup[1]), idx);
      ++idx;
    } while (next_combination(tup, 9));
    EXPECT_EQ(idx, t.size());
  }
}

TEST(SymTensorTest, AccessorSortsAndZeroesRepeats) {
  SymTensor t = SymTensor::zeros(6, 3);
  const std::vector<std::size_t> s = {1, 3, 4};
  t.set_bit(t.rank(s), true);
  const std::vector<std::size_t> perm = {4, 1, 3};
  EXPECT_TRUE(t.at(perm));
  const std::vector<std::size_t> rep = {1, 1, 4};
  EXPECT_FALSE(t.at(rep));
}

TEST(NullSamplers, SmallestMatrixAndMean) {
  Rng rng(1);
  const SymTensor t = sample_null_matrix(2, rng);
  EXPECT_EQ(t.size(), 1u);
  EXPECT_THROW(sample_null_matrix(1, rng), std::invalid_argument);
  std::size_t ones = 0;
  for (int i = 0; i < 10000; ++i) ones += popcount(sample_null_matrix(16, rng));
  EXPECT_NEAR(static_cast<double>(ones) / (10000.0 * 120), 0.5, 0.02);
  Rng a(7), b(7);
  EXPECT_EQ(sample_null_tensor(12, 3, a), sample_null_tensor(12, 3, b));
}

TEST(Packing, PackSide) {
  EXPECT_EQ(pack_side(9, 2), 9u);
  EXPECT_EQ(pack_side(9, 3), 3u);
  EXPECT_EQ(pack_side(10, 3), 4u);
  EXPECT_EQ(pack_side(9, 4), 3u);
  EXPECT_EQ(pack_side(8, 4), 2u);
}

TEST(Packing, DegreeTwoIsBinaryEncode) {
  const auto& f = make_field(5);
  Rng rng(2);
  for (std::uint64_t v = 0; v < 32; ++v) {
    const FieldElem a(f, v);
    EXPECT_EQ(binary_pack_k(a, 2, rng), binary_encode(a));
  }
}

TEST(Packing, ExhaustiveRoundTripGf512) {
  const auto& f = make_field(9);
  Rng rng(3);
  for (std::uint64_t v = 0; v < 512; ++v) {
    const auto cells = binary_pack_k(FieldElem(f, v), 3, rng);
    ASSERT_EQ(cells.size(), 9u);
    EXPECT_EQ(binary_unpack_k(f, cells, 3).value(), v);
  }
}

TEST(Packing, PaddingIsRandomAndIgnored) {
  const auto& f = make_field(5);  // l = 3 for k = 3: 9 cells, 4 padding
  Rng rng(4);
  std::size_t pad_ones = 0;
  for (int i = 0; i < 2000; ++i) {
    const FieldElem a(f, static_cast<std::uint64_t>(i % 32));
    auto cells = binary_pack_k(a, 3, rng);
    ASSERT_EQ(cells.size(), 9u);
    for (std::size_t c = 5; c < 9; ++c) pad_ones += cells[c];
    cells[8] ^= 1;
    EXPECT_EQ(binary_unpack_k(f, cells, 3), a);
  }
  EXPECT_NEAR(pad_ones / 8000.0, 0.5, 0.03);
  EXPECT_THROW(binary_unpack_k(f, std::vector<std::uint8_t>(8, 0), 3), std::invalid_argument);
}

TEST(PlantedMatrix, Preconditions) {
  Rng rng(5);
  EXPECT_THROW(sample_planted_matrix(16, 8, 4, rng), std::invalid_argument);    // q < n
  EXPECT_THROW(sample_planted_matrix(14, 16, 4, rng), std::invalid_argument);   // 8 > ceil(14/2)
  EXPECT_THROW(sample_planted_matrix(16, 16, 1, rng), std::invalid_argument);   // m < 2
  EXPECT_THROW(sample_planted_tensor(16, 1, 16, 2, rng), std::invalid_argument);
  EXPECT_THROW(sample_planted_tensor(14, 3, 16, 2, rng), std::invalid_argument);  // (2k-2) l = 8 > 7
  EXPECT_NO_THROW(sample_planted_matrix(16, 16, 4, rng));
}

TEST(PlantedMatrix, IdentityPlacementReadsBack) {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = sample_planted_matrix(40, 64, 5, rng, true);
    const auto& es = s.witness.evalset;
    const auto& f = *es.field;
    ASSERT_EQ(es.size(), 20u);
    for (std::size_t j = 0; j < es.size(); ++j) {
      std::vector<std::uint8_t> a(6), b(6);
      for (std::size_t r = 0; r < 6; ++r) {
        a[r] = s.tensor.bit(s.tensor.rank2(r, 20 + j));
        b[r] = s.tensor.bit(s.tensor.rank2(6 + r, 20 + j));
      }
      EXPECT_EQ(binary_decode(f, a).value(), es.alphas[j]);
      EXPECT_EQ(binary_decode(f, b).value(), es.betas[j]);
    }
  }
}

TEST(PlantedMatrix, WitnessRebuildsBitExact) {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = sample_planted_matrix(64, 64, 4, rng);
    EXPECT_EQ(rebuild_planted(s.witness), s.tensor);
    EXPECT_TRUE(is_permutation_of_range(s.witness.sigma));
  }
  for (int trial = 0; trial < 5; ++trial) {
    const auto s = sample_planted_tensor(40, 3, 64, 3, rng);
    EXPECT_EQ(rebuild_planted(s.witness), s.tensor);
  }
}

TEST(PlantedTensor, DegreeTwoEqualsMatrixSampler) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng a(seed), b(seed);
    const auto x = sample_planted_tensor(32, 2, 32, 3, a);
    const auto y = sample_planted_matrix(32, 32, 3, b);
    EXPECT_EQ(x.tensor, y.tensor);
    EXPECT_EQ(x.witness.sigma, y.witness.sigma);
  }
}

TEST(PlantedTensor, OrderThreeIdentityPlacementReadsBack) {
  Rng rng(8);
  const auto s = sample_planted_tensor(32, 3, 512, 3, rng, true);  // l = 3, regions [0,6) and [6,12)
  const auto& es = s.witness.evalset;
  const auto& f = *es.field;
  for (std::size_t j = 0; j < es.size(); ++j) {
    std::vector<std::uint8_t> a(9), b(9);
    for (std::size_t c = 0; c < 9; ++c) {
      const std::vector<std::size_t> ta = {c / 3, 6 + c % 3, 16 + j};
      const std::vector<std::size_t> tb = {3 + c / 3, 9 + c % 3, 16 + j};
      a[c] = s.tensor.at(ta);
      b[c] = s.tensor.at(tb);
    }
    EXPECT_EQ(binary_unpack_k(f, a, 3).value(), es.alphas[j]);
    EXPECT_EQ(binary_unpack_k(f, b, 3).value(), es.betas[j]);
  }
}

TEST(PlantedMatrix, ExactSingleEntryMarginalsUniform) {
  // q = 4, m = 2 on the smallest matrix whose placement fits: n = 8, N = 4 columns.
  const auto law = exact::planted_matrix_entry_law(2, 2, 8);
  for (std::size_t e = 0; e < law.pre_ones.size(); ++e) {
    EXPECT_EQ(2 * law.pre_ones[e], law.pre_total) << e;
    EXPECT_EQ(2 * law.post_ones[e], law.post_total) << e;
  }
}

TEST(PlantedMatrix, MMinusOneWiseUniformChiSquare) {
  const BitSampler planted = [](Rng& r) { return sample_planted_matrix(16, 16, 4, r).tensor.words; };
  const auto rep = kwise_uniformity_test(planted, 120, 3, 30, 20000, 0.001, 77);
  EXPECT_TRUE(rep.passed) << rep.corrected_pvalue;
  // Three bits of one data column, before relabeling.
  const BitSampler fixed = [](Rng& r) { return sample_planted_matrix(16, 16, 4, r, true).tensor.words; };
  const SymTensor shape = SymTensor::zeros(16, 2);
  const std::vector<std::vector<std::size_t>> column = {
      {shape.rank2(0, 8), shape.rank2(4, 8), shape.rank2(7, 8)},
      {shape.rank2(4, 9), shape.rank2(5, 9), shape.rank2(4, 10)}};
  EXPECT_TRUE(kwise_uniformity_test(fixed, column, 20000, 0.001, 78).passed);
}

TEST(PlantedTensor, OrderThreeMMinusOneWiseChiSquare) {
  const BitSampler planted = [](Rng& r) { return sample_planted_tensor(16, 3, 16, 3, r).tensor.words; };
  const auto rep = kwise_uniformity_test(planted, 560, 2, 30, 20000, 0.001, 79);
  EXPECT_TRUE(rep.passed) << rep.corrected_pvalue;
}

TEST(Noise, ZeroIsIdentityAndFlipRate) {
  Rng rng(9);
  const SymTensor t = sample_null_matrix(64, rng);
  EXPECT_EQ(apply_noise(t, 0.0, rng), t);
  std::size_t flips = 0, total = 0;
  for (int i = 0; i < 200; ++i) {
    const SymTensor u = apply_noise(t, 0.2, rng);
    for (std::size_t w = 0; w < t.words.size(); ++w)
      flips += static_cast<std::size_t>(__builtin_popcountll(t.words[w] ^ u.words[w]));
    total += t.size();
  }
  EXPECT_NEAR(static_cast<double>(flips) / total, 0.10, 0.01);
  EXPECT_THROW(apply_noise(t, 1.5, rng), std::invalid_argument);
}

TEST(Noise, FullNoiseIsFresh) {
  Rng rng(10);
  const SymTensor zero = SymTensor::zeros(64, 2);
  std::size_t ones = 0;
  for (int i = 0; i < 100; ++i) ones += popcount(apply_noise(zero, 1.0, rng));
  EXPECT_NEAR(static_cast<double>(ones) / (100.0 * zero.size()), 0.5, 0.01);
}

TEST(Noise, Partite) {
  Rng rng(11);
  const auto p = sample_partite(64, 512, 4, false, rng).tensor;
  EXPECT_EQ(apply_noise(p, 0.0, rng), p);
  std::size_t flips = 0;
  for (int i = 0; i < 100; ++i) {
    const auto u = apply_noise(p, 0.2, rng);
    for (std::size_t w = 0; w < p.words.size(); ++w)
      flips += static_cast<std::size_t>(__builtin_popcountll(p.words[w] ^ u.words[w]));
  }
  EXPECT_NEAR(static_cast<double>(flips) / (100.0 * p.size()), 0.10, 0.01);
}

TEST(Relabeling, GroupActionLaws) {
  Rng rng(12);
  for (std::size_t k : {2u, 3u}) {
    const SymTensor t = sample_null_tensor(10, k, rng);
    std::vector<std::size_t> id(10);
    std::iota(id.begin(), id.end(), std::size_t{0});
    EXPECT_EQ(apply_relabeling(t, id), t);
    const auto s1 = rng.permutation(10), s2 = rng.permutation(10);
    EXPECT_EQ(apply_relabeling(apply_relabeling(t, s1), inverse(s1)), t);
    EXPECT_EQ(apply_relabeling(apply_relabeling(t, s1), s2), apply_relabeling(t, compose(s2, s1)));
    // Entry law: out at sorted(sigma(i)) equals in at i.
    std::vector<std::size_t> tup(k), mapped(k);
    std::iota(tup.begin(), tup.end(), std::size_t{0});
    const SymTensor u = apply_relabeling(t, s1);
    do {
      for (std::size_t p = 0; p < k; ++p) mapped[p] = s1[tup[p]];
      EXPECT_EQ(u.at(mapped), t.at(tup));
    } while (next_combination(tup, 10));
  }
  const SymTensor t = sample_null_matrix(5, rng);
  const std::vector<std::size_t> bad = {0, 1, 1, 3, 4};
  EXPECT_THROW(apply_relabeling(t, bad), std::invalid_argument);
  EXPECT_THROW(apply_relabeling(t, std::vector<std::size_t>{0, 1, 2}), std::invalid_argument);
}

TEST(Relabeling, PartiteLaws) {
  Rng rng(13);
  const auto t = sample_partite(20, 512, 4, false, rng).tensor;
  const auto p1 = rng.permutation(t.l1), p2 = rng.permutation(t.l2), p3 = rng.permutation(t.n);
  const auto u = apply_relabeling(t, p1, p2, p3);
  for (std::size_t a = 0; a < t.l1; ++a)
    for (std::size_t b = 0; b < t.l2; ++b)
      for (std::size_t j = 0; j < t.n; ++j) EXPECT_EQ(u.at(p1[a], p2[b], p3[j]), t.at(a, b, j));
  EXPECT_EQ(apply_relabeling(u, inverse(p1), inverse(p2), inverse(p3)), t);
}

TEST(Relabeling, PlantedLawIsInvariant) {
  // Entry means and pair products of sample vs. relabeled sample at n = 16.
  Rng rng(14);
  const auto tau = rng.permutation(16);
  const int T = 20000;
  const SymTensor shape = SymTensor::zeros(16, 2);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (int i = 0; i < 20; ++i) {
    const std::size_t a = rng.uniform(16), b = rng.uniform(16), c = rng.uniform(16);
    if (a == b || a == c || b == c) continue;
    pairs.push_back({shape.rank2(std::min(a, b), std::max(a, b)), shape.rank2(std::min(a, c), std::max(a, c))});
  }
  std::vector<double> mean0(120, 0), mean1(120, 0), prod0(pairs.size(), 0), prod1(pairs.size(), 0);
  for (int s = 0; s < T; ++s) {
    const SymTensor x = sample_planted_matrix(16, 16, 4, rng).tensor;
    const SymTensor y = apply_relabeling(sample_planted_matrix(16, 16, 4, rng).tensor, tau);
    for (std::size_t e = 0; e < 120; ++e) {
      mean0[e] += x.bit(e);
      mean1[e] += y.bit(e);
    }
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      prod0[p] += x.bit(pairs[p].first) && x.bit(pairs[p].second);
      prod1[p] += y.bit(pairs[p].first) && y.bit(pairs[p].second);
    }
  }
  const double se_mean = std::sqrt(2 * 0.25 / T);
  for (std::size_t e = 0; e < 120; ++e) EXPECT_NEAR(mean0[e] / T, mean1[e] / T, 5 * se_mean);
  const double se_prod = std::sqrt(2 * 0.25 * 0.75 / T);
  for (std::size_t p = 0; p < pairs.size(); ++p) EXPECT_NEAR(prod0[p] / T, prod1[p] / T, 5 * se_prod);
}

TEST(Partite, LayoutForDegree) {
  const auto L = PartiteLayout::for_degree(9);
  EXPECT_EQ(L.l1, 3u);
  EXPECT_EQ(L.l2, 6u);
  EXPECT_EQ(L.half(), 9u);
  const auto L4 = PartiteLayout::for_degree(4);
  EXPECT_EQ(L4.l1, 2u);
  EXPECT_EQ(L4.l2, 4u);
}

TEST(Partite, IdentityPlantedReadsBackAndRebuilds) {
  Rng rng(15);
  const auto s = sample_partite(64, 512, 4, true, rng, {}, true);
  const auto& es = s.witness.evalset;
  for (std::size_t j = 0; j < 64; ++j) {
    std::uint64_t a = 0, b = 0;
    for (std::size_t c = 0; c < 9; ++c) {
      a |= std::uint64_t{s.tensor.at(c / 6, c % 6, j)} << c;
      b |= std::uint64_t{s.tensor.at((9 + c) / 6, (9 + c) % 6, j)} << c;
    }
    EXPECT_EQ(a, es.alphas[j]);
    EXPECT_EQ(b, es.betas[j]);
  }
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = sample_partite(64, 512, 4, true, rng);
    EXPECT_EQ(rebuild_partite(p.witness), p.tensor);
  }
}

TEST(Partite, Preconditions) {
  Rng rng(16);
  EXPECT_THROW(sample_partite(16, 512, 4, true, rng, PartiteLayout{3, 5}), std::invalid_argument);
  EXPECT_THROW(sample_partite(16, 512, 4, true, rng, PartiteLayout{7, 7}), std::invalid_argument);
  EXPECT_THROW(sample_partite(16, 512, 1, true, rng), std::invalid_argument);
}

TEST(Partite, MMinusOneWiseChiSquare) {
  const BitSampler planted = [](Rng& r) { return sample_partite(16, 16, 3, true, r).tensor.words; };
  const auto rep = kwise_uniformity_test(planted, 2 * 4 * 16, 2, 30, 20000, 0.001, 80);
  EXPECT_TRUE(rep.passed) << rep.corrected_pvalue;
}

TEST(GaussianLift, SignsAndNormality) {
  Rng rng(17);
  const SymTensor t = sample_null_matrix(448, rng);
  const RealTensor r = gaussian_lift(t, rng);
  ASSERT_EQ(r.values.size(), t.size());
  EXPECT_GE(r.values.size(), 100000u);
  for (std::size_t i = 0; i < t.size(); ++i) ASSERT_EQ(r.values[i] > 0, t.bit(i));
  EXPECT_GT(ks_test_normal(r.values).pvalue, 0.001);
}

TEST(TensorIo, SymmetricBytes) {
  SymTensor t = SymTensor::zeros(4, 2);  // 6 entries
  t.set_bit(0, true);
  t.set_bit(2, true);
  t.set_bit(5, true);
  std::stringstream ss;
  write_tensor(ss, t);
  const std::string bytes = ss.str();
  const std::string want = std::string("LDT1") + '\x00' + '\x02' + std::string("\x04\x00\x00\x00", 4) + '\x25';
  EXPECT_EQ(bytes, want);
  EXPECT_EQ(std::get<SymTensor>(read_tensor(ss)), t);
}

TEST(TensorIo, PartiteAndRealRoundTrip) {
  Rng rng(18);
  const auto p = sample_partite(10, 512, 4, false, rng).tensor;
  std::stringstream ss;
  write_tensor(ss, p);
  EXPECT_EQ(ss.str().size(), 4 + 2 + 12 + (p.size() + 7) / 8);
  EXPECT_EQ(std::get<PartiteTensor>(read_tensor(ss)), p);
  const RealTensor r = gaussian_lift(sample_null_tensor(7, 3, rng), rng);
  std::stringstream rs;
  write_real_tensor(rs, r);
  const RealTensor back = read_real_tensor(rs);
  EXPECT_EQ(back.values, r.values);
  EXPECT_EQ(back.k, 3u);
  std::stringstream junk("XXXX");
  EXPECT_THROW(read_tensor(junk), std::runtime_error);
}
