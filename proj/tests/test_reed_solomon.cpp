#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <algorithm>
#include <map>

#include "lowdeg/reed_solomon.hpp"

using namespace lowdeg;

TEST(ReedSolomon, EvalExamples) {
  const auto& f = make_field(4);
  const FieldElem x(f, 0x2);
  EXPECT_EQ(poly_eval(PolyFq(f, {7}), x).value(), 7u);
  EXPECT_EQ(poly_eval(PolyFq(f, {0, 1}), x).value(), 2u);
  // 1 + 2 + 2*2, with 2*2 = x^2 = 4 under x^4 + x + 1.
  EXPECT_EQ(poly_eval(PolyFq(f, {1, 1, 1}), x).value(), 1u ^ 2u ^ 4u);
  EXPECT_EQ(poly_eval(PolyFq(f, {1, 1, 1}), x).value(), 1u ^ 2u ^ f.mul(2, 2));
  EXPECT_THROW(poly_eval(PolyFq(f, {1}), FieldElem(make_field(3), 1)), std::invalid_argument);
}

TEST(ReedSolomon, HornerMatchesPowerSum) {
  const auto& f = make_field(9);
  Rng rng(5);
  for (int it = 0; it < 200; ++it) {
    const auto p = sample_message(f, 6, rng);
    const std::uint64_t x = rng.uniform(f.order());
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < p.bound(); ++j)
      s ^= f.mul(p.coeffs[j], f.pow(x, static_cast<std::int64_t>(j)));
    EXPECT_EQ(poly_eval(f, p.coeffs, x), s);
  }
}

TEST(ReedSolomon, MessageDeterminism) {
  const auto& f = make_field(4);
  Rng a(42), b(42);
  EXPECT_EQ(sample_message(f, 5, a), sample_message(f, 5, b));
  EXPECT_EQ(sample_message(f, 1, a).bound(), 1u);
  EXPECT_THROW(sample_message(f, 0, a), std::invalid_argument);
}

TEST(ReedSolomon, MessageCoefficientsUniform) {
  const auto& f = make_field(4);
  Rng rng(1);
  std::vector<double> counts(16, 0);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) ++counts[sample_message(f, 1, rng).coeffs[0]];
  double chi2 = 0;
  for (double c : counts) chi2 += (c - draws / 16.0) * (c - draws / 16.0) / (draws / 16.0);
  const double p = boost::math::cdf(boost::math::complement(boost::math::chi_squared(15), chi2));
  EXPECT_GT(p, 0.001);
}

TEST(ReedSolomon, DistinctAlphasGiveEvaluations) {
  const auto& f = make_field(4);
  Rng rng(3);
  const auto p = sample_message(f, 3, rng);
  const auto es = evalset_from_alphas(f, p, {1, 2, 3, 4, 5}, rng);
  for (std::size_t i = 0; i < es.size(); ++i) {
    EXPECT_EQ(es.resampled[i], 0);
    EXPECT_EQ(es.betas[i], poly_eval(f, p.coeffs, es.alphas[i]));
  }
}

TEST(ReedSolomon, ForcedCollisionResamplesBoth) {
  const auto& f = make_field(4);
  const PolyFq p(f, {5, 9});
  const std::uint64_t value = poly_eval(f, p.coeffs, 7);
  std::map<std::uint64_t, int> first, second;
  for (std::uint64_t s = 0; s < 16000; ++s) {
    Rng rng(s);
    const auto es = evalset_from_alphas(f, p, {7, 7}, rng);
    EXPECT_EQ(es.resampled, (std::vector<std::uint8_t>{1, 1}));
    ++first[es.betas[0]];
    ++second[es.betas[1]];
  }
  // Both betas spread over the field instead of sticking to p(7).
  EXPECT_EQ(first.size(), 16u);
  EXPECT_EQ(second.size(), 16u);
  EXPECT_LT(first[value], 1400);
  EXPECT_LT(second[value], 1400);
}

TEST(ReedSolomon, MaskMatchesDuplicateCounts) {
  const auto& f = make_field(3);
  Rng rng(9);
  for (int it = 0; it < 500; ++it) {
    const auto p = sample_message(f, 2, rng);
    const auto es = sample_evalset(f, p, 6, rng);
    for (std::size_t i = 0; i < es.size(); ++i) {
      int count = 0;
      for (auto a : es.alphas) count += a == es.alphas[i];
      EXPECT_EQ(es.resampled[i] != 0, count > 1);
      if (count == 1) EXPECT_EQ(es.betas[i], poly_eval(f, p.coeffs, es.alphas[i]));
    }
  }
}

// Enumerates every outcome of (message, alphas, resampled betas) and returns
// the joint law of all N betas as counts over q^N cells (beta 0 least
// significant). Every (message, alphas) pair carries the same total mass q^N.
static std::vector<std::uint64_t> exact_joint_law(unsigned t, std::size_t m, std::size_t N) {
  const auto& f = make_field(t);
  const std::uint64_t q = f.order();
  std::uint64_t msgs = 1, cells = 1;
  for (std::size_t i = 0; i < m; ++i) msgs *= q;
  for (std::size_t i = 0; i < N; ++i) cells *= q;
  std::vector<std::uint64_t> law(cells, 0);
  std::vector<std::uint64_t> c(m), a(N), beta(N);
  for (std::uint64_t u = 0; u < msgs; ++u) {
    std::uint64_t v = u;
    for (auto& x : c) { x = v % q; v /= q; }
    for (std::uint64_t w = 0; w < cells; ++w) {
      std::uint64_t z = w;
      for (auto& x : a) { x = z % q; z /= q; }
      const auto mask = duplicate_mask(a);
      std::vector<std::size_t> free;
      for (std::size_t i = 0; i < N; ++i) {
        if (mask[i]) free.push_back(i);
        else beta[i] = poly_eval(f, c, a[i]);
      }
      std::uint64_t fills = 1;
      for (std::size_t i = 0; i < free.size(); ++i) fills *= q;
      const std::uint64_t weight = cells / fills;
      for (std::uint64_t s = 0; s < fills; ++s) {
        std::uint64_t y = s;
        for (auto i : free) { beta[i] = y % q; y /= q; }
        std::uint64_t cell = 0;
        for (std::size_t k = N; k-- > 0;) cell = cell * q + beta[k];
        law[cell] += weight;
      }
    }
  }
  return law;
}

static std::vector<std::uint64_t> marginal(const std::vector<std::uint64_t>& joint, std::uint64_t q,
                                           std::size_t N, const std::vector<std::size_t>& pos) {
  std::uint64_t cells = 1;
  for (std::size_t i = 0; i < pos.size(); ++i) cells *= q;
  std::vector<std::uint64_t> out(cells, 0);
  for (std::uint64_t cell = 0; cell < joint.size(); ++cell) {
    std::vector<std::uint64_t> digits(N);
    std::uint64_t z = cell;
    for (auto& d : digits) { d = z % q; z /= q; }
    std::uint64_t key = 0;
    for (std::size_t k = pos.size(); k-- > 0;) key = key * q + digits[pos[k]];
    out[key] += joint[cell];
  }
  return out;
}

static bool all_equal(const std::vector<std::uint64_t>& v) {
  return std::all_of(v.begin(), v.end(), [&](std::uint64_t c) { return c == v[0]; });
}

TEST(ReedSolomon, SingleBetaExactlyUniformQ4M2N4) {
  const auto joint = exact_joint_law(2, 2, 4);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_TRUE(all_equal(marginal(joint, 4, 4, {i})));
}

TEST(ReedSolomon, MMinusOneWiseUniformExact) {
  // q = 8, m = 3: every pair of betas among N = 4 is jointly uniform.
  const auto j8 = exact_joint_law(3, 3, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = i + 1; k < 4; ++k) EXPECT_TRUE(all_equal(marginal(j8, 8, 4, {i, k})));
  // q = 4, m = 2, N = 6.
  const auto j4 = exact_joint_law(2, 2, 6);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_TRUE(all_equal(marginal(j4, 4, 6, {i})));
}

TEST(ReedSolomon, TwoBetasOfAConstantAreCorrelated) {
  // The enumerator must be able to see dependence: with m = 1 two betas at
  // distinct alphas are equal.
  EXPECT_FALSE(all_equal(exact_joint_law(2, 1, 2)));
}
