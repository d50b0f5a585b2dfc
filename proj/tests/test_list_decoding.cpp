#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "lowdeg/list_decoding.hpp"
#include "upoly.hpp"

using namespace lowdeg;

namespace {

// Hasse derivative from the definition, with binomials from Pascal's triangle.
std::uint64_t hasse_oracle(const BivariatePoly& Q, std::size_t a, std::size_t b, std::uint64_t x0,
                           std::uint64_t y0) {
  const auto& f = *Q.field;
  static std::vector<std::vector<int>> pascal;
  if (pascal.empty()) {
    pascal.assign(200, std::vector<int>(200, 0));
    for (int n = 0; n < 200; ++n) {
      pascal[n][0] = 1;
      for (int k = 1; k <= n; ++k) pascal[n][k] = (pascal[n - 1][k - 1] + pascal[n - 1][k]) % 2;
    }
  }
  std::uint64_t s = 0;
  for (std::size_t j = b; j < Q.coeffs.size(); ++j)
    for (std::size_t i = a; i < Q.coeffs[j].size(); ++i)
      if (pascal[i][a] && pascal[j][b])
        s ^= f.mul(Q.coeffs[j][i], f.mul(f.pow(x0, static_cast<std::int64_t>(i - a)),
                                          f.pow(y0, static_cast<std::int64_t>(j - b))));
  return s;
}

std::vector<Point> random_points(const GaloisField& f, std::size_t n, Rng& rng) {
  std::vector<Point> pts(n);
  for (auto& p : pts) p = {rng.uniform(f.order()), rng.uniform(f.order())};
  return pts;
}

std::set<std::vector<std::uint64_t>> as_set(const DecodeResult& r) {
  std::set<std::vector<std::uint64_t>> s;
  for (const auto& p : r.polys) s.insert(p.coeffs);
  return s;
}

}  // namespace

TEST(ListDecoding, MonomialCounts) {
  // Weights (1, 1): monomials of total degree <= D.
  EXPECT_EQ(monomial_count(2, 0), 1u);
  EXPECT_EQ(monomial_count(2, 3), 10u);
  // Weights (1, 2), D = 4: y^0: 5, y^1: 3, y^2: 1.
  EXPECT_EQ(monomial_count(3, 4), 9u);
  EXPECT_EQ(gs_degree_bound(3, 8), 4u);
  EXPECT_EQ(gs_degree_bound(3, 9), 5u);
}

TEST(ListDecoding, MinAgreementAtDeskScale) {
  EXPECT_EQ(gs_min_agreement(189, 64, 1), 127u);
  EXPECT_EQ(gs_min_agreement(189, 64, 2), 119u);
}

TEST(ListDecoding, InterpolateSinglePoint) {
  const auto& f = make_field(4);
  const std::vector<Point> pts{{3, 9}};
  const auto Q = gs_interpolate(f, pts, 2, 1);
  EXPECT_FALSE(Q.is_zero());
  EXPECT_EQ(Q.hasse(0, 0, 3, 9), 0u);
}

TEST(ListDecoding, InterpolationVanishesWithMultiplicity) {
  const auto& f = make_field(4);
  Rng rng(17);
  for (int it = 0; it < 20; ++it) {
    const auto pts = random_points(f, 12, rng);
    for (std::size_t r : {1u, 2u, 3u}) {
      const auto Q = gs_interpolate(f, pts, 2, r);
      ASSERT_FALSE(Q.is_zero());
      EXPECT_LE(Q.weighted_degree(),
                static_cast<long long>(gs_degree_bound(2, gs_constraints(12, r))));
      for (const auto& p : pts)
        for (std::size_t b = 0; b < r; ++b)
          for (std::size_t a = 0; a + b < r; ++a) {
            ASSERT_EQ(hasse_oracle(Q, a, b, p.x, p.y), 0u);
            ASSERT_EQ(Q.hasse(a, b, p.x, p.y), 0u);
          }
    }
  }
}

TEST(ListDecoding, KoetterMatchesKernelConditionAndIsMinimal) {
  Rng rng(23);
  for (unsigned t : {3u, 4u, 5u}) {
    const auto& f = make_field(t);
    for (int it = 0; it < 20; ++it) {
      const std::size_t m = 2 + rng.uniform(2);
      const std::size_t n = 4 + rng.uniform(10);
      const std::size_t r = 1 + rng.uniform(3);
      const auto pts = random_points(f, n, rng);
      // Interpolation over repeated points is only meaningful once deduplicated.
      std::vector<Point> uniq;
      for (const auto& p : pts)
        if (std::find(uniq.begin(), uniq.end(), p) == uniq.end()) uniq.push_back(p);
      const std::vector<std::size_t> mult(uniq.size(), r);
      const std::size_t D = gs_degree_bound(m, gs_constraints(uniq.size(), r));
      const auto Qk = koetter_interpolate(f, uniq, mult, m, D / (m - 1));
      const auto Qg = gs_interpolate(f, uniq, m, r);
      ASSERT_FALSE(Qk.is_zero());
      EXPECT_LE(Qk.weighted_degree(), Qg.weighted_degree());
      for (const auto& p : uniq)
        for (std::size_t b = 0; b < r; ++b)
          for (std::size_t a = 0; a + b < r; ++a) ASSERT_EQ(hasse_oracle(Qk, a, b, p.x, p.y), 0u);
    }
  }
}

TEST(ListDecoding, RootOfLinearFactor) {
  const auto& f = make_field(4);
  const PolyFq p(f, {3, 7, 1});
  const auto roots = y_roots(y_minus(p), 3);
  ASSERT_EQ(roots.size(), 1u);
  EXPECT_EQ(roots[0], p);
}

TEST(ListDecoding, RootsOfProduct) {
  Rng rng(31);
  for (unsigned t : {3u, 4u, 8u, 13u}) {
    const auto& f = make_field(t);
    for (int it = 0; it < 20; ++it) {
      const std::size_t m = 1 + rng.uniform(4);
      const auto p1 = sample_message(f, m, rng);
      auto p2 = sample_message(f, m, rng);
      if (p1 == p2) continue;
      auto Q = y_minus(p1) * y_minus(p2);
      Q.m = std::max<std::size_t>(m, 2);
      const auto roots = y_roots(Q, m);
      std::set<std::vector<std::uint64_t>> got;
      for (const auto& r : roots) got.insert(r.coeffs);
      EXPECT_EQ(got, (std::set<std::vector<std::uint64_t>>{p1.coeffs, p2.coeffs}));
    }
  }
}

TEST(ListDecoding, RootsAgreeWithBruteForceSubstitution) {
  const auto& f = make_field(2);
  Rng rng(37);
  int empty_cases = 0;
  for (int it = 0; it < 300; ++it) {
    BivariatePoly Q;
    Q.field = &f;
    Q.m = 2;
    const std::size_t L = 1 + rng.uniform(3);
    for (std::size_t j = 0; j <= L; ++j)
      for (std::size_t i = 0; i < 4; ++i) Q.set(i, j, rng.uniform(4));
    Q.trim();
    if (Q.is_zero()) continue;
    std::set<std::vector<std::uint64_t>> expect;
    for (std::uint64_t c0 = 0; c0 < 4; ++c0)
      for (std::uint64_t c1 = 0; c1 < 4; ++c1) {
        const std::vector<std::uint64_t> c{c0, c1};
        if (Q.substitute(c).empty()) expect.insert(c);
      }
    std::set<std::vector<std::uint64_t>> got;
    for (const auto& r : y_roots(Q, 2)) got.insert(r.coeffs);
    EXPECT_EQ(got, expect);
    empty_cases += expect.empty();
  }
  EXPECT_GT(empty_cases, 0);
}

TEST(ListDecoding, UnivariateRootFindersAgree) {
  Rng rng(41);
  for (unsigned t : {1u, 2u, 4u, 8u, 12u}) {
    const auto& f = make_field(t);
    for (int it = 0; it < 30; ++it) {
      upoly::Poly h(1 + rng.uniform(6));
      for (auto& c : h) c = rng.uniform(f.order());
      // Plant a few roots.
      for (int k = 0; k < 3; ++k) h = upoly::mul(f, h, {rng.uniform(f.order()), 1});
      upoly::trim(h);
      if (h.empty()) continue;
      EXPECT_EQ(upoly::roots_exhaustive(f, h), upoly::roots_by_splitting(f, h));
    }
  }
  // Large field: planted roots are found.
  const auto& g = make_field(40);
  upoly::Poly h{1};
  std::set<std::uint64_t> planted;
  for (int k = 0; k < 5; ++k) {
    const std::uint64_t r = rng.uniform(g.order());
    planted.insert(r);
    h = upoly::mul(g, h, {r, 1});
  }
  h = upoly::mul(g, h, {1, 0, 1, 1});  // z^3 + z^2 + 1 contributes no roots in GF(2^40)
  const auto got = upoly::roots(g, h);
  EXPECT_EQ(std::set<std::uint64_t>(got.begin(), got.end()), planted);
}

TEST(ListDecoding, NoiselessCodeword) {
  const auto& f = make_field(5);
  Rng rng(43);
  const auto p = sample_message(f, 3, rng);
  std::vector<Point> pts;
  for (std::uint64_t x = 0; x < 12; ++x) pts.push_back({x, poly_eval(f, p.coeffs, x)});
  const auto res = list_decode(f, pts, 3, 12);
  ASSERT_EQ(res.polys.size(), 1u);
  EXPECT_EQ(res.polys[0], p);
  EXPECT_EQ(res.agreements[0], 12u);
}

TEST(ListDecoding, SevenOfTwelve) {
  const auto& f = make_field(4);
  Rng rng(47);
  for (int it = 0; it < 50; ++it) {
    const auto p = sample_message(f, 2, rng);
    std::vector<Point> pts;
    for (std::uint64_t x = 0; x < 12; ++x) {
      std::uint64_t y = poly_eval(f, p.coeffs, x);
      if (x >= 7) y ^= 1 + rng.uniform(15);
      pts.push_back({x, y});
    }
    const auto res = list_decode(f, pts, 2, 7);
    EXPECT_TRUE(std::find(res.polys.begin(), res.polys.end(), p) != res.polys.end());
    EXPECT_EQ(as_set(res), as_set(brute_force_decode(f, pts, 2, 7)));
  }
}

TEST(ListDecoding, RejectsBelowBound) {
  const auto& f = make_field(4);
  const std::vector<Point> pts(12, Point{1, 1});
  EXPECT_THROW(list_decode(f, pts, 2, 4), std::invalid_argument);  // 16 <= 24
  EXPECT_NO_THROW(list_decode(make_field(4), std::vector<Point>{{1, 2}, {2, 3}, {3, 4}}, 2, 3));
}

TEST(ListDecoding, ConstantsAreCounted) {
  const auto& f = make_field(3);
  const std::vector<Point> pts{{0, 5}, {1, 5}, {2, 5}, {3, 1}, {4, 1}, {5, 2}};
  const auto res = list_decode(f, pts, 1, 3);
  ASSERT_EQ(res.polys.size(), 1u);
  EXPECT_EQ(res.polys[0].coeffs, std::vector<std::uint64_t>{5});
  EXPECT_EQ(as_set(res), as_set(brute_force_decode(f, pts, 1, 3)));
}

TEST(ListDecoding, BruteForceLimits) {
  const auto& f = make_field(8);
  const std::vector<Point> pts{{1, 1}};
  EXPECT_THROW(brute_force_decode(f, pts, 3, 1), std::invalid_argument);
  EXPECT_TRUE(brute_force_decode(make_field(4), pts, 2, 2).polys.empty());
}

TEST(ListDecoding, RepeatedPointsHandled) {
  const auto& f = make_field(4);
  Rng rng(53);
  int decoded = 0;
  for (int it = 0; it < 100; ++it) {
    std::vector<Point> pts = random_points(f, 10, rng);
    pts.push_back(pts[0]);
    pts.push_back(pts[1]);
    const std::size_t n = pts.size(), m = 2;
    std::size_t t = static_cast<std::size_t>(std::sqrt(double(n * m))) + 1;
    while (t * t <= n * m) ++t;
    try {
      const auto res = list_decode(f, pts, m, t);
      EXPECT_EQ(as_set(res), as_set(brute_force_decode(f, pts, m, t)));
      ++decoded;
    } catch (const std::invalid_argument&) {
    }
  }
  EXPECT_GT(decoded, 50);
}

TEST(ListDecoding, RandomInstancesMatchOracle) {
  Rng rng(59);
  for (int it = 0; it < 100; ++it) {
    const unsigned t = 2 + static_cast<unsigned>(rng.uniform(4));
    const auto& f = make_field(t);
    const std::size_t m = 1 + rng.uniform(3);
    const std::size_t q = f.order();
    const std::size_t n = std::min<std::size_t>(2 + rng.uniform(19), q * q);
    std::size_t tmin = 1;
    while (tmin * tmin <= n * m) ++tmin;
    if (tmin > n) continue;
    const std::size_t need = tmin + rng.uniform(n - tmin + 1);
    const auto p = sample_message(f, m, rng);
    std::set<std::pair<std::uint64_t, std::uint64_t>> used;
    std::vector<Point> pts;
    const std::size_t good = std::min<std::size_t>(need + rng.uniform(2), std::min(n, q));
    for (auto x : rng.permutation(q)) {
      if (pts.size() == good) break;
      pts.push_back({x, poly_eval(f, p.coeffs, x)});
      used.insert({x, pts.back().y});
    }
    while (pts.size() < n) {
      Point c{rng.uniform(q), rng.uniform(q)};
      if (used.insert({c.x, c.y}).second) pts.push_back(c);
    }
    const auto a = list_decode(f, pts, m, need);
    EXPECT_EQ(as_set(a), as_set(brute_force_decode(f, pts, m, need)));
    for (std::size_t i = 0; i < a.polys.size(); ++i)
      EXPECT_EQ(a.agreements[i], count_agreements(f, pts, a.polys[i].coeffs));
  }
}
