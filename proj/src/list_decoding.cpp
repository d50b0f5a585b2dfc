#include "lowdeg/list_decoding.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "upoly.hpp"

namespace lowdeg {

namespace {

// C(i, a) mod 2 by Lucas' theorem.
inline bool binom_odd(std::size_t i, std::size_t a) { return (i & a) == a; }

using Rows = std::vector<std::vector<std::uint64_t>>;

void trim_rows(Rows& c) {
  for (auto& row : c) upoly::trim(row);
  while (!c.empty() && c.back().empty()) c.pop_back();
}

// Hasse derivative on raw storage; one multiplication per coefficient.
// mulx(v) must return v * x0.
template <class MulX>
std::uint64_t hasse_with(const GaloisField& f, const Rows& c, std::size_t a, std::size_t b,
                         MulX mulx, std::uint64_t y0) {
  std::uint64_t outer = 0;
  for (std::size_t j = c.size(); j-- > b;) {
    std::uint64_t inner = 0;
    if (binom_odd(j, b)) {
      const auto& row = c[j];
      for (std::size_t i = row.size(); i-- > a;) {
        inner = mulx(inner);
        if (binom_odd(i, a)) inner ^= row[i];
      }
    }
    outer = f.mul(outer, y0) ^ inner;
  }
  return outer;
}

std::uint64_t hasse_raw(const GaloisField& f, const Rows& c, std::size_t a, std::size_t b,
                        std::uint64_t x0, std::uint64_t y0) {
  return hasse_with(f, c, a, b, [&](std::uint64_t v) { return f.mul(v, x0); }, y0);
}

// Multiplication-by-constant table, worth building when the constant is
// reused many times in a small field.
constexpr std::uint64_t kConstTableMaxOrder = 1u << 12;

std::vector<std::uint32_t> const_table(const GaloisField& f, std::uint64_t c) {
  std::vector<std::uint32_t> tab(f.order());
  for (std::uint64_t v = 0; v < f.order(); ++v) tab[v] = static_cast<std::uint32_t>(f.mul(v, c));
  return tab;
}

}  // namespace

std::uint64_t BivariatePoly::coeff(std::size_t i, std::size_t j) const {
  if (j >= coeffs.size() || i >= coeffs[j].size()) return 0;
  return coeffs[j][i];
}

void BivariatePoly::set(std::size_t i, std::size_t j, std::uint64_t v) {
  if (coeffs.size() <= j) coeffs.resize(j + 1);
  if (coeffs[j].size() <= i) coeffs[j].resize(i + 1, 0);
  coeffs[j][i] = v;
}

bool BivariatePoly::is_zero() const {
  for (const auto& row : coeffs)
    for (auto v : row)
      if (v != 0) return false;
  return true;
}

long long BivariatePoly::weighted_degree() const {
  long long best = -1;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const int d = upoly::deg(coeffs[j]);
    if (d >= 0) best = std::max(best, static_cast<long long>(d + (m - 1) * j));
  }
  return best;
}

void BivariatePoly::trim() { trim_rows(coeffs); }

std::uint64_t BivariatePoly::hasse(std::size_t a, std::size_t b, std::uint64_t x0,
                                   std::uint64_t y0) const {
  return hasse_raw(*field, coeffs, a, b, x0, y0);
}

std::vector<std::uint64_t> BivariatePoly::substitute(std::span<const std::uint64_t> p) const {
  const upoly::Poly pp(p.begin(), p.end());
  upoly::Poly acc;
  for (std::size_t j = coeffs.size(); j-- > 0;) {
    acc = upoly::mul(*field, acc, pp);
    if (acc.size() < coeffs[j].size()) acc.resize(coeffs[j].size(), 0);
    for (std::size_t i = 0; i < coeffs[j].size(); ++i) acc[i] ^= coeffs[j][i];
    upoly::trim(acc);
  }
  return acc;
}

BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& b) {
  if (a.field != b.field) throw std::invalid_argument("BivariatePoly: field mismatch");
  BivariatePoly r;
  r.field = a.field;
  r.m = a.m;
  if (a.coeffs.empty() || b.coeffs.empty()) return r;
  r.coeffs.resize(a.coeffs.size() + b.coeffs.size() - 1);
  for (std::size_t ja = 0; ja < a.coeffs.size(); ++ja) {
    for (std::size_t jb = 0; jb < b.coeffs.size(); ++jb) {
      auto prod = upoly::mul(*a.field, a.coeffs[ja], b.coeffs[jb]);
      auto& dst = r.coeffs[ja + jb];
      if (dst.size() < prod.size()) dst.resize(prod.size(), 0);
      for (std::size_t i = 0; i < prod.size(); ++i) dst[i] ^= prod[i];
    }
  }
  r.trim();
  return r;
}

BivariatePoly y_minus(const PolyFq& p) {
  BivariatePoly q;
  q.field = p.field;
  q.m = std::max<std::size_t>(p.bound(), 2);
  q.coeffs.resize(2);
  q.coeffs[0] = p.coeffs;
  q.coeffs[1] = {1};
  q.trim();
  return q;
}

std::size_t monomial_count(std::size_t m, std::size_t D) {
  if (m < 2) throw std::invalid_argument("monomial_count: m must be at least 2");
  const std::size_t w = m - 1;
  const std::size_t J = D / w;
  return (J + 1) * (D + 1) - w * J * (J + 1) / 2;
}

std::size_t gs_degree_bound(std::size_t m, std::size_t constraints) {
  std::size_t lo = 0, hi = constraints;  // count(constraints) >= constraints + 1
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (monomial_count(m, mid) > constraints) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

std::size_t gs_constraints(std::size_t n, std::size_t r) { return n * r * (r + 1) / 2; }

std::size_t gs_min_agreement(std::size_t n, std::size_t m, std::size_t r_cap) {
  std::size_t best = SIZE_MAX;
  for (std::size_t r = 1; r <= r_cap; ++r) {
    const std::size_t D = gs_degree_bound(m, gs_constraints(n, r));
    best = std::min(best, D / r + 1);
  }
  return best;
}

BivariatePoly gs_interpolate(const GaloisField& f, std::span<const Point> points, std::size_t m,
                             std::size_t multiplicity) {
  if (points.empty()) throw std::invalid_argument("gs_interpolate: no points");
  if (multiplicity < 1) throw std::invalid_argument("gs_interpolate: multiplicity must be >= 1");
  if (m < 2) throw std::invalid_argument("gs_interpolate: m must be at least 2");
  const std::size_t r = multiplicity;
  const std::size_t C = gs_constraints(points.size(), r);
  const std::size_t D = gs_degree_bound(m, C);
  const std::size_t w = m - 1;

  std::vector<std::pair<std::size_t, std::size_t>> mono;  // (i, j)
  for (std::size_t j = 0; j * w <= D; ++j)
    for (std::size_t i = 0; i + j * w <= D; ++i) mono.emplace_back(i, j);
  const std::size_t N = mono.size();
  if (N <= C) throw std::logic_error("gs_interpolate: dimension precondition violated");

  // One row per (point, a, b) with a + b < r.
  std::vector<std::vector<std::uint64_t>> A;
  A.reserve(C);
  for (const Point& p : points) {
    for (std::size_t b = 0; b < r; ++b) {
      for (std::size_t a = 0; a + b < r; ++a) {
        std::vector<std::uint64_t> row(N, 0);
        for (std::size_t c = 0; c < N; ++c) {
          const auto [i, j] = mono[c];
          if (i < a || j < b || !binom_odd(i, a) || !binom_odd(j, b)) continue;
          row[c] = f.mul(f.pow(p.x, static_cast<std::int64_t>(i - a)),
                         f.pow(p.y, static_cast<std::int64_t>(j - b)));
        }
        A.push_back(std::move(row));
      }
    }
  }

  // Reduced row echelon form.
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < N && rank < A.size(); ++c) {
    std::size_t piv = rank;
    while (piv < A.size() && A[piv][c] == 0) ++piv;
    if (piv == A.size()) continue;
    std::swap(A[piv], A[rank]);
    const std::uint64_t inv = f.inv(A[rank][c]);
    for (auto& v : A[rank]) v = f.mul(v, inv);
    for (std::size_t k = 0; k < A.size(); ++k) {
      if (k == rank || A[k][c] == 0) continue;
      const std::uint64_t s = A[k][c];
      for (std::size_t cc = c; cc < N; ++cc) A[k][cc] ^= f.mul(s, A[rank][cc]);
    }
    pivot_col.push_back(c);
    ++rank;
  }

  // Set the first free column to 1 and solve for the pivots.
  std::vector<std::uint8_t> is_pivot(N, 0);
  for (auto c : pivot_col) is_pivot[c] = 1;
  std::size_t free_col = 0;
  while (is_pivot[free_col]) ++free_col;
  std::vector<std::uint64_t> sol(N, 0);
  sol[free_col] = 1;
  for (std::size_t k = 0; k < rank; ++k) sol[pivot_col[k]] = A[k][free_col];

  BivariatePoly Q;
  Q.field = &f;
  Q.m = m;
  for (std::size_t c = 0; c < N; ++c)
    if (sol[c] != 0) Q.set(mono[c].first, mono[c].second, sol[c]);
  Q.trim();
  return Q;
}

BivariatePoly koetter_interpolate(const GaloisField& f, std::span<const Point> points,
                                  std::span<const std::size_t> multiplicities, std::size_t m,
                                  std::size_t L) {
  if (m < 2) throw std::invalid_argument("koetter_interpolate: m must be at least 2");
  if (points.size() != multiplicities.size())
    throw std::invalid_argument("koetter_interpolate: multiplicity count mismatch");
  const std::size_t w = m - 1;
  std::vector<Rows> g(L + 1);
  std::vector<std::size_t> lead(L + 1);  // weighted degree of the leading monomial
  for (std::size_t j = 0; j <= L; ++j) {
    g[j].assign(j + 1, {});
    g[j][j] = {1};
    lead[j] = w * j;
  }
  std::vector<std::uint64_t> delta(L + 1);
  const bool tabulate = f.order() <= kConstTableMaxOrder;
  std::vector<std::uint32_t> xtab;
  for (std::size_t p = 0; p < points.size(); ++p) {
    const std::uint64_t x0 = points[p].x, y0 = points[p].y;
    const std::size_t r = multiplicities[p];
    if (tabulate) xtab = const_table(f, x0);
    const auto mulx = [&](std::uint64_t v) -> std::uint64_t {
      return tabulate ? xtab[v] : f.mul(v, x0);
    };
    for (std::size_t b = 0; b < r; ++b) {
      for (std::size_t a = 0; a + b < r; ++a) {
        std::size_t star = SIZE_MAX;
        for (std::size_t j = 0; j <= L; ++j) {
          delta[j] = hasse_with(f, g[j], a, b, mulx, y0);
          if (delta[j] != 0 && (star == SIZE_MAX || lead[j] < lead[star])) star = j;
        }
        if (star == SIZE_MAX) continue;
        const std::uint64_t star_inv = f.inv(delta[star]);
        const Rows& gs = g[star];
        for (std::size_t j = 0; j <= L; ++j) {
          if (j == star || delta[j] == 0) continue;
          const std::uint64_t s = f.mul(delta[j], star_inv);
          Rows& gj = g[j];
          if (gj.size() < gs.size()) gj.resize(gs.size());
          for (std::size_t yj = 0; yj < gs.size(); ++yj) {
            const auto& src = gs[yj];
            auto& dst = gj[yj];
            if (dst.size() < src.size()) dst.resize(src.size(), 0);
            for (std::size_t i = 0; i < src.size(); ++i) dst[i] ^= f.mul(s, src[i]);
          }
        }
        // g* <- (x + x0) g*
        for (auto& row : g[star]) {
          if (row.empty()) continue;
          row.push_back(0);
          for (std::size_t i = row.size() - 1; i > 0; --i) row[i] = row[i - 1] ^ mulx(row[i]);
          row[0] = mulx(row[0]);
        }
        ++lead[star];
      }
    }
  }
  std::size_t best = 0;
  for (std::size_t j = 1; j <= L; ++j)
    if (lead[j] < lead[best]) best = j;
  BivariatePoly Q;
  Q.field = &f;
  Q.m = m;
  Q.coeffs = std::move(g[best]);
  Q.trim();
  return Q;
}

namespace {

constexpr std::size_t kMaxRootNodes = 1u << 20;

void rr_search(const GaloisField& f, Rows Q, std::size_t depth, std::size_t m,
               std::vector<std::uint64_t>& prefix, std::vector<std::vector<std::uint64_t>>& out,
               std::size_t& nodes) {
  if (++nodes > kMaxRootNodes) throw std::runtime_error("y_roots: recursion budget exceeded");
  if (depth >= m) throw std::runtime_error("y_roots: recursion depth exceeded");
  // Divide out the largest power of x.
  std::size_t s = SIZE_MAX;
  for (const auto& row : Q) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] != 0) {
        s = std::min(s, i);
        break;
      }
    }
  }
  if (s == SIZE_MAX) throw std::runtime_error("y_roots: zero polynomial");
  if (s > 0)
    for (auto& row : Q)
      row.erase(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(std::min(s, row.size())));

  upoly::Poly h(Q.size(), 0);
  for (std::size_t j = 0; j < Q.size(); ++j) h[j] = Q[j].empty() ? 0 : Q[j][0];
  upoly::trim(h);
  if (upoly::deg(h) <= 0) return;
  for (std::uint64_t gamma : upoly::roots(f, h)) {
    prefix[depth] = gamma;
    if (depth + 1 == m) {
      out.push_back(prefix);
      continue;
    }
    // P(x, y) = Q(x, y + gamma), then Q'(x, y) = P(x, x y).
    const std::size_t J = Q.size();
    Rows next(J);
    for (std::size_t k = 0; k < J; ++k) {
      upoly::Poly acc;
      std::uint64_t gp = 1;  // gamma^(j-k)
      for (std::size_t j = k; j < J; ++j) {
        if (binom_odd(j, k) && gp != 0) {
          const auto& row = Q[j];
          if (acc.size() < row.size()) acc.resize(row.size(), 0);
          for (std::size_t i = 0; i < row.size(); ++i) acc[i] ^= f.mul(gp, row[i]);
        }
        gp = f.mul(gp, gamma);
      }
      upoly::trim(acc);
      if (!acc.empty()) acc.insert(acc.begin(), k, 0);
      next[k] = std::move(acc);
    }
    trim_rows(next);
    rr_search(f, std::move(next), depth + 1, m, prefix, out, nodes);
  }
  prefix[depth] = 0;
}

}  // namespace

std::vector<PolyFq> y_roots(const BivariatePoly& Q, std::size_t m) {
  if (Q.field == nullptr || Q.is_zero()) throw std::invalid_argument("y_roots: Q must be nonzero");
  if (m < 1) throw std::invalid_argument("y_roots: m must be at least 1");
  const GaloisField& f = *Q.field;
  Rows work = Q.coeffs;
  trim_rows(work);
  std::vector<std::vector<std::uint64_t>> cand;
  std::vector<std::uint64_t> prefix(m, 0);
  std::size_t nodes = 0;
  rr_search(f, std::move(work), 0, m, prefix, cand, nodes);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  std::vector<PolyFq> out;
  for (auto& c : cand) {
    if (Q.substitute(c).empty()) out.emplace_back(f, std::move(c));
  }
  return out;
}

std::size_t gs_multiplicity(std::span<const std::size_t> repeat_counts, std::size_t m,
                            std::size_t t, std::size_t r_limit) {
  for (std::size_t r = 1; r <= r_limit; ++r) {
    std::size_t C = 0;
    for (auto c : repeat_counts) C += (r * c) * (r * c + 1) / 2;
    if (t * r > gs_degree_bound(m, C)) return r;
  }
  return 0;
}

std::size_t count_agreements(const GaloisField& f, std::span<const Point> points,
                             std::span<const std::uint64_t> p) {
  std::size_t n = 0;
  for (const Point& pt : points) n += poly_eval(f, p, pt.x) == pt.y;
  return n;
}

DecodeResult list_decode(const GaloisField& f, std::span<const Point> points, std::size_t m,
                         std::size_t t) {
  if (m < 1) throw std::invalid_argument("list_decode: m must be at least 1");
  const std::size_t n = points.size();
  if (t * t <= n * m) throw std::invalid_argument("list_decode: requires t > sqrt(n m)");
  DecodeResult res;
  if (t > n) return res;

  if (m == 1) {
    std::map<std::uint64_t, std::size_t> count;
    for (const Point& p : points) ++count[p.y];
    for (auto [y, c] : count) {
      if (c >= t) {
        res.polys.emplace_back(f, std::vector<std::uint64_t>{y});
        res.agreements.push_back(c);
      }
    }
    return res;
  }

  std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> distinct;
  for (const Point& p : points) ++distinct[{p.x, p.y}];
  std::vector<Point> pts;
  std::vector<std::size_t> reps;
  for (const auto& [xy, c] : distinct) {
    pts.push_back({xy.first, xy.second});
    reps.push_back(c);
  }
  const std::size_t r = gs_multiplicity(reps, m, t);
  if (r == 0) throw std::invalid_argument("list_decode: repeated points push t below the GS bound");
  std::size_t C = 0;
  std::vector<std::size_t> mult(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    mult[i] = r * reps[i];
    C += mult[i] * (mult[i] + 1) / 2;
  }
  const std::size_t D = gs_degree_bound(m, C);
  const BivariatePoly Q = koetter_interpolate(f, pts, mult, m, D / (m - 1));
  if (Q.is_zero() || Q.weighted_degree() > static_cast<long long>(D))
    throw std::logic_error("list_decode: interpolation exceeded its degree bound");
  for (auto& p : y_roots(Q, m)) {
    const std::size_t a = count_agreements(f, points, p.coeffs);
    if (a >= t) {
      res.polys.push_back(std::move(p));
      res.agreements.push_back(a);
    }
  }
  return res;
}

DecodeResult brute_force_decode(const GaloisField& f, std::span<const Point> points,
                                std::size_t m, std::size_t t) {
  if (m < 1 || f.degree() * m > 20)
    throw std::invalid_argument("brute_force_decode: requires 1 <= m and q^m <= 2^20");
  DecodeResult res;
  const std::uint64_t q = f.order();
  const std::uint64_t total = std::uint64_t{1} << (f.degree() * m);
  std::vector<std::uint64_t> c(m, 0);
  for (std::uint64_t v = 0; v < total; ++v) {
    // coeffs[0] is the most significant digit, so the scan is in ascending order.
    std::uint64_t u = v;
    for (std::size_t j = m; j-- > 0;) {
      c[j] = u % q;
      u /= q;
    }
    const std::size_t a = count_agreements(f, points, c);
    if (a >= t) {
      res.polys.emplace_back(f, c);
      res.agreements.push_back(a);
    }
  }
  return res;
}

}  // namespace lowdeg
