#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lowdeg/field.hpp"
#include "lowdeg/reed_solomon.hpp"

namespace lowdeg {

struct Point {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

// Q(x, y) = sum coeffs[j][i] x^i y^j, weighted degree under weights (1, m-1).
struct BivariatePoly {
  const GaloisField* field = nullptr;
  std::size_t m = 2;
  std::vector<std::vector<std::uint64_t>> coeffs;  // indexed [y power][x power]

  std::uint64_t coeff(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, std::uint64_t v);
  bool is_zero() const;
  // -1 for the zero polynomial.
  long long weighted_degree() const;
  void trim();

  // Hasse derivative D_{a,b} Q evaluated at (x0, y0): the coefficient of
  // x^a y^b in Q(x + x0, y + y0).
  std::uint64_t hasse(std::size_t a, std::size_t b, std::uint64_t x0, std::uint64_t y0) const;

  // Q(x, p(x)) as a univariate polynomial in x (trimmed).
  std::vector<std::uint64_t> substitute(std::span<const std::uint64_t> p) const;

  friend BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& b);
};

// y - p(x).
BivariatePoly y_minus(const PolyFq& p);

struct DecodeResult {
  std::vector<PolyFq> polys;            // ascending coefficient order
  std::vector<std::size_t> agreements;  // parallel to polys
};

// Number of monomials x^i y^j with i + (m-1) j <= D (m >= 2).
std::size_t monomial_count(std::size_t m, std::size_t D);
// Smallest D whose monomial count exceeds the given number of constraints.
std::size_t gs_degree_bound(std::size_t m, std::size_t constraints);
// Constraint count for multiplicity r at each point: n r (r+1) / 2.
std::size_t gs_constraints(std::size_t n, std::size_t r);
// Smallest agreement t with t r > D(r) for some r in [1, r_cap], on n
// distinct points. This is the least t the decoder can serve under that cap.
std::size_t gs_min_agreement(std::size_t n, std::size_t m, std::size_t r_cap);

// Nonzero Q of weighted degree at most D vanishing with the given
// multiplicity at every point, found by dense Gaussian elimination. D is the
// smallest bound with more monomials than constraints. Requires m >= 2.
BivariatePoly gs_interpolate(const GaloisField& f, std::span<const Point> points, std::size_t m,
                             std::size_t multiplicity);

// Same kernel condition with per-point multiplicities, via Koetter's
// iterative interpolation. Returns the minimal weighted degree solution
// among polynomials of y-degree at most L.
BivariatePoly koetter_interpolate(const GaloisField& f, std::span<const Point> points,
                                  std::span<const std::size_t> multiplicities, std::size_t m,
                                  std::size_t L);

// All p with deg p < m and Q(x, p(x)) = 0 (Roth-Ruckenstein), each checked
// by substitution. Ascending coefficient order.
std::vector<PolyFq> y_roots(const BivariatePoly& Q, std::size_t m);

// Multiplicity used by list_decode: the smallest r with t r > D(r) when each
// distinct point carries multiplicity r times its repeat count. Returns 0 if
// no r up to r_limit works.
std::size_t gs_multiplicity(std::span<const std::size_t> repeat_counts, std::size_t m,
                            std::size_t t, std::size_t r_limit = 64);

// Every polynomial of degree < m agreeing with at least t points.
// Throws std::invalid_argument unless t > sqrt(|points| m). Repeated
// identical points count once per occurrence; see gs_multiplicity.
DecodeResult list_decode(const GaloisField& f, std::span<const Point> points, std::size_t m,
                         std::size_t t);

// Exhaustive scan of all q^m polynomials; requires q^m <= 2^20.
DecodeResult brute_force_decode(const GaloisField& f, std::span<const Point> points,
                                std::size_t m, std::size_t t);

std::size_t count_agreements(const GaloisField& f, std::span<const Point> points,
                             std::span<const std::uint64_t> p);

}  // namespace lowdeg
