#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lowdeg/rng.hpp"
#include "lowdeg/spectral.hpp"
#include "lowdeg/stats.hpp"

namespace lowdeg {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// The exact value of a finite double.
Rational to_rational(double x);
double to_double(const Rational& r);

// E[x^j] under mu_gamma: 1 for j = 0, gamma (-1)^j / (j + 1) otherwise.
Rational mu_moment(const Rational& gamma, unsigned j);

// Polynomials are coefficient vectors, lowest degree first.
Rational eval_poly(const std::vector<Rational>& p, const Rational& x);
// E[p(x) q(x)] under mu_gamma.
Rational mu_inner(const Rational& gamma, const std::vector<Rational>& p, const std::vector<Rational>& q);

// Monic orthogonal polynomials psi[k] of degree k under mu_gamma, with their
// exact squared norms. The orthonormal psi_k is psi[k] / sqrt(norm2[k]).
struct OrthoBasis {
  Rational gamma;
  unsigned degree = 0;
  std::vector<std::vector<Rational>> psi;
  std::vector<Rational> norm2;

  double normalized(unsigned k, double x) const;
};

// Gram-Schmidt on 1, x, ..., x^d. gamma must lie in (0, 1]; gamma = 1 is
// the uniform law on [-1, 0].
OrthoBasis build_ortho_basis(const Rational& gamma, unsigned d);

// Coefficients C(k, i) C(k + i, i) of L_k(2x + 1).
std::vector<BigInt> shifted_legendre_coefficients(unsigned k);
// Exact sum at the exact value of x, rounded once.
double shifted_legendre(unsigned k, double x);
Rational shifted_legendre_exact(unsigned k, const Rational& x);

enum class AdvantageMethod { exact_restricted, closed_form_bound, empirical };

struct AdvantageReport {
  double value = 0.0;
  unsigned degree = 0;
  double gamma = 0.0;
  std::size_t m = 0;
  double lambda_star = 0.0;
  AdvantageMethod method = AdvantageMethod::exact_restricted;
  std::optional<Interval> ci;
  // Empirical only.
  bool degenerate = false;
  double null_mean = 0.0, planted_mean = 0.0;
  std::optional<Interval> null_mean_ci, planted_mean_ci;
  bool regime_ok = true;  // closed_form_bound only
};

// sqrt(sum_{k=1}^d psi_k(lambda*)^2 / m) with the sum formed exactly; an
// upper bound on the degree-d advantage of trace statistics sum_i q(lambda_i).
AdvantageReport restricted_lda(double gamma, std::size_t m, double lambda_star, unsigned d);

// The gamma = 1 value sqrt(sum_{k=1}^d (2k + 1) L_k(2 lambda* + 1)^2 / m),
// evaluated in floating point from the explicit coefficients.
double legendre_restricted_lda(std::size_t m, double lambda_star, unsigned d);

// 1/sqrt((1 - gamma) m) + lambda* sqrt(1/(gamma m)) sqrt(sum_{k=1}^d (2k+1) k^2 (k+1)^2).
// regime_ok: 0 < gamma < 1, lambda* <= 1/(2d(d+1)), n/4 <= m <= 4n.
AdvantageReport ev_ldlr_bound(double gamma, std::size_t n, std::size_t m, double lambda_star, unsigned d);
bool ev_ldlr_regime(double gamma, std::size_t n, std::size_t m, double lambda_star, unsigned d);

// Returns packed bits of one sample (bit c of the sample at word c / 64).
using BitSampler = std::function<std::vector<std::uint64_t>(Rng&)>;

struct KwiseReport {
  bool passed = false;
  double min_pvalue = 1.0;
  double corrected_pvalue = 1.0;  // min(1, subsets * min_pvalue)
  std::vector<double> pvalues;
  std::vector<std::vector<std::size_t>> subsets;
};

// Draws num_subsets distinct random subset_size-subsets of [num_coords] and
// num_samples samples, then tests each subset's joint law against uniform on
// {0,1}^subset_size. Passes iff the Bonferroni-corrected p-value exceeds
// alpha. Throws when a cell would expect fewer than 5 observations or
// subset_size > 20.
KwiseReport kwise_uniformity_test(const BitSampler& sampler, std::size_t num_coords,
                                  std::size_t subset_size, std::size_t num_subsets,
                                  std::size_t num_samples, double alpha, std::uint64_t seed);
KwiseReport kwise_uniformity_test(const BitSampler& sampler,
                                  const std::vector<std::vector<std::size_t>>& subsets,
                                  std::size_t num_samples, double alpha, std::uint64_t seed);

// (mean_P - mean_Q) / sd_Q with percentile bootstrap intervals for the ratio
// and for both means. Each side needs at least 100 values. Constant
// statistics give a degenerate report with value 0; zero null variance with
// any other values throws std::domain_error.
AdvantageReport empirical_advantage(std::span<const double> null_values,
                                    std::span<const double> planted_values,
                                    std::size_t resamples = 1000, std::uint64_t seed = 0);

using MatrixSampler = std::function<Matrix(Rng&)>;
using MatrixStatistic = std::function<double(const Matrix&)>;

// Trial i of each label draws from derive_subseed(seed, i, "null"/"planted").
AdvantageReport empirical_advantage(const MatrixStatistic& statistic, const MatrixSampler& null_sampler,
                                    const MatrixSampler& planted_sampler, std::size_t trials,
                                    std::uint64_t seed, std::size_t resamples = 1000);

std::string to_string(AdvantageMethod m);

}  // namespace lowdeg
