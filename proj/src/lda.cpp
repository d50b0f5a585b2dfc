#include "lowdeg/lda.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace lowdeg {

Rational to_rational(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("to_rational: non-finite value");
  if (x == 0.0) return Rational(0);
  int e = 0;
  const double frac = std::frexp(x, &e);  // x = frac 2^e, 0.5 <= |frac| < 1
  const auto mant = static_cast<std::int64_t>(std::ldexp(frac, 53));
  BigInt num = mant;
  e -= 53;
  if (e >= 0) return Rational(num << e);
  return Rational(num, BigInt(1) << -e);
}

double to_double(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (num == 0) return 0.0;
  const bool neg = num < 0;
  if (neg) num = -num;
  const long s = 64 + static_cast<long>(msb(den)) - static_cast<long>(msb(num));
  BigInt q = s >= 0 ? BigInt((num << s) / den) : BigInt(num / (den << -s));
  const double v = std::ldexp(q.convert_to<double>(), static_cast<int>(-s));
  return neg ? -v : v;
}

Rational mu_moment(const Rational& gamma, unsigned j) {
  if (j == 0) return Rational(1);
  Rational v = gamma / Rational(j + 1);
  return (j % 2 == 1) ? Rational(-v) : v;
}

Rational eval_poly(const std::vector<Rational>& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rational mu_inner(const Rational& gamma, const std::vector<Rational>& p, const std::vector<Rational>& q) {
  std::vector<Rational> mom(p.size() + q.size());
  for (unsigned j = 0; j < mom.size(); ++j) mom[j] = mu_moment(gamma, j);
  Rational s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    for (std::size_t j = 0; j < q.size(); ++j) s += p[i] * q[j] * mom[i + j];
  }
  return s;
}

double OrthoBasis::normalized(unsigned k, double x) const {
  if (k > degree) throw std::out_of_range("OrthoBasis::normalized: degree too large");
  return to_double(eval_poly(psi[k], to_rational(x))) / std::sqrt(to_double(norm2[k]));
}

OrthoBasis build_ortho_basis(const Rational& gamma, unsigned d) {
  if (!(gamma > 0 && gamma <= 1)) throw std::invalid_argument("build_ortho_basis: gamma outside (0, 1]");
  OrthoBasis b;
  b.gamma = gamma;
  b.degree = d;
  std::vector<Rational> mom(2 * d + 1);
  for (unsigned j = 0; j <= 2 * d; ++j) mom[j] = mu_moment(gamma, j);
  auto inner = [&](const std::vector<Rational>& p, const std::vector<Rational>& q) {
    Rational s = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < q.size(); ++j) s += p[i] * q[j] * mom[i + j];
    return s;
  };
  for (unsigned k = 0; k <= d; ++k) {
    std::vector<Rational> v(k + 1, Rational(0));
    v[k] = 1;
    const std::vector<Rational> xk = v;
    for (unsigned i = 0; i < k; ++i) {
      const Rational c = inner(xk, b.psi[i]) / b.norm2[i];
      for (unsigned a = 0; a <= i; ++a) v[a] -= c * b.psi[i][a];
    }
    Rational nn = inner(v, v);
    if (nn <= 0) throw std::domain_error("build_ortho_basis: singular moment matrix");
    b.psi.push_back(std::move(v));
    b.norm2.push_back(std::move(nn));
  }
  return b;
}

std::vector<BigInt> shifted_legendre_coefficients(unsigned k) {
  std::vector<BigInt> c(k + 1);
  BigInt binom_k_i = 1;       // C(k, i)
  BigInt binom_ki_i = 1;      // C(k + i, i)
  for (unsigned i = 0; i <= k; ++i) {
    c[i] = binom_k_i * binom_ki_i;
    binom_k_i = binom_k_i * (k - i) / (i + 1);
    binom_ki_i = binom_ki_i * (k + i + 1) / (i + 1);
  }
  return c;
}

double shifted_legendre(unsigned k, double x) {
  // Floating Horner on the alternating coefficients cancels badly near -1/2.
  return to_double(shifted_legendre_exact(k, to_rational(x)));
}

Rational shifted_legendre_exact(unsigned k, const Rational& x) {
  const auto c = shifted_legendre_coefficients(k);
  Rational acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + Rational(*it);
  return acc;
}

AdvantageReport restricted_lda(double gamma, std::size_t m, double lambda_star, unsigned d) {
  if (m == 0) throw std::invalid_argument("restricted_lda: m must be positive");
  AdvantageReport r;
  r.method = AdvantageMethod::exact_restricted;
  r.degree = d;
  r.gamma = gamma;
  r.m = m;
  r.lambda_star = lambda_star;
  if (d == 0) return r;
  const OrthoBasis b = build_ortho_basis(to_rational(gamma), d);
  const Rational x = to_rational(lambda_star);
  Rational s = 0;
  for (unsigned k = 1; k <= d; ++k) {
    const Rational v = eval_poly(b.psi[k], x);
    s += v * v / b.norm2[k];
  }
  r.value = std::sqrt(to_double(s / Rational(m)));
  return r;
}

double legendre_restricted_lda(std::size_t m, double lambda_star, unsigned d) {
  double s = 0.0;
  for (unsigned k = 1; k <= d; ++k) {
    const double v = shifted_legendre(k, lambda_star);
    s += (2.0 * k + 1.0) * v * v;
  }
  return std::sqrt(s / static_cast<double>(m));
}

bool ev_ldlr_regime(double gamma, std::size_t n, std::size_t m, double lambda_star, unsigned d) {
  if (!(gamma > 0.0 && gamma < 1.0) || d == 0 || n == 0) return false;
  const double ratio = static_cast<double>(m) / static_cast<double>(n);
  return lambda_star > 0.0 && lambda_star <= 1.0 / (2.0 * d * (d + 1.0)) && ratio >= 0.25 && ratio <= 4.0;
}

AdvantageReport ev_ldlr_bound(double gamma, std::size_t n, std::size_t m, double lambda_star, unsigned d) {
  if (m == 0) throw std::invalid_argument("ev_ldlr_bound: m must be positive");
  AdvantageReport r;
  r.method = AdvantageMethod::closed_form_bound;
  r.degree = d;
  r.gamma = gamma;
  r.m = m;
  r.lambda_star = lambda_star;
  r.regime_ok = ev_ldlr_regime(gamma, n, m, lambda_star, d);
  double bracket = 0.0;
  for (unsigned k = 1; k <= d; ++k) {
    const double kk = k;
    bracket += (2 * kk + 1) * kk * kk * (kk + 1) * (kk + 1);
  }
  const double md = static_cast<double>(m);
  r.value = 1.0 / std::sqrt((1.0 - gamma) * md) + lambda_star * std::sqrt(1.0 / (gamma * md)) * std::sqrt(bracket);
  return r;
}

KwiseReport kwise_uniformity_test(const BitSampler& sampler,
                                  const std::vector<std::vector<std::size_t>>& subsets,
                                  std::size_t num_samples, double alpha, std::uint64_t seed) {
  if (subsets.empty()) throw std::invalid_argument("kwise_uniformity_test: no subsets");
  const std::size_t size = subsets.front().size();
  if (size == 0 || size > 20) throw std::invalid_argument("kwise_uniformity_test: subset size outside [1, 20]");
  for (const auto& s : subsets)
    if (s.size() != size) throw std::invalid_argument("kwise_uniformity_test: subsets differ in size");
  const std::size_t cells = std::size_t{1} << size;
  if (static_cast<double>(num_samples) / static_cast<double>(cells) < 5.0)
    throw std::invalid_argument("kwise_uniformity_test: expected cell count below 5");
  std::vector<std::vector<std::uint64_t>> counts(subsets.size(), std::vector<std::uint64_t>(cells, 0));
  Rng rng(derive_subseed(seed, 0, "kwise-samples"));
  for (std::size_t s = 0; s < num_samples; ++s) {
    const std::vector<std::uint64_t> w = sampler(rng);
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      std::size_t cell = 0;
      for (std::size_t b = 0; b < size; ++b) {
        const std::size_t c = subsets[i][b];
        if ((c >> 6) >= w.size()) throw std::out_of_range("kwise_uniformity_test: coordinate beyond sample");
        cell |= static_cast<std::size_t>((w[c >> 6] >> (c & 63)) & 1u) << b;
      }
      ++counts[i][cell];
    }
  }
  KwiseReport r;
  r.subsets = subsets;
  for (const auto& c : counts) r.pvalues.push_back(chi_square_uniform_pvalue(c));
  r.min_pvalue = *std::min_element(r.pvalues.begin(), r.pvalues.end());
  r.corrected_pvalue = std::min(1.0, r.min_pvalue * static_cast<double>(subsets.size()));
  r.passed = r.corrected_pvalue > alpha;
  return r;
}

KwiseReport kwise_uniformity_test(const BitSampler& sampler, std::size_t num_coords,
                                  std::size_t subset_size, std::size_t num_subsets,
                                  std::size_t num_samples, double alpha, std::uint64_t seed) {
  if (subset_size == 0 || subset_size > num_coords)
    throw std::invalid_argument("kwise_uniformity_test: bad subset size");
  if (static_cast<double>(binomial(num_coords, subset_size)) < static_cast<double>(num_subsets))
    throw std::invalid_argument("kwise_uniformity_test: not enough distinct subsets");
  Rng pick(derive_subseed(seed, 0, "kwise-subsets"));
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::vector<std::size_t>> subsets;
  while (subsets.size() < num_subsets) {
    std::set<std::size_t> s;
    while (s.size() < subset_size) s.insert(static_cast<std::size_t>(pick.uniform(num_coords)));
    std::vector<std::size_t> v(s.begin(), s.end());
    if (seen.insert(v).second) subsets.push_back(std::move(v));
  }
  return kwise_uniformity_test(sampler, subsets, num_samples, alpha, seed);
}

AdvantageReport empirical_advantage(std::span<const double> null_values,
                                    std::span<const double> planted_values, std::size_t resamples,
                                    std::uint64_t seed) {
  if (null_values.size() < 100 || planted_values.size() < 100)
    throw std::invalid_argument("empirical_advantage: need at least 100 trials per label");
  AdvantageReport r;
  r.method = AdvantageMethod::empirical;
  r.null_mean = mean(null_values);
  r.planted_mean = mean(planted_values);
  const double var0 = sample_variance(null_values);
  if (var0 == 0.0) {
    const double c = null_values.front();
    const bool constant = std::all_of(planted_values.begin(), planted_values.end(),
                                      [&](double v) { return v == c; });
    if (!constant) throw std::domain_error("empirical_advantage: zero null variance");
    r.degenerate = true;
    r.value = 0.0;
    r.ci = Interval{0.0, 0.0};
    r.null_mean_ci = Interval{c, c};
    r.planted_mean_ci = Interval{c, c};
    return r;
  }
  r.value = (r.planted_mean - r.null_mean) / std::sqrt(var0);
  Rng rng(derive_subseed(seed, 0, "bootstrap"));
  std::vector<double> adv, m0s, m1s;
  std::vector<double> b0(null_values.size()), b1(planted_values.size());
  for (std::size_t b = 0; b < resamples; ++b) {
    for (auto& v : b0) v = null_values[rng.uniform(null_values.size())];
    for (auto& v : b1) v = planted_values[rng.uniform(planted_values.size())];
    const double m0 = mean(b0), m1 = mean(b1), v0 = sample_variance(b0);
    m0s.push_back(m0);
    m1s.push_back(m1);
    if (v0 > 0.0) adv.push_back((m1 - m0) / std::sqrt(v0));
  }
  if (!adv.empty()) {
    r.ci = Interval{std::min(quantile(adv, 0.025), r.value), std::max(quantile(adv, 0.975), r.value)};
    r.null_mean_ci = Interval{quantile(m0s, 0.025), quantile(m0s, 0.975)};
    r.planted_mean_ci = Interval{quantile(m1s, 0.025), quantile(m1s, 0.975)};
  }
  return r;
}

AdvantageReport empirical_advantage(const MatrixStatistic& statistic, const MatrixSampler& null_sampler,
                                    const MatrixSampler& planted_sampler, std::size_t trials,
                                    std::uint64_t seed, std::size_t resamples) {
  std::vector<double> v0, v1;
  for (std::size_t i = 0; i < trials; ++i) {
    Rng r0(derive_subseed(seed, i, "null"));
    v0.push_back(statistic(null_sampler(r0)));
    Rng r1(derive_subseed(seed, i, "planted"));
    v1.push_back(statistic(planted_sampler(r1)));
  }
  return empirical_advantage(v0, v1, resamples, seed);
}

std::string to_string(AdvantageMethod m) {
  switch (m) {
    case AdvantageMethod::exact_restricted: return "exact_restricted";
    case AdvantageMethod::closed_form_bound: return "closed_form_bound";
    case AdvantageMethod::empirical: return "empirical";
  }
  return "unknown";
}

}  // namespace lowdeg
