#include "lowdeg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lowdeg {

double Matrix::frobenius() const {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

void SpectralParams::validate() const {
  if (n == 0 || m == 0) throw std::invalid_argument("SpectralParams: n and m must be positive");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("SpectralParams: gamma outside (0, 1)");
  if (!(lambda_star > 0.0)) throw std::invalid_argument("SpectralParams: lambda_star must be positive");
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw std::invalid_argument("SpectralParams: epsilon outside [0, 1)");
}

SpectralParams SpectralParams::defaults(std::size_t n, double epsilon) {
  if (n < 3) throw std::invalid_argument("SpectralParams::defaults: n must be at least 3");
  const double ln = std::log(static_cast<double>(n));
  SpectralParams p;
  p.n = n;
  p.m = n;
  p.gamma = ln * ln / static_cast<double>(n);
  p.lambda_star = p.gamma * ln;
  p.epsilon = epsilon;
  return p;
}

bool SpectralParams::default_scaling() const {
  const double ratio = static_cast<double>(m) / static_cast<double>(n);
  const double target = gamma * std::log(static_cast<double>(n));
  return ratio >= 0.25 && ratio <= 4.0 && std::abs(lambda_star - target) <= 1e-9 * target;
}

double sample_mu_gamma(double gamma, Rng& rng) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("sample_mu_gamma: gamma outside (0, 1)");
  if (rng.bernoulli(gamma)) return -rng.uniform01();
  return 0.0;
}

namespace {

Matrix low_rank_product(const std::vector<double>& lambda, const Matrix& U) {
  const std::size_t n = U.rows;
  std::vector<std::size_t> live;
  for (std::size_t k = 0; k < lambda.size(); ++k)
    if (lambda[k] != 0.0) live.push_back(k);
  const std::size_t r = live.size();
  // Compact copies: L holds lambda-scaled columns, R the plain ones.
  std::vector<double> L(n * r), R(n * r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < r; ++c) {
      R[i * r + c] = U(i, live[c]);
      L[i * r + c] = lambda[live[c]] * U(i, live[c]);
    }
  Matrix M(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < r; ++c) s += L[i * r + c] * R[j * r + c];
      M(i, j) = s;
      M(j, i) = s;
    }
  return M;
}

SpectralSample sample_spectral(const SpectralParams& p, Rng& rng, bool planted) {
  p.validate();
  SpectralGroundTruth gt;
  gt.lambda.resize(p.m);
  const std::size_t draws = planted ? p.m - 1 : p.m;
  for (std::size_t k = 0; k < draws; ++k) gt.lambda[k] = sample_mu_gamma(p.gamma, rng);
  if (planted) gt.lambda[p.m - 1] = p.lambda_star;
  gt.U = Matrix(p.n, p.m);
  for (double& v : gt.U.a) v = rng.normal();
  SpectralSample s;
  s.matrix = low_rank_product(gt.lambda, gt.U);
  s.ground_truth = std::move(gt);
  return s;
}

// Orthonormal basis of the numerical column space of the symmetric M,
// stored as r columns of length n (column c at q[c * n ...]).
std::vector<double> range_basis(const Matrix& M, double drop, std::size_t& r) {
  const std::size_t n = M.rows;
  // Rows of a symmetric matrix are its columns.
  std::vector<double> W = M.a;
  std::vector<double> norm2(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += W[i * n + k] * W[i * n + k];
    norm2[i] = s;
  }
  std::vector<char> used(n, 0);
  std::vector<double> Q;
  r = 0;
  while (r < n) {
    std::size_t best = n;
    double best_norm = -1.0;
    for (std::size_t i = 0; i < n; ++i)
      if (!used[i] && norm2[i] > best_norm) {
        best_norm = norm2[i];
        best = i;
      }
    if (best == n || std::sqrt(best_norm) <= drop) break;
    used[best] = 1;
    std::vector<double> v(W.begin() + best * n, W.begin() + (best + 1) * n);
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t c = 0; c < r; ++c) {
        const double* qc = &Q[c * n];
        double d = 0.0;
        for (std::size_t k = 0; k < n; ++k) d += qc[k] * v[k];
        for (std::size_t k = 0; k < n; ++k) v[k] -= d * qc[k];
      }
    double nv = 0.0;
    for (double x : v) nv += x * x;
    nv = std::sqrt(nv);
    if (nv <= drop) continue;
    for (double& x : v) x /= nv;
    Q.insert(Q.end(), v.begin(), v.end());
    ++r;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      double* w = &W[i * n];
      double d = 0.0;
      for (std::size_t k = 0; k < n; ++k) d += v[k] * w[k];
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        w[k] -= d * v[k];
        s += w[k] * w[k];
      }
      norm2[i] = s;
    }
  }
  return Q;
}

// Cyclic Jacobi on the r x r symmetric B; V accumulates the rotations.
std::size_t jacobi(std::vector<double>& B, std::vector<double>& V, std::size_t r, double target) {
  V.assign(r * r, 0.0);
  for (std::size_t i = 0; i < r; ++i) V[i * r + i] = 1.0;
  std::size_t sweeps = 0;
  for (; sweeps < 100; ++sweeps) {
    double off = 0.0;
    for (std::size_t p = 0; p < r; ++p)
      for (std::size_t q = p + 1; q < r; ++q) off += 2.0 * B[p * r + q] * B[p * r + q];
    if (std::sqrt(off) <= target) return sweeps;
    for (std::size_t p = 0; p + 1 < r; ++p)
      for (std::size_t q = p + 1; q < r; ++q) {
        const double bpq = B[p * r + q];
        if (bpq == 0.0) continue;
        const double theta = (B[q * r + q] - B[p * r + p]) / (2.0 * bpq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < r; ++k) {
          if (k == p || k == q) continue;
          const double bkp = B[k * r + p], bkq = B[k * r + q];
          const double np = c * bkp - s * bkq, nq = s * bkp + c * bkq;
          B[k * r + p] = B[p * r + k] = np;
          B[k * r + q] = B[q * r + k] = nq;
        }
        B[p * r + p] -= t * bpq;
        B[q * r + q] += t * bpq;
        B[p * r + q] = B[q * r + p] = 0.0;
        for (std::size_t k = 0; k < r; ++k) {
          const double vkp = V[k * r + p], vkq = V[k * r + q];
          V[k * r + p] = c * vkp - s * vkq;
          V[k * r + q] = s * vkp + c * vkq;
        }
      }
  }
  throw std::runtime_error("symmetric_eigen: Jacobi did not converge");
}

void check_square_symmetric(const Matrix& M, double tol) {
  if (M.rows != M.cols) throw std::invalid_argument("matrix is not square");
  const double bound = tol * M.frobenius();
  for (std::size_t i = 0; i < M.rows; ++i)
    for (std::size_t j = i + 1; j < M.cols; ++j)
      if (std::abs(M(i, j) - M(j, i)) > bound) throw std::invalid_argument("matrix is not symmetric");
}

}  // namespace

SpectralSample sample_null_spectral(const SpectralParams& p, Rng& rng) {
  return sample_spectral(p, rng, false);
}

SpectralSample sample_planted_spectral(const SpectralParams& p, Rng& rng) {
  return sample_spectral(p, rng, true);
}

SpectralSample mix_noise(const SpectralSample& M1, const SpectralSample& M0, double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw std::invalid_argument("mix_noise: epsilon outside [0, 1)");
  if (M1.matrix.rows != M0.matrix.rows || M1.matrix.cols != M0.matrix.cols)
    throw std::invalid_argument("mix_noise: shape mismatch");
  SpectralSample out;
  out.matrix = M1.matrix;
  if (eps == 0.0) return out;
  for (std::size_t i = 0; i < out.matrix.a.size(); ++i)
    out.matrix.a[i] = (1.0 - eps) * M1.matrix.a[i] + eps * M0.matrix.a[i];
  return out;
}

EigenDecomposition symmetric_eigen(const Matrix& M, double tol) {
  check_square_symmetric(M, tol);
  const std::size_t n = M.rows;
  const double fro = M.frobenius();
  EigenDecomposition out;
  out.dimension = n;
  if (fro == 0.0) {
    out.vectors = Matrix(n, 0);
    return out;
  }
  std::size_t r = 0;
  const std::vector<double> Q = range_basis(M, 1e-12 * fro, r);
  // MQ, then B = Q^T M Q symmetrised.
  std::vector<double> MQ(n * r, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < r; ++c) {
      const double* qc = &Q[c * n];
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += M(i, k) * qc[k];
      MQ[i * r + c] = s;
    }
  std::vector<double> B(r * r, 0.0);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += Q[a * n + k] * MQ[k * r + b];
      B[a * r + b] = s;
    }
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a + 1; b < r; ++b) B[a * r + b] = B[b * r + a] = 0.5 * (B[a * r + b] + B[b * r + a]);
  std::vector<double> V;
  out.sweeps = jacobi(B, V, r, tol * fro);
  std::vector<std::size_t> order(r);
  for (std::size_t i = 0; i < r; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return B[x * r + x] > B[y * r + y]; });
  out.values.resize(r);
  out.vectors = Matrix(n, r);
  for (std::size_t c = 0; c < r; ++c) {
    const std::size_t src = order[c];
    out.values[c] = B[src * r + src];
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t a = 0; a < r; ++a) s += Q[a * n + i] * V[a * r + src];
      out.vectors(i, c) = s;
    }
  }
  return out;
}

TopEigen top_eigenvalue(const Matrix& M, double tol) {
  const EigenDecomposition e = symmetric_eigen(M, tol);
  const std::size_t n = e.dimension;
  const std::size_t r = e.values.size();
  TopEigen out;
  out.vector.assign(n, 0.0);
  if (n == 0) return out;
  if (r > 0 && (r == n || e.values[0] >= 0.0)) {
    out.value = e.values[0];
    for (std::size_t i = 0; i < n; ++i) out.vector[i] = e.vectors(i, 0);
  } else {
    // Eigenvalue 0: project the coordinate vector least covered by the range.
    std::size_t best = 0;
    double best_w = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t c = 0; c < r; ++c) s += e.vectors(i, c) * e.vectors(i, c);
      if (1.0 - s > best_w) {
        best_w = 1.0 - s;
        best = i;
      }
    }
    out.vector[best] = 1.0;
    for (std::size_t c = 0; c < r; ++c) {
      const double d = e.vectors(best, c);
      for (std::size_t i = 0; i < n; ++i) out.vector[i] -= d * e.vectors(i, c);
    }
    double nv = 0.0;
    for (double x : out.vector) nv += x * x;
    nv = std::sqrt(nv);
    for (double& x : out.vector) x /= nv;
    out.value = 0.0;
  }
  double res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = -out.value * out.vector[i];
    for (std::size_t k = 0; k < n; ++k) s += M(i, k) * out.vector[k];
    res += s * s;
  }
  out.residual = std::sqrt(res);
  return out;
}

std::vector<double> all_eigenvalues(const Matrix& M, double tol) {
  const EigenDecomposition e = symmetric_eigen(M, tol);
  std::vector<double> v = e.values;
  v.resize(e.dimension, 0.0);
  std::stable_sort(v.begin(), v.end(), std::greater<>());
  return v;
}

double default_tau(const Matrix& M) { return 1e-8 * M.frobenius(); }

int spectral_distinguish(const Matrix& M, double tau) {
  if (tau < 0) throw std::invalid_argument("spectral_distinguish: tau must be nonnegative");
  return top_eigenvalue(M).value > tau ? 1 : 0;
}

int spectral_distinguish(const Matrix& M) { return spectral_distinguish(M, default_tau(M)); }

std::size_t positive_eigen_count(const Matrix& M, double tau) {
  const EigenDecomposition e = symmetric_eigen(M);
  return static_cast<std::size_t>(
      std::count_if(e.values.begin(), e.values.end(), [&](double v) { return v > tau; }));
}

double trace_power(const std::vector<double>& eigenvalues, unsigned p) {
  double s = 0.0;
  for (double v : eigenvalues) s += std::pow(v, static_cast<double>(p));
  return s;
}

RealTensor to_real_tensor(const Matrix& M) {
  if (M.rows != M.cols) throw std::invalid_argument("to_real_tensor: matrix is not square");
  RealTensor t;
  t.kind = 2;
  t.n = M.rows;
  t.k = 2;
  t.values = M.a;
  return t;
}

Matrix from_real_tensor(const RealTensor& t) {
  if (t.kind != 2 || t.values.size() != t.n * t.n)
    throw std::invalid_argument("from_real_tensor: not a dense matrix record");
  Matrix M(t.n, t.n);
  M.a = t.values;
  return M;
}

}  // namespace lowdeg
