#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lowdeg/rng.hpp"
#include "lowdeg/tensor.hpp"

namespace lowdeg {

// Dense row-major real matrix.
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<double> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  double frobenius() const;
  friend bool operator==(const Matrix&, const Matrix&) = default;
};

struct SpectralParams {
  std::size_t n = 0;
  std::size_t m = 0;
  double gamma = 0.0;
  double lambda_star = 0.0;
  double epsilon = 0.0;

  // Throws std::invalid_argument unless n, m >= 1, 0 < gamma < 1,
  // lambda_star > 0 and 0 <= epsilon < 1.
  void validate() const;
  // m = n, gamma = ln^2 n / n, lambda_star = gamma ln n (natural log).
  static SpectralParams defaults(std::size_t n, double epsilon = 0.0);
  // m within a factor 4 of n and lambda_star = gamma ln n to relative 1e-9.
  bool default_scaling() const;
};

struct SpectralGroundTruth {
  std::vector<double> lambda;  // length m
  Matrix U;                    // n x m
};

struct SpectralSample {
  Matrix matrix;
  std::optional<SpectralGroundTruth> ground_truth;
};

// -U[0,1] with probability gamma, else exactly 0.
double sample_mu_gamma(double gamma, Rng& rng);

// Draw order: lambda_1..lambda_m, then U row-major with N(0, 1) entries.
// M = U diag(lambda) U^T.
SpectralSample sample_null_spectral(const SpectralParams& p, Rng& rng);
// As the null sampler with lambda_m replaced by lambda_star (m - 1 draws).
SpectralSample sample_planted_spectral(const SpectralParams& p, Rng& rng);

// (1 - eps) M1 + eps M0; the ground truth is dropped.
SpectralSample mix_noise(const SpectralSample& M1, const SpectralSample& M0, double eps);

struct EigenDecomposition {
  std::vector<double> values;  // descending; zero eigenvalues of M outside its range are omitted
  Matrix vectors;              // n x values.size(), column i pairs with values[i]
  std::size_t dimension = 0;   // n
  std::size_t sweeps = 0;
};

// Compresses M to its numerical range (pivoted Gram-Schmidt on the columns,
// dropping residuals below 1e-12 ||M||_F) and diagonalises the compressed
// matrix by cyclic Jacobi until the off-diagonal Frobenius mass is at most
// tol ||M||_F. Throws std::invalid_argument when M is not symmetric within
// tol ||M||_F.
EigenDecomposition symmetric_eigen(const Matrix& M, double tol = 1e-10);

struct TopEigen {
  double value = 0.0;
  std::vector<double> vector;
  double residual = 0.0;  // ||M v - value v||
};

// Largest eigenvalue with a unit eigenvector. A rank-deficient M always has
// the eigenvalue 0, which wins when every computed eigenvalue is negative.
TopEigen top_eigenvalue(const Matrix& M, double tol = 1e-10);

// All n eigenvalues in descending order, zeros included.
std::vector<double> all_eigenvalues(const Matrix& M, double tol = 1e-10);

double default_tau(const Matrix& M);  // 1e-8 ||M||_F

// 1 iff top_eigenvalue(M) > tau.
int spectral_distinguish(const Matrix& M, double tau);
int spectral_distinguish(const Matrix& M);

// Number of eigenvalues strictly above tau.
std::size_t positive_eigen_count(const Matrix& M, double tau);

// tr(M^p) from the eigenvalues.
double trace_power(const std::vector<double>& eigenvalues, unsigned p);

// "LDR1" kind 2 record of the dense matrix.
RealTensor to_real_tensor(const Matrix& M);
Matrix from_real_tensor(const RealTensor& t);

}  // namespace lowdeg
