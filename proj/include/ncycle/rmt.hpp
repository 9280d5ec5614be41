#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ncycle/polynomial.hpp"

namespace ncycle::rmt {

/// Monte Carlo settings for X = sum_i (U_i + U_i^*) with independent Haar
/// unitaries U_1..U_N of size m.
struct SimConfig {
  int matrix_size = 200;
  int gens = 2;
  int trials = 500;
  int max_power = 6;
  std::uint64_t seed = 0;
  /// Off-diagonal covariances pass when |z| <= z_threshold.
  double z_threshold = 4.0;
  /// Moment checks allow |estimate - target| <= 3 SE + bias_allowance / m^2.
  double bias_allowance = 0.0;
  unsigned threads = 1;

  /// Throws InvalidArgument unless m >= 2, N >= 1, T >= 2, p_max >= 1.
  void validate() const;
};

/// Independent generator for one trial, derived from (seed, trial) only.
std::mt19937_64 trial_stream(std::uint64_t seed, std::uint64_t trial);

/// Haar-distributed m x m unitary: QR of a complex Ginibre matrix with the
/// phases of R's diagonal moved into Q.
Eigen::MatrixXcd haar_unitary(int m, std::mt19937_64& rng);

/// Tr(X^p) for each trial and p = 0..max_power (column 0 holds m).
struct TraceSamples {
  SimConfig config;
  Eigen::MatrixXd traces;  // trials x (max_power + 1)
  double max_unitarity_error = 0.0;
  double max_hermiticity_error = 0.0;

  int trials() const { return static_cast<int>(traces.rows()); }
  int max_power() const { return static_cast<int>(traces.cols()) - 1; }
  /// Tr(f(X)) per trial. Throws InvalidArgument if deg f > max_power.
  Eigen::VectorXd polynomial_traces(const IntPolynomial& f) const;
  std::string to_csv() const;
};

/// Runs every trial; output depends only on the config, not on threads.
TraceSamples sample_traces(const SimConfig& config);

/// Traces of X^p from the eigenvalues of one Hermitian matrix.
Eigen::VectorXd power_traces(const Eigen::MatrixXcd& x, int max_power);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;

  /// (value - target) / std_error; 0 when both agree and the error is 0.
  double z(double target = 0.0) const;
};

/// Mean of Tr(X^p)/m, an estimate of phi(x^p).
Estimate estimate_phi(const TraceSamples& samples, int p);

/// True when |estimate - target| <= 3 SE + bias_allowance / m^2.
bool phi_consistent(const Estimate& e, double target, const SimConfig& config);

/// Sample covariance of Tr(f(X)) and Tr(g(X)) with a jackknife standard
/// error. Unnormalized traces.
Estimate fluctuation_covariance(const TraceSamples& samples,
                                const IntPolynomial& f, const IntPolynomial& g);

/// Covariance matrices of the centered traces in two bases: the
/// fluctuation polynomials P_1..P_kmax and the monomials x..x^kmax.
struct DiagonalizationReport {
  int k_max = 0;
  double z_threshold = 4.0;
  std::vector<IntPolynomial> basis;
  Eigen::MatrixXd p_cov, p_se, p_z;
  Eigen::MatrixXd mono_cov, mono_se, mono_z;

  /// Largest |z| over off-diagonal entries.
  double p_max_offdiag_z() const;
  double mono_max_offdiag_z() const;
  bool p_diagonal() const { return p_max_offdiag_z() <= z_threshold; }
  bool mono_has_offdiag() const { return mono_max_offdiag_z() > z_threshold; }
  bool diagonal_positive() const;

  std::string to_json() const;
  std::string to_csv() const;
};

/// Throws InvalidArgument unless 1 <= k_max <= samples.max_power().
DiagonalizationReport diagonalization_report(const TraceSamples& samples,
                                             int k_max);
DiagonalizationReport diagonalization_report(const SimConfig& config, int k_max);

}  // namespace ncycle::rmt
