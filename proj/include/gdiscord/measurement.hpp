#pragma once

// Local Gaussian measurements and the classical mutual information of
// their outcomes.
//
// Each mode i is rotated by theta_i (Q -> Q cos + P sin), mixed with vacuum
// on a beam splitter of transmissivity t_i, and the two output ports are
// measured in Q and P respectively. t = 1 (or 0) is homodyne detection of
// the rotated Q (P) quadrature; t = 1/2 is heterodyne detection. Every pure
// single-mode Gaussian measurement is reachable this way.

#include <vector>

#include "gdiscord/covariance.hpp"

namespace gdiscord {

struct ModeSetting {
  double theta = 0.0;  ///< normalized to [0, pi)
  double t = 1.0;      ///< beam splitter transmissivity in [0, 1]
};

class MeasurementPlan {
 public:
  MeasurementPlan() = default;
  explicit MeasurementPlan(std::vector<ModeSetting> settings);

  static MeasurementPlan uniform(int n, double theta, double t);
  static MeasurementPlan homodyne(int n) { return uniform(n, 0.0, 1.0); }
  static MeasurementPlan heterodyne(int n) { return uniform(n, 0.0, 0.5); }

  int modes() const { return static_cast<int>(settings_.size()); }
  const std::vector<ModeSetting>& settings() const { return settings_; }
  const ModeSetting& operator[](int i) const { return settings_[i]; }

  double mean_t() const;
  double mean_theta() const;

 private:
  std::vector<ModeSetting> settings_;
};

/// Maps any real angle into [0, pi); the outcome statistics are pi-periodic.
double normalize_angle(double theta);

/// Covariance of the 2n classical outcomes (Q-out_1, P-out_1, ...).
class OutcomeCovariance {
 public:
  OutcomeCovariance(int modes, Matrix entries) : modes_(modes), entries_(std::move(entries)) {}

  int modes() const { return modes_; }
  const Matrix& matrix() const { return entries_; }

 private:
  int modes_;
  Matrix entries_;
};

/// Sigma = M V M^T + N with mode-local
///   M_i = [[ sqrt(t) cos, sqrt(t) sin], [-sqrt(1-t) sin, sqrt(1-t) cos]],
///   N_i = diag(1 - t, t).
OutcomeCovariance outcome_covariance(const CovarianceMatrix& V, const MeasurementPlan& plan);

/// Same map for a single mode's 2x2 block, used by the one-sided measures.
Matrix measurement_map(const ModeSetting& setting);
Matrix measurement_noise(const ModeSetting& setting);

/// Differential entropy (bits) of a normal variable: 0.5 log2(2 pi e variance).
double differential_entropy(double variance);

/// Multipartite classical MI in bits, determinant form:
///   0.5 log2(prod_i det Sigma_ii / det Sigma).
double classical_mi(const OutcomeCovariance& sigma);

/// The same quantity as a telescoping sum of conditional differential
/// entropies, sum_{i>=2} H(A_i) - H(A_i | A_{i-1} ... A_1), with
/// H(A_i) = G(V_Qi) + G(V_Pi|Qi). Slower; kept for cross-validation.
double classical_mi_chain(const OutcomeCovariance& sigma);

/// Shorthand for classical_mi(outcome_covariance(V, plan)).
double measured_mi(const CovarianceMatrix& V, const MeasurementPlan& plan);

}  // namespace gdiscord
