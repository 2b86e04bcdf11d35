#pragma once

// Maximization of the measured classical MI over local Gaussian
// measurements: a deterministic coarse grid followed by Nelder-Mead
// refinement of the best grid points, with t reparametrized as sin^2(u) so
// the refiner is unconstrained.

#include <cstddef>
#include <string_view>

#include "gdiscord/covariance.hpp"
#include "gdiscord/measurement.hpp"

namespace gdiscord {

struct SearchOptions {
  int theta_points = 8;  ///< theta in {0, pi/8, ..., 7pi/8}
  int t_points = 5;      ///< t in {0, 1/4, 1/2, 3/4, 1}
  int symmetric_theta_points = 16;
  int symmetric_t_points = 21;
  std::size_t max_evaluations = 5'000'000;  ///< coarse grid budget
  int refine_starts = 6;
  double f_tol = 1e-10;
  double x_tol = 1e-8;
  long refine_evaluations = 20000;  ///< per start
  int jobs = 0;                     ///< OpenMP threads for the grid; 0 = default
  bool parallel = true;
};

enum class Regime { Homodyne, Heterodyne, Interior };

std::string_view to_string(Regime regime);

inline constexpr double kRegimeTolerance = 1e-6;

/// Homodyne iff every t is within 1e-6 of 0 or 1, Heterodyne iff every t is
/// within 1e-6 of 1/2, otherwise Interior.
Regime classify(const MeasurementPlan& plan);

struct OptimizationResult {
  double j_g = 0.0;
  MeasurementPlan plan;
  Regime regime = Regime::Interior;
  long evaluations = 0;
  bool converged = false;
};

/// Full 2n-parameter search. Among optima within 1e-9 the plan with the
/// larger sum of t wins, then the smaller sum of theta.
/// Throws unphysical_state for unphysical V, input_error for n > 8, and
/// numerical_error when the coarse grid exceeds options.max_evaluations.
OptimizationResult maximize_mi(const CovarianceMatrix& V, const SearchOptions& options = {});

/// Search restricted to a common (theta, t) on every mode. V must be
/// invariant under mode permutations (within 1e-9).
OptimizationResult maximize_mi_symmetric(const CovarianceMatrix& V, const SearchOptions& options = {});

bool is_permutation_symmetric(const CovarianceMatrix& V, double tolerance = 1e-9);

}  // namespace gdiscord
