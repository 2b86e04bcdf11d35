#pragma once

// Monte-Carlo cross-check of the analytic outcome covariance and MI.
//
// Outcomes are drawn as L z with L the Cholesky factor of the outcome
// covariance and z standard normal. Rows are generated in fixed-size chunks,
// chunk c using its own std::mt19937_64 stream seeded with {seed, c}, so a
// batch is identical for any thread count.

#include <cstdint>
#include <string>

#include "gdiscord/covariance.hpp"
#include "gdiscord/measurement.hpp"

namespace gdiscord {

inline constexpr const char* kSamplerName = "mt19937_64+normal_distribution/chunked-seed_seq";
inline constexpr long kSampleChunk = 1 << 15;

struct SampleBatch {
  int modes = 0;
  Matrix data;  ///< m x 2n, one outcome vector per row
  std::uint64_t seed = 0;

  long size() const { return static_cast<long>(data.rows()); }
};

SampleBatch sample_outcomes(const CovarianceMatrix& V, const MeasurementPlan& plan, long m, std::uint64_t seed,
                            int jobs = 0);

/// Same draw from an explicit outcome covariance.
SampleBatch sample_outcomes(const OutcomeCovariance& sigma, long m, std::uint64_t seed, int jobs = 0);

/// Unbiased sample covariance (mean subtracted).
Matrix empirical_covariance(const SampleBatch& batch);

struct MiEstimate {
  double mi = 0.0;
  double standard_error = 0.0;  ///< delete-a-group jackknife
  int jackknife_groups = 0;
};

/// Gaussian plug-in estimate: classical_mi of the empirical covariance.
/// Needs m >= 10 (2n)^2.
MiEstimate estimate_mi(const SampleBatch& batch, int jackknife_groups = 20);

}  // namespace gdiscord
