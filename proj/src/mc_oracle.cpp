#include "gdiscord/mc_oracle.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <omp.h>

#include "gdiscord/errors.hpp"

namespace gdiscord {

namespace {

struct Moments {
  Vector sum;
  Matrix outer;
  long count = 0;

  explicit Moments(int dim) : sum(Vector::Zero(dim)), outer(Matrix::Zero(dim, dim)) {}

  Moments& operator+=(const Moments& o) {
    sum += o.sum;
    outer += o.outer;
    count += o.count;
    return *this;
  }
  Moments operator-(const Moments& o) const {
    Moments out = *this;
    out.sum -= o.sum;
    out.outer -= o.outer;
    out.count -= o.count;
    return out;
  }

  Matrix covariance() const {
    const Vector mean = sum / static_cast<double>(count);
    Matrix cov = (outer - static_cast<double>(count) * mean * mean.transpose()) / static_cast<double>(count - 1);
    return 0.5 * (cov + cov.transpose());
  }
};

Moments rows_moments(const Matrix& data, long begin, long end) {
  Moments m(static_cast<int>(data.cols()));
  const auto block = data.middleRows(begin, end - begin);
  m.sum = block.colwise().sum().transpose();
  m.outer = block.transpose() * block;
  m.count = end - begin;
  return m;
}

// Per-range moments computed in parallel, merged in range order.
std::vector<Moments> chunked_moments(const Matrix& data, long chunk) {
  const long rows = static_cast<long>(data.rows());
  const long chunks = (rows + chunk - 1) / chunk;
  std::vector<Moments> parts(chunks, Moments(static_cast<int>(data.cols())));
#pragma omp parallel for schedule(static)
  for (long c = 0; c < chunks; ++c) {
    parts[c] = rows_moments(data, c * chunk, std::min(rows, (c + 1) * chunk));
  }
  return parts;
}

double mi_of(const Matrix& cov, int modes) {
  try {
    return classical_mi(OutcomeCovariance(modes, cov));
  } catch (const unphysical_state&) {
    throw numerical_error("degenerate empirical covariance");
  }
}

}  // namespace

SampleBatch sample_outcomes(const OutcomeCovariance& sigma, long m, std::uint64_t seed, int jobs) {
  if (m < 2) {
    throw input_error("need at least 2 samples");
  }
  const int dim = static_cast<int>(sigma.matrix().rows());
  Eigen::LLT<Matrix> llt(sigma.matrix());
  if (llt.info() != Eigen::Success) {
    throw unphysical_state("outcome covariance is not positive definite; cannot factorize");
  }
  const Matrix lower = llt.matrixL();

  SampleBatch batch;
  batch.modes = sigma.modes();
  batch.seed = seed;
  batch.data.resize(m, dim);
  const long chunks = (m + kSampleChunk - 1) / kSampleChunk;
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();

#pragma omp parallel for schedule(static) num_threads(threads)
  for (long c = 0; c < chunks; ++c) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(c)};
    std::mt19937_64 engine(seq);
    std::normal_distribution<double> normal;
    const long begin = c * kSampleChunk;
    const long end = std::min(m, begin + kSampleChunk);
    Matrix z(dim, end - begin);
    for (long row = 0; row < end - begin; ++row) {
      for (int k = 0; k < dim; ++k) z(k, row) = normal(engine);
    }
    batch.data.middleRows(begin, end - begin) = (lower * z).transpose();
  }
  return batch;
}

SampleBatch sample_outcomes(const CovarianceMatrix& V, const MeasurementPlan& plan, long m, std::uint64_t seed,
                            int jobs) {
  return sample_outcomes(outcome_covariance(V, plan), m, seed, jobs);
}

Matrix empirical_covariance(const SampleBatch& batch) {
  if (batch.size() < 2) {
    throw input_error("need at least 2 samples");
  }
  Moments total(static_cast<int>(batch.data.cols()));
  for (const auto& part : chunked_moments(batch.data, kSampleChunk)) total += part;
  return total.covariance();
}

MiEstimate estimate_mi(const SampleBatch& batch, int jackknife_groups) {
  const long dim = batch.data.cols();
  if (batch.size() < 10 * dim * dim) {
    throw input_error("plug-in MI needs at least " + std::to_string(10 * dim * dim) + " samples, got " +
                      std::to_string(batch.size()));
  }
  if (jackknife_groups < 2) {
    throw input_error("jackknife needs at least 2 groups");
  }
  const long group_size = batch.size() / jackknife_groups;
  std::vector<Moments> groups(jackknife_groups, Moments(static_cast<int>(dim)));
#pragma omp parallel for schedule(static)
  for (int g = 0; g < jackknife_groups; ++g) {
    const long begin = g * group_size;
    const long end = g + 1 == jackknife_groups ? batch.size() : begin + group_size;
    groups[g] = rows_moments(batch.data, begin, end);
  }
  Moments total(static_cast<int>(dim));
  for (const auto& g : groups) total += g;

  MiEstimate out;
  out.mi = mi_of(total.covariance(), batch.modes);
  out.jackknife_groups = jackknife_groups;
  std::vector<double> leave_out(jackknife_groups);
  double mean = 0.0;
  for (int g = 0; g < jackknife_groups; ++g) {
    leave_out[g] = mi_of((total - groups[g]).covariance(), batch.modes);
    mean += leave_out[g] / jackknife_groups;
  }
  double spread = 0.0;
  for (double value : leave_out) spread += (value - mean) * (value - mean);
  out.standard_error = std::sqrt(spread * (jackknife_groups - 1) / jackknife_groups);
  return out;
}

}  // namespace gdiscord
