#include <doctest.h>

#include <cmath>
#include <random>

#include "gdiscord/errors.hpp"
#include "gdiscord/mc_oracle.hpp"
#include "gdiscord/states.hpp"
#include "test_support.hpp"

using namespace gdiscord;
using doctest::Approx;

TEST_CASE("vacuum samples have identity covariance") {
  const auto batch = sample_outcomes(vacuum(2), MeasurementPlan::homodyne(2), 100000, 1);
  CHECK(batch.size() == 100000);
  CHECK(batch.data.cols() == 4);
  const Matrix c = empirical_covariance(batch);
  CHECK((c - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 0.02);
  CHECK(batch.data.colwise().mean().cwiseAbs().maxCoeff() < 0.02);
}

TEST_CASE("EPR homodyne correlation coefficient") {
  const auto batch = sample_outcomes(epr(1.0), MeasurementPlan::homodyne(2), 1000000, 2);
  const Matrix c = empirical_covariance(batch);
  // Q outcomes sit in column 0 of each mode's pair when t = 1.
  const double rho = c(0, 2) / std::sqrt(c(0, 0) * c(2, 2));
  CHECK(std::abs(rho - 0.964027580075816884) < 0.002);
}

TEST_CASE("sampling is deterministic per seed and independent of thread count") {
  const auto plan = MeasurementPlan::uniform(3, 0.3, 0.7);
  const long m = 3 * kSampleChunk + 17;
  const auto a = sample_outcomes(ghz(2.0), plan, m, 99, 1);
  const auto b = sample_outcomes(ghz(2.0), plan, m, 99, 4);
  const auto c = sample_outcomes(ghz(2.0), plan, m, 99, 0);
  CHECK(a.data == b.data);
  CHECK(a.data == c.data);
  CHECK(a.seed == 99);
  const auto d = sample_outcomes(ghz(2.0), plan, m, 100, 1);
  CHECK(a.data != d.data);
  CHECK(estimate_mi(a).mi == estimate_mi(b).mi);
  CHECK(empirical_covariance(a) == empirical_covariance(b));
}

TEST_CASE("MI estimates of the anchor plans") {
  const auto hom = estimate_mi(sample_outcomes(epr(1.0), MeasurementPlan::homodyne(2), 1000000, 7));
  CHECK(std::abs(hom.mi - 1.9115748927774431) < 0.01);
  CHECK(hom.jackknife_groups == 20);
  CHECK(hom.standard_error > 0.0);
  CHECK(hom.standard_error < 0.01);
  const auto het = estimate_mi(sample_outcomes(epr(1.0), MeasurementPlan::heterodyne(2), 1000000, 8));
  CHECK(std::abs(het.mi - 1.25162690594111882) < 0.01);
  const auto vac = estimate_mi(sample_outcomes(vacuum(2), MeasurementPlan::heterodyne(2), 100000, 9));
  CHECK(std::abs(vac.mi) < 0.01);
}

TEST_CASE("plug-in MI within 3 standard errors on random states") {
  std::mt19937_64 rng(2024);
  int misses = 0, total = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto V = testing::random_physical_state(2, rng);
    const auto plan = testing::random_plan(2, rng);
    const double exact = measured_mi(V, plan);
    for (long m : {10000L, 100000L, 1000000L}) {
      const auto e = estimate_mi(sample_outcomes(V, plan, m, 1000 * trial + m));
      ++total;
      if (std::abs(e.mi - exact) > 3.0 * e.standard_error) {
        ++misses;
        MESSAGE("trial " << trial << " m=" << m << " |diff|/se=" << std::abs(e.mi - exact) / e.standard_error);
      }
    }
  }
  MESSAGE(misses << " of " << total << " estimates outside 3 SE");
  // With 20 jackknife groups |diff|/se is t-distributed with 19 dof, so each
  // estimate lands outside 3 SE with probability 0.00736 even when the
  // estimator is exact. P(misses >= 6 | 150 draws) = 9e-4.
  CHECK(misses <= 5);
}

TEST_CASE("jackknife standard error is calibrated") {
  const auto V = epr(0.6);
  const auto plan = MeasurementPlan::uniform(2, 0.2, 0.65);
  const double exact = measured_mi(V, plan);
  const int reps = 400;
  double sz = 0.0, szz = 0.0;
  for (int r = 0; r < reps; ++r) {
    const auto e = estimate_mi(sample_outcomes(V, plan, 10000, 31337 + r, 1));
    const double z = (e.mi - exact) / e.standard_error;
    sz += z;
    szz += z * z;
  }
  const double mean = sz / reps, sd = std::sqrt(szz / reps - mean * mean);
  MESSAGE("z mean " << mean << " sd " << sd);
  CHECK(std::abs(mean) < 0.2);
  CHECK(sd > 0.9);
  CHECK(sd < 1.2);  // t with 19 dof: sd 1.057
}

TEST_CASE("empirical covariance converges at 1/sqrt(m)") {
  const auto V = epr(0.5);
  const auto plan = MeasurementPlan::uniform(2, 0.4, 0.6);
  const Matrix sigma = outcome_covariance(V, plan).matrix();
  std::vector<double> lx, ly;
  for (long m : {10000L, 100000L, 1000000L}) {
    // Average the error over independent seeds to steady the slope.
    double err = 0.0;
    for (int rep = 0; rep < 8; ++rep) {
      err += (empirical_covariance(sample_outcomes(V, plan, m, 500 + rep * 7 + m)) - sigma).norm();
    }
    lx.push_back(std::log(static_cast<double>(m)));
    ly.push_back(std::log(err / 8));
  }
  const double mx = (lx[0] + lx[1] + lx[2]) / 3, my = (ly[0] + ly[1] + ly[2]) / 3;
  double sxy = 0, sxx = 0;
  for (int k = 0; k < 3; ++k) {
    sxy += (lx[k] - mx) * (ly[k] - my);
    sxx += (lx[k] - mx) * (lx[k] - mx);
  }
  const double slope = sxy / sxx;
  MESSAGE("slope " << slope);
  CHECK(slope == Approx(-0.5).epsilon(0.2));
  CHECK(std::abs(slope + 0.5) <= 0.1);
}

TEST_CASE("sampler preconditions") {
  CHECK_THROWS_AS(sample_outcomes(vacuum(1), MeasurementPlan::homodyne(1), 1, 1), input_error);
  const auto tiny = sample_outcomes(vacuum(2), MeasurementPlan::homodyne(2), 100, 1);
  CHECK_THROWS_AS(estimate_mi(tiny), input_error);
}
