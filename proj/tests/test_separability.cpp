#include <doctest.h>

#include <cmath>
#include <random>

#include "gdiscord/errors.hpp"
#include "gdiscord/separability.hpp"
#include "gdiscord/states.hpp"
#include "test_support.hpp"

using namespace gdiscord;
using doctest::Approx;

namespace {
const double kDuanBoundary = 1.0 - std::exp(-2.0);

double bisect_entangled(const std::function<double(double)>& witness, double lo, double hi) {
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    const double mid = 0.5 * (lo + hi);
    (witness(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Oracle for the PPT witness: direct symplectic spectrum of the flipped matrix.
double ppt_oracle(const Matrix& v, const std::vector<int>& side) {
  Matrix lambda = Matrix::Identity(v.rows(), v.cols());
  for (int k : side) lambda(2 * k + 1, 2 * k + 1) = -1.0;
  const auto nu = testing::symplectic_eigenvalues_oracle(lambda * v * lambda);
  return *std::min_element(nu.begin(), nu.end()) - 1.0;
}
}  // namespace

TEST_CASE("Duan criterion examples") {
  const auto d = duan_criterion(epr(1.0));
  CHECK(d.entangled);
  CHECK(d.method == SeparabilityMethod::Duan);
  CHECK(d.witness == Approx(2 * std::exp(-2.0) - 2).epsilon(1e-12));
  CHECK(d.partition == "1|2");

  const auto vac = duan_criterion(vacuum(2));
  CHECK(vac.witness == 0.0);
  CHECK_FALSE(vac.entangled);
  CHECK(vac.boundary);

  CHECK_FALSE(duan_applicable(ghz(2.0)));
  CHECK_THROWS_AS(duan_criterion(ghz(2.0)), input_error);
  Matrix flipped = epr(1.0).matrix();
  flipped(0, 2) = flipped(2, 0) = -flipped(0, 2);
  flipped(1, 3) = flipped(3, 1) = -flipped(1, 3);
  CHECK_THROWS_AS(duan_criterion(make_covariance(2, flipped)), input_error);
}

TEST_CASE("PPT criterion examples") {
  const std::vector<int> first{0};
  const auto p = ppt_criterion(epr(1.0), first);
  CHECK(p.entangled);
  CHECK(p.witness == Approx(std::exp(-2.0) - 1.0).epsilon(1e-10));
  CHECK(std::abs(ppt_criterion(vacuum(3), first).witness) < 1e-12);
  CHECK_FALSE(ppt_criterion(vacuum(3), first).entangled);
  CHECK(ppt_criterion(ghz(2.0), first).partition == "1|23");
  const std::vector<int> none{}, all{0, 1, 2}, bad{4};
  CHECK_THROWS_AS(ppt_criterion(ghz(2.0), none), input_error);
  CHECK_THROWS_AS(ppt_criterion(ghz(2.0), all), input_error);
  CHECK_THROWS_AS(ppt_criterion(ghz(2.0), bad), input_error);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 2;
    const auto V = testing::random_physical_state(n, rng);
    const std::vector<int> side{trial % n};
    CHECK(ppt_criterion(V, side).witness == Approx(ppt_oracle(V.matrix(), side)).epsilon(1e-9));
  }
}

TEST_CASE("EPR noise boundaries: Duan and PPT agree") {
  const std::vector<int> first{0};
  auto duan = [](double v) { return duan_criterion(apply_noise(epr(1.0), {NoiseKind::Uncorrelated, v})).witness; };
  auto ppt = [&](double v) {
    return ppt_criterion(apply_noise(epr(1.0), {NoiseKind::Uncorrelated, v}), first).witness;
  };
  const double bd = bisect_entangled(duan, 0.0, 5.0);
  const double bp = bisect_entangled(ppt, 0.0, 5.0);
  CHECK(bd == Approx(kDuanBoundary).epsilon(1e-9));
  CHECK(std::abs(bd - bp) < 1e-6);
  CHECK(std::abs(duan(kDuanBoundary)) < 1e-12);

  // Multiplicative noise vV: both vanish at v = e^2.
  auto duan_m = [](double v) {
    return duan_criterion(apply_noise(epr(1.0), {NoiseKind::Multiplicative, v})).witness;
  };
  auto ppt_m = [&](double v) {
    return ppt_criterion(apply_noise(epr(1.0), {NoiseKind::Multiplicative, v}), first).witness;
  };
  CHECK(bisect_entangled(duan_m, 1.0, 20.0) == Approx(std::exp(2.0)).epsilon(1e-9));
  CHECK(std::abs(bisect_entangled(ppt_m, 1.0, 20.0) - std::exp(2.0)) < 1e-6);
}

TEST_CASE("witness is continuous along noise sweeps") {
  const double step = 0.05;
  for (auto kind : {NoiseKind::Uncorrelated, NoiseKind::Multiplicative, NoiseKind::Correlated}) {
    for (const auto& base : {epr(1.0), ghz(2.0)}) {
      const double start = kind == NoiseKind::Multiplicative ? 1.0 : 0.0;
      double previous = assess_separability(apply_noise(base, {kind, start})).witness;
      double first_jump = -1.0;
      for (double v = start + step; v <= start + 5.0; v += step) {
        const double w = assess_separability(apply_noise(base, {kind, v})).witness;
        const double jump = std::abs(w - previous);
        if (first_jump < 0) first_jump = std::max(jump, 1e-3);
        CHECK(jump <= 10.0 * first_jump);
        previous = w;
      }
    }
  }
}

TEST_CASE("separability of the correlated-noise families") {
  for (double v = 0.0; v <= 5.0; v += 0.1) {
    CHECK(assess_separability(apply_noise(epr(1.0), {NoiseKind::Correlated, v})).entangled);
    CHECK_FALSE(assess_separability(apply_noise(vacuum(2), {NoiseKind::Correlated, v})).entangled);
    CHECK_FALSE(assess_separability(apply_noise(vacuum(3), {NoiseKind::Correlated, v})).entangled);
  }
  CHECK(assess_separability(apply_noise(vacuum(2), {NoiseKind::Correlated, 1.0})).boundary);
  // Symmetric three-mode states: equivalent cuts report the first one.
  for (double v : {0.5, 1.0, 3.0}) {
    CHECK(assess_separability(apply_noise(vacuum(3), {NoiseKind::Correlated, v})).partition == "1|23");
    CHECK(assess_separability(apply_noise(ghz(2.0), {NoiseKind::Uncorrelated, v})).partition == "1|23");
  }
}

TEST_CASE("GHZ PPT boundary under uncorrelated noise") {
  auto witness = [](double v) {
    return assess_separability(apply_noise(ghz(2.0), {NoiseKind::Uncorrelated, v})).witness;
  };
  CHECK(witness(0.0) < 0);
  const double boundary = bisect_entangled(witness, 0.0, 10.0);
  CHECK(witness(boundary - 1e-4) < 0);
  CHECK(witness(boundary + 1e-4) > 0);
  const auto verdict = assess_separability(ghz(2.0));
  CHECK(verdict.method == SeparabilityMethod::PPT);
  CHECK(verdict.entangled);
  MESSAGE("GHZ(2) uncorrelated PPT boundary v = " << boundary);
}

TEST_CASE("verdict from witness") {
  CHECK(verdict_from_witness(-0.1, SeparabilityMethod::PPT, "1|2").entangled);
  CHECK_FALSE(verdict_from_witness(0.1, SeparabilityMethod::PPT, "1|2").entangled);
  const auto b = verdict_from_witness(-5e-10, SeparabilityMethod::PPT, "1|2");
  CHECK_FALSE(b.entangled);
  CHECK(b.boundary);
}
