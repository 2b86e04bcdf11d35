#include <doctest.h>

#include <cmath>

#include "gdiscord/errors.hpp"
#include "gdiscord/states.hpp"

using namespace gdiscord;
using doctest::Approx;

TEST_CASE("epr matrix layout") {
  CHECK(epr(0.0).matrix().isIdentity(0.0));
  const auto V = epr(1.0);
  CHECK(V(0, 0) == Approx(3.76219569108363146));
  CHECK(V(0, 2) == Approx(3.62686040784701877));
  CHECK(V(1, 3) == Approx(-3.62686040784701877));
  CHECK(V(0, 3) == 0.0);
  for (double r : {0.1, 0.5, 1.0, 1.7}) {
    const auto W = epr(r);
    CHECK(W(0, 2) == std::sinh(2 * r));
    CHECK(W(2, 0) == std::sinh(2 * r));
    CHECK(W(1, 3) == -std::sinh(2 * r));
    CHECK(symplectic_eigenvalues(W).max() == Approx(1.0).epsilon(1e-9));
  }
  CHECK_THROWS_AS(epr(-0.1), input_error);
}

TEST_CASE("ghz matrix layout") {
  CHECK(ghz(1.0).matrix().isIdentity(0.0));
  const auto [cp, cm] = ghz_correlations(2.0);
  CHECK(cp == Approx((3.0 + std::sqrt(105.0)) / 8.0).epsilon(1e-14));
  CHECK(cm == Approx((3.0 - std::sqrt(105.0)) / 8.0).epsilon(1e-14));
  CHECK(cp == Approx(1.65586884574494980));
  CHECK(cm == Approx(-0.90586884574494980));
  const auto V = ghz(2.0);
  for (int k = 0; k < 6; ++k) CHECK(V(k, k) == 2.0);
  CHECK(V(0, 2) == cp);
  CHECK(V(3, 5) == cm);
  CHECK(V(0, 3) == 0.0);
  for (double a = 1.0; a <= 4.0; a += 0.5) {
    for (double nu : symplectic_eigenvalues(ghz(a)).values) CHECK(nu == Approx(1.0).epsilon(1e-9));
  }
  CHECK_THROWS_AS(ghz(0.99), input_error);
}

TEST_CASE("noise channels") {
  const auto vac = vacuum(2);
  const auto corr = apply_noise(vac, {NoiseKind::Correlated, 0.5});
  CHECK(corr(0, 0) == 1.5);
  CHECK(corr(1, 1) == 1.5);
  CHECK(corr(0, 2) == 0.5);
  CHECK(corr(1, 3) == -0.5);

  CHECK(apply_noise(epr(1.0), {NoiseKind::Multiplicative, 1.0}).matrix() == epr(1.0).matrix());
  CHECK(apply_noise(epr(1.0), NoiseModel::identity(NoiseKind::Uncorrelated)).matrix() == epr(1.0).matrix());
  CHECK(apply_noise(ghz(2.0), NoiseModel::identity(NoiseKind::Correlated)).matrix() == ghz(2.0).matrix());

  const auto unc = apply_noise(ghz(2.0), {NoiseKind::Uncorrelated, 2.0});
  for (int k = 0; k < 6; ++k) CHECK(unc(k, k) == 4.0);
  CHECK(unc(0, 2) == ghz(2.0)(0, 2));

  const auto corr3 = apply_noise(vacuum(3), {NoiseKind::Correlated, 2.0});
  CHECK(corr3(1, 3) == -1.0);
  CHECK(corr3(0, 4) == 2.0);

  CHECK_THROWS_AS(apply_noise(vacuum(4), {NoiseKind::Correlated, 1.0}), input_error);
  CHECK_THROWS_AS(apply_noise(vacuum(1), {NoiseKind::Correlated, 1.0}), input_error);
  CHECK_THROWS_AS(apply_noise(vacuum(2), {NoiseKind::Multiplicative, 0.5}), input_error);
  CHECK_THROWS_AS(apply_noise(vacuum(2), {NoiseKind::Uncorrelated, -0.1}), input_error);
  CHECK_THROWS_AS(parse_noise_kind("thermal"), input_error);
}

TEST_CASE("three-mode correlated pattern sits on the PSD boundary") {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(correlated_noise_pattern(3));
  CHECK(eig.eigenvalues().minCoeff() >= -1e-12);
  CHECK(eig.eigenvalues().minCoeff() <= 1e-12);
  Eigen::SelfAdjointEigenSolver<Matrix> eig2(correlated_noise_pattern(2));
  CHECK(eig2.eigenvalues().minCoeff() >= -1e-12);
}

TEST_CASE("noisy states stay physical") {
  for (auto kind : {NoiseKind::Uncorrelated, NoiseKind::Multiplicative, NoiseKind::Correlated}) {
    for (double v = 0.0; v <= 5.0; v += 0.25) {
      const double strength = kind == NoiseKind::Multiplicative ? 1.0 + v : v;
      for (const auto& base : {epr(1.0), ghz(2.0), vacuum(2), vacuum(3)}) {
        CHECK(is_physical(apply_noise(base, {kind, strength})));
      }
    }
  }
}
