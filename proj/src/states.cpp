#include "gdiscord/states.hpp"

#include <cmath>

#include "gdiscord/errors.hpp"

namespace gdiscord {

CovarianceMatrix epr(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw input_error("squeezing r must be finite and >= 0");
  }
  const double c = std::cosh(2.0 * r);
  const double s = std::sinh(2.0 * r);
  Matrix m(4, 4);
  // clang-format off
  m << c,  0,  s,  0,
       0,  c,  0, -s,
       s,  0,  c,  0,
       0, -s,  0,  c;
  // clang-format on
  return make_covariance(2, m);
}

GhzCorrelations ghz_correlations(double a) {
  const double root = std::sqrt((a * a - 1.0) * (9.0 * a * a - 1.0));
  return {(a * a - 1.0 + root) / (4.0 * a), (a * a - 1.0 - root) / (4.0 * a)};
}

CovarianceMatrix ghz(double a) {
  if (!(a >= 1.0) || !std::isfinite(a)) {
    throw input_error("GHZ parameter a must be finite and >= 1");
  }
  const auto [cp, cm] = ghz_correlations(a);
  Matrix m = Matrix::Zero(6, 6);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      m(2 * i, 2 * j) = i == j ? a : cp;
      m(2 * i + 1, 2 * j + 1) = i == j ? a : cm;
    }
  }
  return make_covariance(3, m);
}

NoiseModel NoiseModel::identity(NoiseKind kind) {
  return {kind, kind == NoiseKind::Multiplicative ? 1.0 : 0.0};
}

std::string_view to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::Uncorrelated:
      return "uncorrelated";
    case NoiseKind::Multiplicative:
      return "multiplicative";
    case NoiseKind::Correlated:
      return "correlated";
  }
  return "unknown";
}

NoiseKind parse_noise_kind(std::string_view name) {
  if (name == "uncorrelated") return NoiseKind::Uncorrelated;
  if (name == "multiplicative") return NoiseKind::Multiplicative;
  if (name == "correlated") return NoiseKind::Correlated;
  throw input_error("unknown noise kind '" + std::string(name) +
                    "' (expected uncorrelated, multiplicative or correlated)");
}

void validate(const NoiseModel& noise) {
  if (!std::isfinite(noise.v)) {
    throw input_error("noise strength must be finite");
  }
  if (noise.kind == NoiseKind::Multiplicative && noise.v < 1.0) {
    throw input_error("multiplicative noise needs v >= 1");
  }
  if (noise.kind != NoiseKind::Multiplicative && noise.v < 0.0) {
    throw input_error(std::string(to_string(noise.kind)) + " noise needs v >= 0");
  }
}

Matrix correlated_noise_pattern(int n) {
  if (n != 2 && n != 3) {
    throw input_error("correlated noise is defined for 2 or 3 modes, got " + std::to_string(n));
  }
  const double p_cross = n == 2 ? -1.0 : -0.5;
  Matrix pattern = Matrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      pattern(2 * i, 2 * j) = 1.0;
      pattern(2 * i + 1, 2 * j + 1) = i == j ? 1.0 : p_cross;
    }
  }
  return pattern;
}

CovarianceMatrix apply_noise(const CovarianceMatrix& V, const NoiseModel& noise) {
  validate(noise);
  const int n = V.modes();
  switch (noise.kind) {
    case NoiseKind::Uncorrelated:
      return make_covariance(n, V.matrix() + noise.v * Matrix::Identity(2 * n, 2 * n));
    case NoiseKind::Multiplicative:
      return make_covariance(n, noise.v * V.matrix());
    case NoiseKind::Correlated:
      return make_covariance(n, V.matrix() + noise.v * correlated_noise_pattern(n));
  }
  throw input_error("unknown noise kind");
}

}  // namespace gdiscord
