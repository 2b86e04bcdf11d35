#pragma once

#include <string>
#include <string_view>

#include "gdiscord/covariance.hpp"

namespace gdiscord {

/// Two-mode squeezed vacuum with squeezing r >= 0.
CovarianceMatrix epr(double r);

/// Symmetric pure three-mode state with local variance a >= 1 and
/// cross-correlations c+ (Q-Q) and c- (P-P).
CovarianceMatrix ghz(double a);

struct GhzCorrelations {
  double plus;
  double minus;
};
GhzCorrelations ghz_correlations(double a);

enum class NoiseKind { Uncorrelated, Multiplicative, Correlated };

/// A noise channel acting on covariance matrices.
///   Uncorrelated:   V + v I
///   Multiplicative: v V   (v >= 1)
///   Correlated:     V + v N, where N correlates the Q quadratures and
///                   anticorrelates the P quadratures (two or three modes only).
struct NoiseModel {
  NoiseKind kind = NoiseKind::Uncorrelated;
  double v = 0.0;

  static NoiseModel identity(NoiseKind kind);
};

std::string_view to_string(NoiseKind kind);
NoiseKind parse_noise_kind(std::string_view name);

/// Throws input_error when v is outside the kind's admissible range.
void validate(const NoiseModel& noise);

/// The additive pattern N for correlated noise on n in {2, 3} modes. The
/// three-mode P block uses -1/2, the strongest anticorrelation three
/// unit-variance classical variables admit.
Matrix correlated_noise_pattern(int n);

CovarianceMatrix apply_noise(const CovarianceMatrix& V, const NoiseModel& noise);

}  // namespace gdiscord
