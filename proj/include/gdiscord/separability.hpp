#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gdiscord/covariance.hpp"

namespace gdiscord {

enum class SeparabilityMethod { Duan, PPT };

std::string_view to_string(SeparabilityMethod method);

inline constexpr double kWitnessTolerance = 1e-9;

/// witness < 0 means entangled. |witness| <= 1e-9 is a boundary state:
/// entangled is false and boundary is true.
struct SeparabilityVerdict {
  bool entangled = false;
  bool boundary = false;
  SeparabilityMethod method = SeparabilityMethod::PPT;
  double witness = 0.0;
  std::string partition;  ///< e.g. "1|2" or "1|23", 1-based mode labels
};

SeparabilityVerdict verdict_from_witness(double witness, SeparabilityMethod method, std::string partition);

/// True when V has two modes, no Q-P covariances, and Q cross >= 0 >= P cross.
bool duan_applicable(const CovarianceMatrix& V);

/// Duan sum of variances of (Q1 - Q2)/sqrt2 and (P1 + P2)/sqrt2, minus 2.
/// Necessary and sufficient for states whose local blocks are equal multiples
/// of the identity; a sufficient entanglement test otherwise.
SeparabilityVerdict duan_criterion(const CovarianceMatrix& V);

/// Positivity of the partial transpose across `side` versus the rest:
/// witness = min symplectic eigenvalue of Lambda V Lambda minus 1, where
/// Lambda flips the P quadratures of `side`. Exact for 1 x N mode splits.
SeparabilityVerdict ppt_criterion(const CovarianceMatrix& V, std::span<const int> side);

/// Two modes: Duan when applicable, PPT otherwise. More modes: PPT across
/// every single-mode bipartition k | rest, reporting the most negative
/// witness. "Not entangled" for three or more modes therefore means
/// PPT-separable across all 1 x (n-1) cuts; bound entanglement is not ruled out.
SeparabilityVerdict assess_separability(const CovarianceMatrix& V);

}  // namespace gdiscord
