#include "gdiscord/separability.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "gdiscord/errors.hpp"

namespace gdiscord {

namespace {

constexpr double kFormTolerance = 1e-9;

std::string label(std::span<const int> side, int modes) {
  std::string left, right;
  std::vector<bool> in(modes, false);
  for (int k : side) in[k] = true;
  for (int k = 0; k < modes; ++k) (in[k] ? left : right) += std::to_string(k + 1);
  return left + "|" + right;
}

}  // namespace

std::string_view to_string(SeparabilityMethod method) {
  return method == SeparabilityMethod::Duan ? "duan" : "ppt";
}

SeparabilityVerdict verdict_from_witness(double witness, SeparabilityMethod method, std::string partition) {
  SeparabilityVerdict v;
  v.method = method;
  v.witness = witness;
  v.boundary = std::abs(witness) <= kWitnessTolerance;
  v.entangled = !v.boundary && witness < 0.0;
  v.partition = std::move(partition);
  return v;
}

bool duan_applicable(const CovarianceMatrix& V) {
  if (V.modes() != 2) return false;
  const Matrix& m = V.matrix();
  for (auto [i, j] : {std::pair{0, 1}, {0, 3}, {1, 2}, {2, 3}}) {
    if (std::abs(m(i, j)) > kFormTolerance) return false;
  }
  return m(0, 2) >= -kFormTolerance && m(1, 3) <= kFormTolerance;
}

SeparabilityVerdict duan_criterion(const CovarianceMatrix& V) {
  if (!duan_applicable(V)) {
    throw input_error(
        "Duan criterion needs a two-mode state without Q-P covariances, "
        "with Q correlated and P anticorrelated");
  }
  const Matrix& m = V.matrix();
  const double var_q_diff = 0.5 * (m(0, 0) + m(2, 2)) - m(0, 2);
  const double var_p_sum = 0.5 * (m(1, 1) + m(3, 3)) + m(1, 3);
  return verdict_from_witness(var_q_diff + var_p_sum - 2.0, SeparabilityMethod::Duan, "1|2");
}

SeparabilityVerdict ppt_criterion(const CovarianceMatrix& V, std::span<const int> side) {
  const int n = V.modes();
  std::vector<bool> in(n, false);
  for (int k : side) {
    if (k < 0 || k >= n) throw input_error("partition mode index out of range");
    if (in[k]) throw input_error("duplicate mode in partition");
    in[k] = true;
  }
  if (side.empty() || static_cast<int>(side.size()) == n) {
    throw input_error("partition must split the modes into two nonempty groups");
  }
  Vector flip = Vector::Ones(2 * n);
  for (int k : side) flip(2 * k + 1) = -1.0;
  const Matrix transposed = flip.asDiagonal() * V.matrix() * flip.asDiagonal();
  const auto spectrum = symplectic_eigenvalues(make_covariance(n, transposed));
  return verdict_from_witness(spectrum.min() - 1.0, SeparabilityMethod::PPT, label(side, n));
}

SeparabilityVerdict assess_separability(const CovarianceMatrix& V) {
  const int n = V.modes();
  if (n < 2) {
    throw input_error("separability needs at least two modes");
  }
  if (n == 2 && duan_applicable(V)) {
    return duan_criterion(V);
  }
  std::optional<SeparabilityVerdict> worst;
  for (int k = 0; k < n; ++k) {
    const int side[] = {k};
    auto verdict = ppt_criterion(V, side);
    // Cuts within 1e-12 of each other keep the lowest mode label.
    if (!worst || verdict.witness < worst->witness - 1e-12) worst = std::move(verdict);
    if (n == 2) break;
  }
  return *worst;
}

}  // namespace gdiscord
