#include "gdiscord/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "gdiscord/errors.hpp"

namespace gdiscord {

namespace {

constexpr double kLogFloor = 1e-300;
constexpr double kPureTolerance = 1e-12;
constexpr double kMaxConditionNumber = 1e12;

double safe_log2(double x) { return std::log2(std::max(x, kLogFloor)); }

}  // namespace

double SymplecticSpectrum::min() const { return values.empty() ? 0.0 : values.back(); }

double SymplecticSpectrum::max() const { return values.empty() ? 0.0 : values.front(); }

CovarianceMatrix make_covariance(int n, const Matrix& entries) {
  if (n <= 0) {
    throw input_error("mode count must be positive, got " + std::to_string(n));
  }
  if (entries.rows() != 2 * n || entries.cols() != 2 * n) {
    throw input_error("covariance for " + std::to_string(n) + " modes must be " +
                      std::to_string(2 * n) + "x" + std::to_string(2 * n) + ", got " +
                      std::to_string(entries.rows()) + "x" + std::to_string(entries.cols()));
  }
  if (!entries.allFinite()) {
    throw input_error("covariance has non-finite entries");
  }
  const double skew = (entries - entries.transpose()).cwiseAbs().maxCoeff();
  if (skew > kSymmetryTolerance) {
    throw input_error("covariance is not symmetric (max |V - V^T| = " + std::to_string(skew) + ")");
  }
  return CovarianceMatrix(n, 0.5 * (entries + entries.transpose()));
}

CovarianceMatrix make_covariance(const Matrix& entries) {
  if (entries.rows() % 2 != 0 || entries.rows() == 0) {
    throw input_error("covariance dimension must be even and nonzero");
  }
  return make_covariance(static_cast<int>(entries.rows() / 2), entries);
}

CovarianceMatrix vacuum(int n) { return make_covariance(n, Matrix::Identity(2 * n, 2 * n)); }

Matrix symplectic_form(int n) {
  Matrix omega = Matrix::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

SymplecticSpectrum symplectic_eigenvalues(const CovarianceMatrix& V) {
  const int n = V.modes();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(V.matrix());
  if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0) {
    throw unphysical_state("covariance is not positive definite");
  }
  const Matrix root =
      eig.eigenvectors() * eig.eigenvalues().cwiseSqrt().asDiagonal() * eig.eigenvectors().transpose();
  const Matrix antisym = root * symplectic_form(n) * root;

  // i * antisym is Hermitian with eigenvalues +-nu_k; keep the positive half.
  const Eigen::MatrixXcd herm = std::complex<double>(0.0, 1.0) * antisym.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> heig(herm, Eigen::EigenvaluesOnly);
  if (heig.info() != Eigen::Success) {
    throw unphysical_state("symplectic eigenvalue computation failed");
  }
  // Ascending: the last n entries are the positive ones.
  SymplecticSpectrum spectrum;
  spectrum.values.reserve(n);
  for (int k = 2 * n - 1; k >= n; --k) {
    spectrum.values.push_back(heig.eigenvalues()(k));
  }
  return spectrum;
}

bool is_physical(const CovarianceMatrix& V, double tolerance) {
  try {
    return symplectic_eigenvalues(V).min() >= 1.0 - tolerance;
  } catch (const unphysical_state&) {
    return false;
  }
}

void require_physical(const CovarianceMatrix& V) {
  const auto spectrum = symplectic_eigenvalues(V);
  if (spectrum.min() < 1.0 - kPhysicalityTolerance) {
    throw unphysical_state("state violates the uncertainty principle (min symplectic eigenvalue " +
                           std::to_string(spectrum.min()) + " < 1)");
  }
}

double entropy_function(double nu) {
  if (nu <= 1.0 + kPureTolerance) {
    return 0.0;
  }
  const double plus = 0.5 * (nu + 1.0);
  const double minus = 0.5 * (nu - 1.0);
  return plus * safe_log2(plus) - minus * safe_log2(minus);
}

double gaussian_entropy(const CovarianceMatrix& V) {
  const auto spectrum = symplectic_eigenvalues(V);
  if (spectrum.min() < 1.0 - kPhysicalityTolerance) {
    throw unphysical_state("entropy of an unphysical state (min symplectic eigenvalue " +
                           std::to_string(spectrum.min()) + ")");
  }
  double total = 0.0;
  for (double nu : spectrum.values) {
    total += entropy_function(nu);
  }
  return total;
}

IndexList quadrature_indices(std::span<const int> modes) {
  IndexList out;
  out.reserve(2 * modes.size());
  for (int k : modes) {
    out.push_back(2 * k);
    out.push_back(2 * k + 1);
  }
  return out;
}

Matrix submatrix(const Matrix& m, std::span<const int> rows, std::span<const int> cols) {
  Matrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      out(i, j) = m(rows[i], cols[j]);
    }
  }
  return out;
}

CovarianceMatrix marginal(const CovarianceMatrix& V, std::span<const int> modes) {
  if (modes.empty()) {
    throw input_error("marginal needs at least one mode");
  }
  std::vector<bool> seen(V.modes(), false);
  for (int k : modes) {
    if (k < 0 || k >= V.modes()) {
      throw input_error("mode index " + std::to_string(k) + " out of range for a " +
                        std::to_string(V.modes()) + "-mode state");
    }
    if (seen[k]) {
      throw input_error("duplicate mode index " + std::to_string(k));
    }
    seen[k] = true;
  }
  const auto idx = quadrature_indices(modes);
  return make_covariance(static_cast<int>(modes.size()), submatrix(V.matrix(), idx, idx));
}

Matrix condition(const Matrix& sigma, std::span<const int> keep, std::span<const int> given) {
  const auto dim = static_cast<int>(sigma.rows());
  std::vector<char> used(dim, 0);
  for (auto list : {keep, given}) {
    for (int i : list) {
      if (i < 0 || i >= dim) {
        throw input_error("variable index " + std::to_string(i) + " out of range");
      }
      if (used[i]) {
        throw input_error("keep and given sets must be disjoint and duplicate-free");
      }
      used[i] = 1;
    }
  }
  Matrix kk = submatrix(sigma, keep, keep);
  if (given.empty()) {
    return kk;
  }
  const Matrix gg = submatrix(sigma, given, given);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gg, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (lo <= 0.0 || hi / lo > kMaxConditionNumber) {
    throw numerical_error("singular conditioning block");
  }
  const Matrix kg = submatrix(sigma, keep, given);
  kk.noalias() -= kg * gg.ldlt().solve(kg.transpose());
  return 0.5 * (kk + kk.transpose());
}

}  // namespace gdiscord
