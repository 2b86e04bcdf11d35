#pragma once

// Quadrature covariance matrices of zero-mean multimode Gaussian states.
//
// Conventions used throughout the library:
//   * quadrature ordering (Q1, P1, Q2, P2, ..., Qn, Pn);
//   * symplectic form Omega = direct sum of [[0, 1], [-1, 0]];
//   * vacuum variance 1, so the vacuum covariance is the identity and a
//     state is physical iff every symplectic eigenvalue is >= 1;
//   * entropies in bits.
// Mode indices are 0-based.

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace gdiscord {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IndexList = std::vector<int>;

inline constexpr double kSymmetryTolerance = 1e-9;
inline constexpr double kPhysicalityTolerance = 1e-9;

class CovarianceMatrix {
 public:
  CovarianceMatrix() = default;

  int modes() const { return modes_; }
  int dimension() const { return 2 * modes_; }
  const Matrix& matrix() const { return entries_; }
  double operator()(int row, int col) const { return entries_(row, col); }

  friend CovarianceMatrix make_covariance(int n, const Matrix& entries);

 private:
  CovarianceMatrix(int modes, Matrix entries) : modes_(modes), entries_(std::move(entries)) {}

  int modes_ = 0;
  Matrix entries_;
};

/// Symplectic eigenvalues, one per mode, sorted descending.
struct SymplecticSpectrum {
  std::vector<double> values;

  double min() const;
  double max() const;
};

/// Validates shape and symmetry (within 1e-9) and stores the symmetrized matrix.
/// Physicality is not checked here; see is_physical().
CovarianceMatrix make_covariance(int n, const Matrix& entries);

/// Infers n from the matrix dimension.
CovarianceMatrix make_covariance(const Matrix& entries);

CovarianceMatrix vacuum(int n);

Matrix symplectic_form(int n);

/// Moduli of the eigenvalues of Omega V. Computed as the spectrum of the
/// Hermitian matrix i V^1/2 Omega V^1/2, which has eigenvalues +-nu_k.
/// Throws unphysical_state when V is not positive definite.
SymplecticSpectrum symplectic_eigenvalues(const CovarianceMatrix& V);

bool is_physical(const CovarianceMatrix& V, double tolerance = kPhysicalityTolerance);

/// Throws unphysical_state unless V is positive definite with all nu >= 1 - 1e-9.
void require_physical(const CovarianceMatrix& V);

/// g(nu) = ((nu+1)/2) log2((nu+1)/2) - ((nu-1)/2) log2((nu-1)/2), the entropy
/// of a thermal mode with symplectic eigenvalue nu. g(nu) = 0 for nu <= 1 + 1e-12.
double entropy_function(double nu);

/// Von Neumann entropy in bits, sum of g over the symplectic spectrum.
double gaussian_entropy(const CovarianceMatrix& V);

/// Sub-covariance on the selected modes, in the order given.
CovarianceMatrix marginal(const CovarianceMatrix& V, std::span<const int> modes);

/// Gaussian conditioning on scalar variables (rows/columns of sigma):
/// sigma_kk - sigma_kg sigma_gg^-1 sigma_gk. An empty `given` returns sigma_kk.
/// Throws numerical_error when sigma_gg is singular (condition number > 1e12).
Matrix condition(const Matrix& sigma, std::span<const int> keep, std::span<const int> given);

/// Rows/columns of the given scalar indices.
Matrix submatrix(const Matrix& m, std::span<const int> rows, std::span<const int> cols);

/// Scalar (quadrature) indices belonging to a set of modes: mode k -> {2k, 2k+1}.
IndexList quadrature_indices(std::span<const int> modes);

}  // namespace gdiscord
