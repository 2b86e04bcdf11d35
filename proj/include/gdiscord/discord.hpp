#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gdiscord/covariance.hpp"
#include "gdiscord/measurement.hpp"
#include "gdiscord/optimizer.hpp"
#include "gdiscord/separability.hpp"

namespace gdiscord {

/// Sum of marginal entropies minus the joint entropy, in bits.
double quantum_mi(const CovarianceMatrix& V);

/// Maximum multipartite classical MI over local Gaussian measurements.
OptimizationResult gaussian_multipartite_cc(const CovarianceMatrix& V, const SearchOptions& options = {});

struct ReportOptions {
  SearchOptions search;
  bool symmetric_search = false;  ///< common (theta, t) on every mode
  int measured_mode = 0;          ///< mode measured for the one-sided quantities
};

struct CorrelationReport {
  double i_q = 0.0;
  double j_g = 0.0;
  double delta_g = 0.0;
  std::optional<double> j_asym;      ///< two-mode states only
  std::optional<double> delta_asym;  ///< two-mode states only
  MeasurementPlan plan;
  Regime regime = Regime::Interior;
  SeparabilityVerdict separability;
  std::vector<std::string> warnings;
};

/// I_Q, the Gaussian multipartite CC and discord (I_Q - J_G), the one-sided
/// quantities for two-mode states, and a separability verdict.
CorrelationReport gaussian_multipartite_qd(const CovarianceMatrix& V, const ReportOptions& options = {});

/// Two-mode standard form [[a,0,cx,0],[0,a,0,cp],[cx,0,b,0],[0,cp,0,b]]
/// with cx >= |cp| >= 0 (within 1e-9).
bool is_standard_form(const CovarianceMatrix& V);

/// sqrt(a/b) + sqrt(b/a) + 1/sqrt(ab) - sqrt(ab - cx^2). Nonnegative exactly
/// when Q homodyne on both modes attains the Gaussian multipartite CC.
double homodyne_optimality_margin(const CovarianceMatrix& V);

bool homodyne_optimal(const CovarianceMatrix& V);

/// Conditional covariance of the unmeasured mode after a general-dyne
/// measurement `setting` on mode `measured` of a two-mode state.
Matrix conditional_covariance(const CovarianceMatrix& V, int measured, const ModeSetting& setting);

struct OneSidedCc {
  double heterodyne = 0.0;   ///< S(B) - S(B | heterodyne on A)
  double guard_best = 0.0;   ///< best over the (theta, t) guard search
  ModeSetting guard_setting;
  double improvement() const { return guard_best - heterodyne; }
};

inline constexpr double kGuardTolerance = 1e-6;

/// One-sided Gaussian CC J(B|A) with heterodyne on A plus the guard search.
OneSidedCc one_sided_cc(const CovarianceMatrix& V, int measured);

/// J(B|A) via heterodyne on `measured`. Throws numerical_error when the
/// guard search beats heterodyne by more than 1e-6.
double asymmetric_gaussian_cc(const CovarianceMatrix& V, int measured);

/// I_Q - J(B|A).
double asymmetric_gaussian_qd(const CovarianceMatrix& V, int measured);

/// MI of photon-number outcomes on both modes of a two-mode squeezed vacuum:
/// g(cosh 2r), the entropy of either thermal marginal.
double fock_mi_epr(double r);

}  // namespace gdiscord
