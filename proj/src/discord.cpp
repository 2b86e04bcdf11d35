#include "gdiscord/discord.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gdiscord/errors.hpp"
#include "gdiscord/nelder_mead.hpp"

namespace gdiscord {

namespace {

constexpr double kFormTolerance = 1e-9;
constexpr int kGuardThetaPoints = 16;
constexpr int kGuardTPoints = 21;

void require_two_modes(const CovarianceMatrix& V, int measured) {
  if (V.modes() != 2) {
    throw input_error("one-sided quantities are defined for two-mode states only");
  }
  if (measured != 0 && measured != 1) {
    throw input_error("measured mode must be 0 or 1");
  }
}

}  // namespace

double quantum_mi(const CovarianceMatrix& V) {
  require_physical(V);
  double total = -gaussian_entropy(V);
  for (int k = 0; k < V.modes(); ++k) {
    const int mode[] = {k};
    total += gaussian_entropy(marginal(V, mode));
  }
  return total;
}

OptimizationResult gaussian_multipartite_cc(const CovarianceMatrix& V, const SearchOptions& options) {
  return maximize_mi(V, options);
}

bool is_standard_form(const CovarianceMatrix& V) {
  if (V.modes() != 2) return false;
  const Matrix& m = V.matrix();
  auto zero = [](double x) { return std::abs(x) <= kFormTolerance; };
  if (!zero(m(0, 1)) || !zero(m(0, 3)) || !zero(m(1, 2)) || !zero(m(2, 3))) return false;
  if (!zero(m(0, 0) - m(1, 1)) || !zero(m(2, 2) - m(3, 3))) return false;
  const double cx = m(0, 2);
  const double cp = m(1, 3);
  return cx >= std::abs(cp) - kFormTolerance;
}

double homodyne_optimality_margin(const CovarianceMatrix& V) {
  if (!is_standard_form(V)) {
    throw input_error("homodyne optimality test needs the two-mode standard form with cx >= |cp|");
  }
  const double a = V(0, 0);
  const double b = V(2, 2);
  const double cx = V(0, 2);
  return std::sqrt(a / b) + std::sqrt(b / a) + 1.0 / std::sqrt(a * b) - std::sqrt(std::max(0.0, a * b - cx * cx));
}

bool homodyne_optimal(const CovarianceMatrix& V) { return homodyne_optimality_margin(V) >= 0.0; }

Matrix conditional_covariance(const CovarianceMatrix& V, int measured, const ModeSetting& setting) {
  require_two_modes(V, measured);
  const int other = 1 - measured;
  const Matrix& m = V.matrix();
  const Eigen::Matrix2d va = m.block<2, 2>(2 * measured, 2 * measured);
  const Eigen::Matrix2d vb = m.block<2, 2>(2 * other, 2 * other);
  const Eigen::Matrix2d cab = m.block<2, 2>(2 * measured, 2 * other);
  const Eigen::Matrix2d map = measurement_map(setting);
  const Eigen::Matrix2d outcomes = map * va * map.transpose() + Eigen::Matrix2d(measurement_noise(setting));
  const Eigen::Matrix2d cross = map * cab;
  Eigen::Matrix2d conditional = vb - cross.transpose() * outcomes.ldlt().solve(cross);
  return 0.5 * (conditional + conditional.transpose());
}

OneSidedCc one_sided_cc(const CovarianceMatrix& V, int measured) {
  require_two_modes(V, measured);
  require_physical(V);
  const int other_mode[] = {1 - measured};
  const double s_b = gaussian_entropy(marginal(V, other_mode));
  auto cc = [&](const ModeSetting& s) {
    return s_b - gaussian_entropy(make_covariance(1, conditional_covariance(V, measured, s)));
  };

  OneSidedCc out;
  out.heterodyne = cc({0.0, 0.5});
  out.guard_best = out.heterodyne;
  out.guard_setting = {0.0, 0.5};
  for (int i = 0; i < kGuardThetaPoints; ++i) {
    for (int j = 0; j < kGuardTPoints; ++j) {
      const ModeSetting s{std::numbers::pi * i / kGuardThetaPoints, static_cast<double>(j) / (kGuardTPoints - 1)};
      const double value = cc(s);
      if (value > out.guard_best) {
        out.guard_best = value;
        out.guard_setting = s;
      }
    }
  }
  NelderMeadOptions nm;
  nm.max_evaluations = 4000;
  auto refined = nelder_mead(
      [&](const std::vector<double>& x) {
        const double s = std::sin(x[1]);
        return -cc({x[0], std::clamp(s * s, 0.0, 1.0)});
      },
      {out.guard_setting.theta, std::asin(std::sqrt(out.guard_setting.t))}, nm);
  if (-refined.value > out.guard_best) {
    const double s = std::sin(refined.x[1]);
    out.guard_best = -refined.value;
    out.guard_setting = {normalize_angle(refined.x[0]), std::clamp(s * s, 0.0, 1.0)};
  }
  return out;
}

double asymmetric_gaussian_cc(const CovarianceMatrix& V, int measured) {
  const auto result = one_sided_cc(V, measured);
  if (result.improvement() > kGuardTolerance) {
    std::ostringstream msg;
    msg << "heterodyne is not the optimal one-sided measurement for this state: theta="
        << result.guard_setting.theta << " t=" << result.guard_setting.t << " improves J by "
        << result.improvement();
    throw numerical_error(msg.str());
  }
  return result.heterodyne;
}

double asymmetric_gaussian_qd(const CovarianceMatrix& V, int measured) {
  return quantum_mi(V) - asymmetric_gaussian_cc(V, measured);
}

double fock_mi_epr(double r) {
  if (!(r >= 0.0)) {
    throw input_error("squeezing r must be >= 0");
  }
  return entropy_function(std::cosh(2.0 * r));
}

CorrelationReport gaussian_multipartite_qd(const CovarianceMatrix& V, const ReportOptions& options) {
  CorrelationReport report;
  report.i_q = quantum_mi(V);
  const auto cc = options.symmetric_search ? maximize_mi_symmetric(V, options.search)
                                           : maximize_mi(V, options.search);
  report.j_g = cc.j_g;
  report.plan = cc.plan;
  report.regime = cc.regime;
  report.delta_g = report.i_q - report.j_g;
  if (!cc.converged) {
    report.warnings.push_back("Nelder-Mead refinement hit its evaluation budget before converging");
  }
  if (V.modes() == 2) {
    const auto one_sided = one_sided_cc(V, options.measured_mode);
    if (one_sided.improvement() > kGuardTolerance) {
      std::ostringstream msg;
      msg << "guard search beat heterodyne on mode " << options.measured_mode + 1 << " by "
          << one_sided.improvement() << " bits (theta=" << one_sided.guard_setting.theta
          << ", t=" << one_sided.guard_setting.t << "); reporting the guard optimum";
      report.warnings.push_back(msg.str());
      report.j_asym = one_sided.guard_best;
    } else {
      report.j_asym = one_sided.heterodyne;
    }
    report.delta_asym = report.i_q - *report.j_asym;
  }
  if (V.modes() >= 2) {
    report.separability = assess_separability(V);
  }
  return report;
}

}  // namespace gdiscord
