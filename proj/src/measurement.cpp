#include "gdiscord/measurement.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gdiscord/errors.hpp"

namespace gdiscord {

double normalize_angle(double theta) {
  constexpr double pi = std::numbers::pi;
  double out = std::fmod(theta, pi);
  if (out < 0.0) out += pi;
  if (out >= pi) out -= pi;
  return out;
}

MeasurementPlan::MeasurementPlan(std::vector<ModeSetting> settings) : settings_(std::move(settings)) {
  for (auto& s : settings_) {
    if (!std::isfinite(s.theta) || !std::isfinite(s.t)) {
      throw input_error("measurement parameters must be finite");
    }
    if (s.t < 0.0 || s.t > 1.0) {
      throw input_error("transmissivity must lie in [0, 1], got " + std::to_string(s.t));
    }
    s.theta = normalize_angle(s.theta);
  }
}

MeasurementPlan MeasurementPlan::uniform(int n, double theta, double t) {
  return MeasurementPlan(std::vector<ModeSetting>(n, ModeSetting{theta, t}));
}

double MeasurementPlan::mean_t() const {
  double sum = 0.0;
  for (const auto& s : settings_) sum += s.t;
  return settings_.empty() ? 0.0 : sum / settings_.size();
}

double MeasurementPlan::mean_theta() const {
  double sum = 0.0;
  for (const auto& s : settings_) sum += s.theta;
  return settings_.empty() ? 0.0 : sum / settings_.size();
}

Matrix measurement_map(const ModeSetting& setting) {
  const double c = std::cos(setting.theta);
  const double s = std::sin(setting.theta);
  const double through = std::sqrt(setting.t);
  const double reflected = std::sqrt(1.0 - setting.t);
  Matrix m(2, 2);
  m << through * c, through * s, -reflected * s, reflected * c;
  return m;
}

Matrix measurement_noise(const ModeSetting& setting) {
  Matrix n = Matrix::Zero(2, 2);
  n(0, 0) = 1.0 - setting.t;
  n(1, 1) = setting.t;
  return n;
}

OutcomeCovariance outcome_covariance(const CovarianceMatrix& V, const MeasurementPlan& plan) {
  const int n = V.modes();
  if (plan.modes() != n) {
    throw input_error("measurement plan has " + std::to_string(plan.modes()) + " modes, state has " +
                      std::to_string(n));
  }
  std::vector<Eigen::Matrix2d> maps(n);
  for (int i = 0; i < n; ++i) {
    maps[i] = measurement_map(plan[i]);
  }
  Matrix sigma(2 * n, 2 * n);
  const Matrix& v = V.matrix();
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const Eigen::Matrix2d block = maps[i] * v.block<2, 2>(2 * i, 2 * j) * maps[j].transpose();
      sigma.block<2, 2>(2 * i, 2 * j) = block;
      sigma.block<2, 2>(2 * j, 2 * i) = block.transpose();
    }
    sigma(2 * i, 2 * i) += 1.0 - plan[i].t;
    sigma(2 * i + 1, 2 * i + 1) += plan[i].t;
  }
  return {n, std::move(sigma)};
}

double differential_entropy(double variance) {
  if (!(variance > 0.0)) {
    throw input_error("differential entropy needs a positive variance");
  }
  return 0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e * variance);
}

double classical_mi(const OutcomeCovariance& sigma) {
  const Matrix& s = sigma.matrix();
  Eigen::LLT<Matrix> llt(s);
  if (llt.info() != Eigen::Success) {
    throw unphysical_state("outcome covariance is not positive definite");
  }
  double log_det_joint = 0.0;
  for (Eigen::Index k = 0; k < s.rows(); ++k) {
    log_det_joint += 2.0 * std::log(llt.matrixLLT()(k, k));
  }
  double log_det_local = 0.0;
  for (int i = 0; i < sigma.modes(); ++i) {
    const double det = s(2 * i, 2 * i) * s(2 * i + 1, 2 * i + 1) - s(2 * i, 2 * i + 1) * s(2 * i + 1, 2 * i);
    log_det_local += std::log(det);
  }
  return 0.5 * (log_det_local - log_det_joint) / std::numbers::ln2;
}

double classical_mi_chain(const OutcomeCovariance& sigma) {
  const Matrix& s = sigma.matrix();
  Eigen::LLT<Matrix> llt(s);
  if (llt.info() != Eigen::Success) {
    throw unphysical_state("outcome covariance is not positive definite");
  }
  auto conditional_variance = [&](int target, const IndexList& given) {
    const int keep[] = {target};
    return condition(s, keep, given)(0, 0);
  };

  double total = 0.0;
  IndexList previous;
  for (int i = 0; i < sigma.modes(); ++i) {
    const int q = 2 * i;
    const int p = 2 * i + 1;
    if (i > 0) {
      const double marginal_entropy =
          differential_entropy(s(q, q)) + differential_entropy(conditional_variance(p, {q}));
      IndexList with_q = previous;
      with_q.push_back(q);
      const double conditional_entropy = differential_entropy(conditional_variance(q, previous)) +
                                         differential_entropy(conditional_variance(p, with_q));
      total += marginal_entropy - conditional_entropy;
    }
    previous.push_back(q);
    previous.push_back(p);
  }
  return total;
}

double measured_mi(const CovarianceMatrix& V, const MeasurementPlan& plan) {
  return classical_mi(outcome_covariance(V, plan));
}

}  // namespace gdiscord
