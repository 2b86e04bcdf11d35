#include "gdiscord/grid_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <omp.h>

#include "gdiscord/errors.hpp"

namespace gdiscord {

namespace {

// MI values equal to 1e-11 count as ties. Ties prefer larger sum of t, then
// smaller sum of theta (the optimizer's final tie rule), then grid order.
double rank_key(double mi) { return std::isfinite(mi) ? std::round(mi * 1e11) : mi; }

double sum_of(const std::vector<ModeSetting>& settings, double ModeSetting::*field) {
  double s = 0.0;
  for (const auto& x : settings) s += x.*field;
  return s;
}

bool better(const GridCandidate& a, const GridCandidate& b) {
  const double ka = rank_key(a.mi), kb = rank_key(b.mi);
  if (ka != kb) return ka > kb;
  const double ta = sum_of(a.settings, &ModeSetting::t), tb = sum_of(b.settings, &ModeSetting::t);
  if (std::abs(ta - tb) > 1e-9) return ta > tb;
  const double ha = sum_of(a.settings, &ModeSetting::theta), hb = sum_of(b.settings, &ModeSetting::theta);
  if (std::abs(ha - hb) > 1e-9) return ha < hb;
  return a.index < b.index;
}

// Bounded list of the best candidates seen so far.
class TopK {
 public:
  explicit TopK(std::size_t keep) : keep_(keep) {}

  // Cheap prefilter; offer() settles ties.
  bool admits(double mi) const { return items_.size() < keep_ || rank_key(mi) >= rank_key(items_.back().mi); }

  void offer(GridCandidate candidate) {
    if (keep_ == 0) return;
    auto pos = std::lower_bound(items_.begin(), items_.end(), candidate, better);
    if (items_.size() == keep_) {
      if (pos == items_.end()) return;
      items_.pop_back();
    }
    items_.insert(pos, std::move(candidate));
  }

  std::vector<GridCandidate>& items() { return items_; }

 private:
  std::size_t keep_;
  std::vector<GridCandidate> items_;
};

double evaluate_or_floor(MiObjective& objective, std::span<const ModeSetting> settings) {
  try {
    return objective(settings);
  } catch (const unphysical_state&) {
    return -std::numeric_limits<double>::infinity();
  }
}

}  // namespace

GridAxes GridAxes::uniform(int theta_points, int t_points) {
  if (theta_points < 1 || t_points < 2) {
    throw input_error("grid needs at least 1 theta point and 2 t points");
  }
  GridAxes axes;
  for (int k = 0; k < theta_points; ++k) {
    axes.thetas.push_back(std::numbers::pi * k / theta_points);
  }
  for (int k = 0; k < t_points; ++k) {
    axes.ts.push_back(static_cast<double>(k) / (t_points - 1));
  }
  return axes;
}

std::size_t grid_size(const GridAxes& axes, int modes, bool symmetric) {
  const std::size_t base = axes.per_mode();
  if (symmetric) return base;
  std::size_t total = 1;
  for (int i = 0; i < modes; ++i) {
    if (base != 0 && total > std::numeric_limits<std::size_t>::max() / base) {
      return std::numeric_limits<std::size_t>::max();
    }
    total *= base;
  }
  return total;
}

std::vector<ModeSetting> grid_point(const GridAxes& axes, int modes, bool symmetric, std::size_t index) {
  const std::size_t base = axes.per_mode();
  const std::size_t nt = axes.ts.size();
  auto decode = [&](std::size_t digit) { return ModeSetting{axes.thetas[digit / nt], axes.ts[digit % nt]}; };
  std::vector<ModeSetting> out(modes);
  if (symmetric) {
    std::fill(out.begin(), out.end(), decode(index));
    return out;
  }
  // Mode 0 is the most significant digit.
  for (int i = modes - 1; i >= 0; --i) {
    out[i] = decode(index % base);
    index /= base;
  }
  return out;
}

std::vector<GridCandidate> grid_search_serial(const CovarianceMatrix& V, const GridAxes& axes, bool symmetric,
                                              std::size_t keep) {
  const int n = V.modes();
  const std::size_t total = grid_size(axes, n, symmetric);
  MiObjective objective(V);
  TopK best(keep);
  for (std::size_t idx = 0; idx < total; ++idx) {
    auto settings = grid_point(axes, n, symmetric, idx);
    const double mi = evaluate_or_floor(objective, settings);
    if (best.admits(mi)) best.offer({mi, idx, std::move(settings)});
  }
  return std::move(best.items());
}

std::vector<GridCandidate> grid_search_parallel(const CovarianceMatrix& V, const GridAxes& axes,
                                                bool symmetric, std::size_t keep, int jobs) {
  const int n = V.modes();
  const std::size_t total = grid_size(axes, n, symmetric);
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
  std::vector<std::vector<GridCandidate>> partial(threads);

#pragma omp parallel num_threads(threads)
  {
    MiObjective objective(V);
    TopK best(keep);
    const auto signed_total = static_cast<long long>(total);
#pragma omp for schedule(static)
    for (long long idx = 0; idx < signed_total; ++idx) {
      auto settings = grid_point(axes, n, symmetric, static_cast<std::size_t>(idx));
      const double mi = evaluate_or_floor(objective, settings);
      if (best.admits(mi)) best.offer({mi, static_cast<std::size_t>(idx), std::move(settings)});
    }
    partial[omp_get_thread_num()] = std::move(best.items());
  }

  TopK merged(keep);
  for (auto& list : partial) {
    for (auto& c : list) merged.offer(std::move(c));
  }
  return std::move(merged.items());
}

MiObjective::MiObjective(const CovarianceMatrix& V)
    : modes_(V.modes()), state_(V.matrix()), sigma_(2 * V.modes(), 2 * V.modes()), maps_(V.modes()),
      llt_(2 * V.modes()) {}

double MiObjective::operator()(std::span<const ModeSetting> settings) {
  const int n = modes_;
  for (int i = 0; i < n; ++i) {
    const double c = std::cos(settings[i].theta);
    const double s = std::sin(settings[i].theta);
    const double through = std::sqrt(settings[i].t);
    const double reflected = std::sqrt(1.0 - settings[i].t);
    maps_[i] << through * c, through * s, -reflected * s, reflected * c;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const Eigen::Matrix2d block = maps_[i] * state_.block<2, 2>(2 * i, 2 * j) * maps_[j].transpose();
      sigma_.block<2, 2>(2 * i, 2 * j) = block;
      sigma_.block<2, 2>(2 * j, 2 * i) = block.transpose();
    }
    sigma_(2 * i, 2 * i) += 1.0 - settings[i].t;
    sigma_(2 * i + 1, 2 * i + 1) += settings[i].t;
  }
  llt_.compute(sigma_);
  if (llt_.info() != Eigen::Success) {
    throw unphysical_state("outcome covariance is not positive definite");
  }
  double log_ratio = 0.0;
  for (int k = 0; k < 2 * n; ++k) {
    log_ratio -= 2.0 * std::log(llt_.matrixLLT()(k, k));
  }
  for (int i = 0; i < n; ++i) {
    log_ratio += std::log(sigma_(2 * i, 2 * i) * sigma_(2 * i + 1, 2 * i + 1) -
                          sigma_(2 * i, 2 * i + 1) * sigma_(2 * i + 1, 2 * i));
  }
  return 0.5 * log_ratio / std::numbers::ln2;
}

}  // namespace gdiscord
