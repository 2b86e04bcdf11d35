#include "gdiscord/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>

#include "gdiscord/errors.hpp"
#include "gdiscord/grid_search.hpp"
#include "gdiscord/nelder_mead.hpp"

namespace gdiscord {

namespace {

constexpr int kMaxModes = 8;
constexpr double kTieTolerance = 1e-9;
constexpr double kSnapDistance = 1e-4;
constexpr double kSnapLoss = 1e-12;

struct Candidate {
  double mi;
  std::vector<ModeSetting> settings;
};

double sum_t(const std::vector<ModeSetting>& s) {
  return std::accumulate(s.begin(), s.end(), 0.0, [](double acc, const ModeSetting& m) { return acc + m.t; });
}

double sum_theta(const std::vector<ModeSetting>& s) {
  return std::accumulate(s.begin(), s.end(), 0.0,
                         [](double acc, const ModeSetting& m) { return acc + m.theta; });
}

bool preferred(const Candidate& a, const Candidate& b) {
  if (std::abs(a.mi - b.mi) > kTieTolerance) return a.mi > b.mi;
  const double ta = sum_t(a.settings), tb = sum_t(b.settings);
  if (std::abs(ta - tb) > kRegimeTolerance) return ta > tb;
  return sum_theta(a.settings) < sum_theta(b.settings) - kRegimeTolerance;
}

double safe_eval(MiObjective& objective, std::span<const ModeSetting> settings) {
  try {
    return objective(settings);
  } catch (const unphysical_state&) {
    return -std::numeric_limits<double>::infinity();
  }
}

// Moves parameters back to their coarse-grid start, or onto a nearby (1e-4)
// canonical value (t in {0, 1/2, 1}, theta a multiple of pi/2), one at a
// time, whenever that costs no MI. Removes drift along flat directions.
void snap(MiObjective& objective, Candidate& c, const std::vector<ModeSetting>& start, bool common) {
  auto try_assign = [&](auto assign) {
    auto trial = c.settings;
    if (!assign(trial)) return;
    const double mi = safe_eval(objective, trial);
    if (mi >= c.mi - kSnapLoss) {
      c.mi = std::max(mi, c.mi);
      c.settings = std::move(trial);
    }
  };
  auto nearest = [](double value, std::initializer_list<double> targets, double& out) {
    for (double target : targets) {
      if (value != target && std::abs(value - target) <= kSnapDistance) {
        out = target;
        return true;
      }
    }
    return false;
  };

  try_assign([&](std::vector<ModeSetting>& s) {
    for (std::size_t i = 0; i < s.size(); ++i) s[i].theta = start[i].theta;
    return true;
  });
  try_assign([&](std::vector<ModeSetting>& s) {
    for (std::size_t i = 0; i < s.size(); ++i) s[i].t = start[i].t;
    return true;
  });

  const std::size_t groups = common ? 1 : c.settings.size();
  for (std::size_t g = 0; g < groups; ++g) {
    try_assign([&](std::vector<ModeSetting>& s) {
      if (s[g].theta == start[g].theta) return false;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (common || i == g) s[i].theta = start[g].theta;
      }
      return true;
    });
    try_assign([&](std::vector<ModeSetting>& s) {
      if (s[g].t == start[g].t) return false;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (common || i == g) s[i].t = start[g].t;
      }
      return true;
    });
    try_assign([&](std::vector<ModeSetting>& s) {
      double target = 0.0;
      if (!nearest(s[g].t, {0.0, 0.5, 1.0}, target)) return false;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (common || i == g) s[i].t = target;
      }
      return true;
    });
    try_assign([&](std::vector<ModeSetting>& s) {
      constexpr double pi = std::numbers::pi;
      double target = 0.0;
      if (!nearest(s[g].theta, {0.0, pi / 2, pi}, target)) return false;  // theta lies in [0, pi)
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (common || i == g) s[i].theta = normalize_angle(target);
      }
      return true;
    });
  }
}

// Parameter vector layout: thetas first, then u with t = sin^2(u).
// `common` collapses all modes onto one (theta, u) pair.
std::vector<ModeSetting> decode(const std::vector<double>& x, int modes, bool common) {
  const int groups = common ? 1 : modes;
  std::vector<ModeSetting> out(modes);
  for (int i = 0; i < modes; ++i) {
    const int g = common ? 0 : i;
    const double s = std::sin(x[groups + g]);
    out[i] = {x[g], std::clamp(s * s, 0.0, 1.0)};
  }
  return out;
}

std::vector<double> encode(const std::vector<ModeSetting>& settings, bool common) {
  const std::size_t groups = common ? 1 : settings.size();
  std::vector<double> x(2 * groups);
  for (std::size_t g = 0; g < groups; ++g) {
    x[g] = settings[g].theta;
    x[groups + g] = std::asin(std::sqrt(std::clamp(settings[g].t, 0.0, 1.0)));
  }
  return x;
}

OptimizationResult search(const CovarianceMatrix& V, const SearchOptions& options, bool common) {
  const int n = V.modes();
  if (n > kMaxModes) {
    throw input_error("at most " + std::to_string(kMaxModes) + " modes are supported");
  }
  require_physical(V);

  const auto axes = common ? GridAxes::uniform(options.symmetric_theta_points, options.symmetric_t_points)
                           : GridAxes::uniform(options.theta_points, options.t_points);
  const std::size_t total = grid_size(axes, n, common);
  if (total > options.max_evaluations) {
    throw numerical_error("evaluation budget exhausted before the coarse grid completes (" +
                          std::to_string(total) + " grid points, budget " +
                          std::to_string(options.max_evaluations) + ")");
  }
  const std::size_t keep = static_cast<std::size_t>(std::max(1, options.refine_starts));
  const auto starts = options.parallel ? grid_search_parallel(V, axes, common, keep, options.jobs)
                                       : grid_search_serial(V, axes, common, keep);

  MiObjective objective(V);
  NelderMeadOptions nm;
  nm.f_tol = options.f_tol;
  nm.x_tol = options.x_tol;
  nm.max_evaluations = options.refine_evaluations;

  OptimizationResult result;
  result.evaluations = static_cast<long>(total);
  result.converged = true;
  std::optional<Candidate> best;
  for (const auto& start : starts) {
    auto refined = nelder_mead(
        [&](const std::vector<double>& x) {
          const auto settings = decode(x, n, common);
          return -safe_eval(objective, settings);
        },
        encode(start.settings, common), nm);
    result.evaluations += refined.evaluations;
    result.converged = result.converged && refined.converged;

    Candidate c{-refined.value, decode(refined.x, n, common)};
    for (auto& s : c.settings) s.theta = normalize_angle(s.theta);
    if (start.mi > c.mi) c = {start.mi, start.settings};
    snap(objective, c, start.settings, common);
    if (!best || preferred(c, *best)) best = std::move(c);
  }

  result.plan = MeasurementPlan(best->settings);
  result.j_g = measured_mi(V, result.plan);
  result.regime = classify(result.plan);
  return result;
}

}  // namespace

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::Homodyne:
      return "homodyne";
    case Regime::Heterodyne:
      return "heterodyne";
    case Regime::Interior:
      return "interior";
  }
  return "unknown";
}

Regime classify(const MeasurementPlan& plan) {
  const auto& s = plan.settings();
  auto near = [](double x, double target) { return std::abs(x - target) <= kRegimeTolerance; };
  if (std::all_of(s.begin(), s.end(), [&](const ModeSetting& m) { return near(m.t, 0.0) || near(m.t, 1.0); })) {
    return Regime::Homodyne;
  }
  if (std::all_of(s.begin(), s.end(), [&](const ModeSetting& m) { return near(m.t, 0.5); })) {
    return Regime::Heterodyne;
  }
  return Regime::Interior;
}

bool is_permutation_symmetric(const CovarianceMatrix& V, double tolerance) {
  const int n = V.modes();
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      std::iota(order.begin(), order.end(), 0);
      std::swap(order[i], order[j]);
      const auto idx = quadrature_indices(order);
      if ((submatrix(V.matrix(), idx, idx) - V.matrix()).cwiseAbs().maxCoeff() > tolerance) return false;
    }
  }
  return true;
}

OptimizationResult maximize_mi(const CovarianceMatrix& V, const SearchOptions& options) {
  return search(V, options, false);
}

OptimizationResult maximize_mi_symmetric(const CovarianceMatrix& V, const SearchOptions& options) {
  if (!is_permutation_symmetric(V)) {
    throw input_error("symmetric search needs a state invariant under mode permutations");
  }
  return search(V, options, true);
}

}  // namespace gdiscord
