#include "gdiscord/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gdiscord {

namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

using Objective = std::function<double(const std::vector<double>&)>;

std::vector<double> affine(const std::vector<double>& a, const std::vector<double>& b, double weight) {
  // a + weight * (b - a)
  std::vector<double> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + weight * (b[k] - a[k]);
  return out;
}

// One Nelder-Mead descent from a fresh simplex around `start`.
NelderMeadResult descend(const Objective& f, const std::vector<double>& start, const NelderMeadOptions& opt,
                         long budget) {
  const std::size_t d = start.size();
  long evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return f(x);
  };

  std::vector<Vertex> simplex;
  simplex.push_back({start, eval(start)});
  for (std::size_t k = 0; k < d; ++k) {
    auto x = start;
    x[k] += opt.initial_step;
    simplex.push_back({x, eval(x)});
  }
  auto order = [&] {
    std::stable_sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  };

  bool converged = false;
  while (evals < budget) {
    order();
    const double f_spread = simplex.back().f - simplex.front().f;
    double x_spread = 0.0;
    for (std::size_t i = 1; i <= d; ++i) {
      for (std::size_t k = 0; k < d; ++k) {
        x_spread = std::max(x_spread, std::abs(simplex[i].x[k] - simplex[0].x[k]));
      }
    }
    if (f_spread <= opt.f_tol && x_spread <= opt.x_tol) {
      converged = true;
      break;
    }

    std::vector<double> centroid(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t k = 0; k < d; ++k) centroid[k] += simplex[i].x[k] / static_cast<double>(d);
    }
    Vertex& worst = simplex.back();

    const auto reflected = affine(centroid, worst.x, -1.0);
    const double f_reflected = eval(reflected);
    if (f_reflected < simplex.front().f) {
      const auto expanded = affine(centroid, worst.x, -2.0);
      const double f_expanded = eval(expanded);
      worst = f_expanded < f_reflected ? Vertex{expanded, f_expanded} : Vertex{reflected, f_reflected};
      continue;
    }
    if (f_reflected < simplex[d - 1].f) {
      worst = {reflected, f_reflected};
      continue;
    }
    const bool outside = f_reflected < worst.f;
    const auto contracted = outside ? affine(centroid, reflected, 0.5) : affine(centroid, worst.x, 0.5);
    const double f_contracted = eval(contracted);
    if (f_contracted < std::min(f_reflected, worst.f)) {
      worst = {contracted, f_contracted};
      continue;
    }
    for (std::size_t i = 1; i <= d; ++i) {
      simplex[i].x = affine(simplex[0].x, simplex[i].x, 0.5);
      simplex[i].f = eval(simplex[i].x);
    }
  }
  order();
  return {simplex.front().x, simplex.front().f, evals, converged};
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> start, const NelderMeadOptions& options) {
  NelderMeadResult best = descend(f, start, options, options.max_evaluations);
  for (int restart = 0; restart < options.max_restarts; ++restart) {
    const long remaining = options.max_evaluations - best.evaluations;
    if (remaining <= 0) break;
    NelderMeadOptions local = options;
    local.initial_step = std::max(options.initial_step * 0.1, 100.0 * options.x_tol);
    auto next = descend(f, best.x, local, remaining);
    next.evaluations += best.evaluations;
    const bool improved = next.value < best.value - options.f_tol;
    if (next.value <= best.value) {
      best = std::move(next);
    } else {
      best.evaluations = next.evaluations;
    }
    if (!improved) break;
  }
  return best;
}

}  // namespace gdiscord
