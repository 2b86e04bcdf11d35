#pragma once

#include <functional>
#include <vector>

namespace gdiscord {

struct NelderMeadOptions {
  double f_tol = 1e-10;        ///< spread of simplex values at convergence
  double x_tol = 1e-8;         ///< max vertex distance from the best vertex
  double initial_step = 0.1;
  long max_evaluations = 20000;
  int max_restarts = 3;        ///< fresh simplices around the optimum after convergence
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  long evaluations = 0;
  bool converged = false;
};

/// Minimizes `f` from `start`. Deterministic.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> start, const NelderMeadOptions& options = {});

}  // namespace gdiscord
