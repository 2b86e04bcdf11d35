#pragma once

// Exhaustive coarse-grid evaluation of the measured classical MI.
//
// Two implementations of the same kernel: a serial reference and an
// OpenMP version. Both return the identical candidate list (ordering is by
// MI descending, then by flat grid index), so the parallel one can be
// checked against the serial one bit for bit.

#include <cstddef>
#include <span>
#include <vector>

#include "gdiscord/covariance.hpp"
#include "gdiscord/measurement.hpp"

namespace gdiscord {

struct GridAxes {
  std::vector<double> thetas;
  std::vector<double> ts;

  /// thetas = {0, pi/k, ..., (k-1)pi/k}, ts = {0, 1/(m-1), ..., 1}.
  static GridAxes uniform(int theta_points, int t_points);

  std::size_t per_mode() const { return thetas.size() * ts.size(); }
};

struct GridCandidate {
  double mi = 0.0;
  std::size_t index = 0;
  std::vector<ModeSetting> settings;
};

/// Number of grid points: per_mode^n, or per_mode when `symmetric`
/// (every mode shares one setting). Saturates at SIZE_MAX.
std::size_t grid_size(const GridAxes& axes, int modes, bool symmetric);

/// Settings of the grid point with flat index `index`.
std::vector<ModeSetting> grid_point(const GridAxes& axes, int modes, bool symmetric, std::size_t index);

std::vector<GridCandidate> grid_search_serial(const CovarianceMatrix& V, const GridAxes& axes, bool symmetric,
                                              std::size_t keep);

/// `jobs` <= 0 uses the OpenMP default thread count.
std::vector<GridCandidate> grid_search_parallel(const CovarianceMatrix& V, const GridAxes& axes,
                                                bool symmetric, std::size_t keep, int jobs = 0);

/// Allocation-light MI evaluator for one state. Holds scratch buffers, so
/// use one instance per thread.
class MiObjective {
 public:
  explicit MiObjective(const CovarianceMatrix& V);

  double operator()(std::span<const ModeSetting> settings);

  int modes() const { return modes_; }

 private:
  int modes_;
  Matrix state_;
  Matrix sigma_;
  std::vector<Eigen::Matrix2d> maps_;
  Eigen::LLT<Matrix> llt_;
};

}  // namespace gdiscord
