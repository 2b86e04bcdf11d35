#pragma once

// Noise sweeps over the built-in state families: one CorrelationReport per
// grid value of v, plus the regime-switch and separability-boundary values
// located by bisection.

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gdiscord/discord.hpp"
#include "gdiscord/io.hpp"
#include "gdiscord/states.hpp"

namespace gdiscord {

enum class StateKind { Epr, Ghz, Vacuum2, Vacuum3 };

std::string_view to_string(StateKind kind);
StateKind parse_state_kind(std::string_view name);

struct StateSpec {
  StateKind kind = StateKind::Epr;
  double parameter = 1.0;  ///< r for epr, a for ghz, ignored for vacua

  int modes() const;
  CovarianceMatrix build() const;
};

struct VGrid {
  double start = 0.0;
  double stop = 1.0;
  double step = 0.1;

  /// start, start + step, ... up to stop (inclusive within 1e-9 step).
  /// Throws input_error for an empty or non-monotone grid.
  std::vector<double> values() const;
};

struct SweepSpec {
  StateSpec state;
  NoiseKind noise = NoiseKind::Uncorrelated;
  VGrid grid;
  ReportOptions options = default_options();
  int jobs = 0;
  double bisection_tolerance = 1e-4;

  static ReportOptions default_options();
  /// Throws input_error for inadmissible state/noise/grid combinations.
  void validate() const;
};

struct SweepRow {
  double v = 0.0;
  CorrelationReport report;
};

struct SweepThresholds {
  std::optional<double> regime_switch;          ///< first v where the optimum leaves homodyne
  std::optional<double> separability_boundary;  ///< first v where the entanglement verdict flips
};

struct SweepResult {
  std::vector<SweepRow> rows;
  SweepThresholds thresholds;
};

CovarianceMatrix noisy_state(const StateSpec& state, NoiseKind noise, double v);

/// Evaluates every grid point (in parallel up to spec.jobs threads; rows are
/// ordered by v) and bisects the thresholds.
SweepResult run_sweep(const SweepSpec& spec);

/// Bisection on `predicate` between lo (predicate(lo) == at_lo) and hi until
/// the bracket is narrower than `tolerance`; returns the bracket midpoint.
double bisect_switch(const std::function<bool(double)>& predicate, double lo, double hi, double tolerance);

inline constexpr const char* kCsvHeader = "v,i_q,j_g,delta_g,j_asym,delta_asym,t,theta,regime,entangled";

/// Header plus one row per grid point; numbers with 12 significant digits.
void write_csv(std::ostream& out, const SweepResult& result);

Json sidecar_json(const SweepSpec& spec, const SweepResult& result);

}  // namespace gdiscord
