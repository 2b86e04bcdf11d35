#include "gdiscord/sweep.hpp"

#include <cmath>
#include <functional>
#include <ostream>

#include <omp.h>

#include "gdiscord/errors.hpp"

namespace gdiscord {

std::string_view to_string(StateKind kind) {
  switch (kind) {
    case StateKind::Epr:
      return "epr";
    case StateKind::Ghz:
      return "ghz";
    case StateKind::Vacuum2:
      return "vacuum2";
    case StateKind::Vacuum3:
      return "vacuum3";
  }
  return "unknown";
}

StateKind parse_state_kind(std::string_view name) {
  if (name == "epr") return StateKind::Epr;
  if (name == "ghz") return StateKind::Ghz;
  if (name == "vacuum2") return StateKind::Vacuum2;
  if (name == "vacuum3") return StateKind::Vacuum3;
  throw input_error("unknown state '" + std::string(name) + "' (expected epr, ghz, vacuum2 or vacuum3)");
}

int StateSpec::modes() const { return kind == StateKind::Epr || kind == StateKind::Vacuum2 ? 2 : 3; }

CovarianceMatrix StateSpec::build() const {
  switch (kind) {
    case StateKind::Epr:
      return epr(parameter);
    case StateKind::Ghz:
      return ghz(parameter);
    case StateKind::Vacuum2:
      return vacuum(2);
    case StateKind::Vacuum3:
      return vacuum(3);
  }
  throw input_error("unknown state kind");
}

std::vector<double> VGrid::values() const {
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step) || step <= 0.0 || stop < start) {
    throw input_error("v grid needs finite start <= stop and step > 0");
  }
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(count);
  for (long k = 0; k < count; ++k) out.push_back(start + static_cast<double>(k) * step);
  return out;
}

ReportOptions SweepSpec::default_options() {
  ReportOptions options;
  options.symmetric_search = true;
  return options;
}

void SweepSpec::validate() const {
  const auto values = grid.values();
  if (noise == NoiseKind::Multiplicative && values.front() < 1.0) {
    throw input_error("multiplicative noise sweeps need v >= 1");
  }
  if (noise != NoiseKind::Multiplicative && values.front() < 0.0) {
    throw input_error("additive noise sweeps need v >= 0");
  }
  if (!(bisection_tolerance > 0.0)) {
    throw input_error("bisection tolerance must be positive");
  }
  state.build();
}

CovarianceMatrix noisy_state(const StateSpec& state, NoiseKind noise, double v) {
  return apply_noise(state.build(), NoiseModel{noise, v});
}

double bisect_switch(const std::function<bool(double)>& predicate, double lo, double hi, double tolerance) {
  const bool at_lo = predicate(lo);
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    (predicate(mid) == at_lo ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  const auto values = spec.grid.values();
  const auto count = static_cast<long>(values.size());
  SweepResult result;
  result.rows.resize(values.size());

  // The grid search inside each report runs single-threaded; parallelism is
  // across v values.
  ReportOptions options = spec.options;
  options.search.jobs = 1;
  const int threads = spec.jobs > 0 ? spec.jobs : omp_get_max_threads();
  std::vector<std::exception_ptr> errors(values.size());

#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long k = 0; k < count; ++k) {
    try {
      result.rows[k] = {values[k], gaussian_multipartite_qd(noisy_state(spec.state, spec.noise, values[k]), options)};
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  auto homodyne_at = [&](double v) {
    const auto V = noisy_state(spec.state, spec.noise, v);
    const auto cc = options.symmetric_search ? maximize_mi_symmetric(V, options.search)
                                             : maximize_mi(V, options.search);
    return cc.regime == Regime::Homodyne;
  };
  auto entangled_at = [&](double v) {
    return assess_separability(noisy_state(spec.state, spec.noise, v)).entangled;
  };

  for (std::size_t k = 1; k < result.rows.size(); ++k) {
    const auto& prev = result.rows[k - 1];
    const auto& cur = result.rows[k];
    if (!result.thresholds.regime_switch && prev.report.regime == Regime::Homodyne &&
        cur.report.regime != Regime::Homodyne) {
      result.thresholds.regime_switch = bisect_switch(homodyne_at, prev.v, cur.v, spec.bisection_tolerance);
    }
    if (!result.thresholds.separability_boundary &&
        prev.report.separability.entangled != cur.report.separability.entangled) {
      result.thresholds.separability_boundary =
          bisect_switch(entangled_at, prev.v, cur.v, spec.bisection_tolerance);
    }
  }
  return result;
}

void write_csv(std::ostream& out, const SweepResult& result) {
  out << kCsvHeader << '\n';
  auto optional = [](const std::optional<double>& x) { return x ? format_number(*x) : std::string(); };
  for (const auto& row : result.rows) {
    const auto& r = row.report;
    out << format_number(row.v) << ',' << format_number(r.i_q) << ',' << format_number(r.j_g) << ','
        << format_number(r.delta_g) << ',' << optional(r.j_asym) << ',' << optional(r.delta_asym) << ','
        << format_number(r.plan.mean_t()) << ',' << format_number(r.plan.mean_theta()) << ','
        << to_string(r.regime) << ',' << (r.separability.entangled ? "true" : "false") << '\n';
  }
}

Json sidecar_json(const SweepSpec& spec, const SweepResult& result) {
  auto optional = [](const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); };
  return Json{{"state", std::string(to_string(spec.state.kind))},
              {"parameter", spec.state.parameter},
              {"noise", std::string(to_string(spec.noise))},
              {"v_grid", Json{{"start", spec.grid.start}, {"stop", spec.grid.stop}, {"step", spec.grid.step}}},
              {"search", spec.options.symmetric_search ? "symmetric" : "full"},
              {"bisection_tolerance", spec.bisection_tolerance},
              {"regime_switch_v", optional(result.thresholds.regime_switch)},
              {"separability_boundary_v", optional(result.thresholds.separability_boundary)},
              {"units", "bits"}};
}

}  // namespace gdiscord
