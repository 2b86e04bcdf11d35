#include "gdiscord/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "gdiscord/errors.hpp"

namespace gdiscord {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 12);
  if (ec != std::errc{}) {
    throw numerical_error("number formatting failed");
  }
  std::string out(buffer, end);
  if (out == "-0") out = "0";
  return out;
}

Json to_json(const CovarianceMatrix& V) {
  Json rows = Json::array();
  for (int i = 0; i < V.dimension(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < V.dimension(); ++j) row.push_back(V(i, j));
    rows.push_back(std::move(row));
  }
  return Json{{"n", V.modes()}, {"matrix", std::move(rows)}};
}

CovarianceMatrix covariance_from_json(const Json& j) {
  try {
    const int n = j.at("n").get<int>();
    const auto& rows = j.at("matrix");
    if (n <= 0 || !rows.is_array() || rows.size() != static_cast<std::size_t>(2 * n)) {
      throw input_error("covariance 'matrix' must have 2n rows");
    }
    Matrix m(2 * n, 2 * n);
    for (int r = 0; r < 2 * n; ++r) {
      const auto& row = rows.at(r);
      if (!row.is_array() || row.size() != static_cast<std::size_t>(2 * n)) {
        throw input_error("covariance row " + std::to_string(r) + " must have 2n entries");
      }
      for (int c = 0; c < 2 * n; ++c) m(r, c) = row.at(c).get<double>();
    }
    return make_covariance(n, m);
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("malformed covariance JSON: ") + e.what());
  }
}

CovarianceMatrix read_covariance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw input_error("cannot open covariance file '" + path + "'");
  }
  try {
    return covariance_from_json(Json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error("cannot parse '" + path + "': " + e.what());
  }
}

Json to_json(const NoiseModel& noise) { return Json{{"kind", std::string(to_string(noise.kind))}, {"v", noise.v}}; }

NoiseModel noise_from_json(const Json& j) {
  try {
    NoiseModel noise{parse_noise_kind(j.at("kind").get<std::string>()), j.at("v").get<double>()};
    validate(noise);
    return noise;
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("malformed noise JSON: ") + e.what());
  }
}

Json to_json(const MeasurementPlan& plan) {
  Json params = Json::array();
  for (const auto& s : plan.settings()) params.push_back(Json{{"theta", s.theta}, {"t", s.t}});
  return Json{{"params", std::move(params)}};
}

MeasurementPlan plan_from_json(const Json& j) {
  try {
    std::vector<ModeSetting> settings;
    for (const auto& p : j.at("params")) settings.push_back({p.at("theta").get<double>(), p.at("t").get<double>()});
    return MeasurementPlan(std::move(settings));
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("malformed measurement plan JSON: ") + e.what());
  }
}

Json to_json(const SearchOptions& o) {
  return Json{{"theta_points", o.theta_points},
              {"t_points", o.t_points},
              {"symmetric_theta_points", o.symmetric_theta_points},
              {"symmetric_t_points", o.symmetric_t_points},
              {"max_evaluations", o.max_evaluations},
              {"refine_starts", o.refine_starts},
              {"f_tol", o.f_tol},
              {"x_tol", o.x_tol},
              {"refine_evaluations", o.refine_evaluations}};
}

SearchOptions search_options_from_json(const Json& j, SearchOptions o) {
  try {
    auto take = [&](const char* key, auto& field) {
      if (j.contains(key)) field = j.at(key).get<std::remove_reference_t<decltype(field)>>();
    };
    take("theta_points", o.theta_points);
    take("t_points", o.t_points);
    take("symmetric_theta_points", o.symmetric_theta_points);
    take("symmetric_t_points", o.symmetric_t_points);
    take("max_evaluations", o.max_evaluations);
    take("refine_starts", o.refine_starts);
    take("f_tol", o.f_tol);
    take("x_tol", o.x_tol);
    take("refine_evaluations", o.refine_evaluations);
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("malformed search options: ") + e.what());
  }
  return o;
}

Json to_json(const SeparabilityVerdict& v) {
  Json entangled = v.boundary ? Json("boundary") : Json(v.entangled);
  return Json{{"entangled", std::move(entangled)},
              {"method", std::string(to_string(v.method))},
              {"witness", v.witness},
              {"partition", v.partition}};
}

Json to_json(const CorrelationReport& r) {
  Json theta = Json::array();
  Json t = Json::array();
  for (const auto& s : r.plan.settings()) {
    theta.push_back(s.theta);
    t.push_back(s.t);
  }
  auto optional = [](const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); };
  Json entangled = r.separability.boundary ? Json("boundary") : Json(r.separability.entangled);
  return Json{{"i_q", r.i_q},
              {"j_g", r.j_g},
              {"delta_g", r.delta_g},
              {"j_asym", optional(r.j_asym)},
              {"delta_asym", optional(r.delta_asym)},
              {"theta", std::move(theta)},
              {"t", std::move(t)},
              {"regime", std::string(to_string(r.regime))},
              {"entangled", std::move(entangled)}};
}

Json to_json(const MiEstimate& e) {
  return Json{{"mi", e.mi}, {"standard_error", e.standard_error}, {"jackknife_groups", e.jackknife_groups}};
}

}  // namespace gdiscord
