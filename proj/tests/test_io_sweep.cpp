#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "gdiscord/errors.hpp"
#include "gdiscord/io.hpp"
#include "gdiscord/states.hpp"
#include "gdiscord/sweep.hpp"

using namespace gdiscord;
using doctest::Approx;

namespace {
std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

std::string csv_of(const SweepSpec& spec) {
  std::ostringstream out;
  write_csv(out, run_sweep(spec));
  return out.str();
}
}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.9115748927774447) == "1.91157489278");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(format_number(123456789012345.0) == "1.23456789012e+14");
}

TEST_CASE("covariance JSON round trip and errors") {
  const auto V = ghz(2.0);
  const auto back = covariance_from_json(to_json(V));
  CHECK(back.matrix() == V.matrix());
  CHECK(to_json(V)["n"] == 3);

  CHECK_THROWS_AS(covariance_from_json(Json::parse(R"({"n": 1, "matrix": [[1, 0], [0]]})")), input_error);
  CHECK_THROWS_AS(covariance_from_json(Json::parse(R"({"n": 2, "matrix": [[1, 0], [0, 1]]})")), input_error);
  CHECK_THROWS_AS(covariance_from_json(Json::parse(R"({"n": 1, "matrix": [[1, 0.5], [0, 1]]})")), input_error);
  CHECK_THROWS_AS(covariance_from_json(Json::parse(R"({"matrix": [[1, 0], [0, 1]]})")), input_error);
  CHECK_THROWS_AS(read_covariance_file("/nonexistent/path.json"), input_error);

  const auto plan = MeasurementPlan({{0.25, 0.5}, {1.0, 1.0}});
  const auto p = plan_from_json(to_json(plan));
  CHECK(p[0].theta == 0.25);
  CHECK(p[1].t == 1.0);
  const auto noise = noise_from_json(to_json(NoiseModel{NoiseKind::Multiplicative, 2.5}));
  CHECK(noise.kind == NoiseKind::Multiplicative);
  CHECK(noise.v == 2.5);

  SearchOptions options;
  options.theta_points = 12;
  CHECK(search_options_from_json(to_json(options)).theta_points == 12);
}

TEST_CASE("report JSON has exactly the documented keys") {
  const auto j = to_json(gaussian_multipartite_qd(epr(1.0)));
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"i_q", "j_g", "delta_g", "j_asym", "delta_asym", "theta", "t", "regime",
                                         "entangled"});
  CHECK(j["regime"] == "homodyne");
  CHECK(j["entangled"] == true);
  CHECK(j["t"].size() == 2);

  const auto g = to_json(gaussian_multipartite_qd(ghz(2.0)));
  CHECK(g["j_asym"].is_null());
  CHECK(g["delta_asym"].is_null());

  const auto b = to_json(gaussian_multipartite_qd(apply_noise(vacuum(2), {NoiseKind::Correlated, 1.0})));
  CHECK(b["entangled"] == "boundary");
}

TEST_CASE("v grid") {
  CHECK(VGrid{0.0, 1.0, 0.25}.values() == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(VGrid{0.0, 3.0, 0.1}.values().size() == 31);
  CHECK(VGrid{2.0, 2.0, 0.5}.values().size() == 1);
  CHECK_THROWS_AS(VGrid({1.0, 0.0, 0.1}).values(), input_error);
  CHECK_THROWS_AS(VGrid({0.0, 1.0, 0.0}).values(), input_error);
  CHECK_THROWS_AS(VGrid({0.0, 1.0, -0.1}).values(), input_error);
}

TEST_CASE("sweep spec validation") {
  SweepSpec spec;
  spec.state = {StateKind::Epr, 1.0};
  spec.noise = NoiseKind::Multiplicative;
  spec.grid = {0.5, 2.0, 0.5};
  CHECK_THROWS_AS(spec.validate(), input_error);
  spec.grid = {1.0, 2.0, 0.5};
  CHECK_NOTHROW(spec.validate());
  spec.noise = NoiseKind::Uncorrelated;
  spec.grid = {-0.5, 1.0, 0.5};
  CHECK_THROWS_AS(spec.validate(), input_error);
  CHECK_THROWS_AS(parse_state_kind("cat"), input_error);
  CHECK(parse_state_kind("vacuum3") == StateKind::Vacuum3);
}

TEST_CASE("EPR uncorrelated sweep: CSV, thresholds and determinism") {
  SweepSpec spec;
  spec.state = {StateKind::Epr, 1.0};
  spec.noise = NoiseKind::Uncorrelated;
  spec.grid = {0.0, 3.0, 0.1};
  const auto result = run_sweep(spec);
  REQUIRE(result.rows.size() == 31);
  REQUIRE(result.thresholds.separability_boundary.has_value());
  CHECK(std::abs(*result.thresholds.separability_boundary - (1.0 - std::exp(-2.0))) < 1e-4);
  REQUIRE(result.thresholds.regime_switch.has_value());
  CHECK(std::abs(*result.thresholds.regime_switch - 0.4978712991) < 1e-3);

  std::ostringstream out;
  write_csv(out, result);
  const auto text = lines(out.str());
  REQUIRE(text.size() == 32);
  CHECK(text[0] == kCsvHeader);
  CHECK(text[1].rfind("0,4.67381860109,1.91157489278,2.76224370831,", 0) == 0);
  for (std::size_t k = 1; k < text.size(); ++k) CHECK(fields(text[k]).size() == 10);

  // Sidecar thresholds agree with the columns.
  double regime_flip = -1.0, entangled_flip = -1.0;
  for (std::size_t k = 2; k < text.size(); ++k) {
    const auto prev = fields(text[k - 1]), cur = fields(text[k]);
    if (regime_flip < 0 && prev[8] != cur[8]) regime_flip = std::stod(cur[0]);
    if (entangled_flip < 0 && prev[9] != cur[9]) entangled_flip = std::stod(cur[0]);
  }
  CHECK(std::abs(regime_flip - *result.thresholds.regime_switch) <= 0.1);
  CHECK(std::abs(entangled_flip - *result.thresholds.separability_boundary) <= 0.1);

  const auto sidecar = sidecar_json(spec, result);
  CHECK(sidecar["regime_switch_v"].get<double>() == *result.thresholds.regime_switch);
  CHECK(sidecar["separability_boundary_v"].get<double>() == *result.thresholds.separability_boundary);
  CHECK(sidecar["state"] == "epr");
  CHECK(sidecar["noise"] == "uncorrelated");

  CHECK(csv_of(spec) == out.str());
  spec.jobs = 1;
  CHECK(csv_of(spec) == out.str());
}

TEST_CASE("GHZ multiplicative sweep: regime switch and empty asymmetric columns") {
  SweepSpec spec;
  spec.state = {StateKind::Ghz, 2.0};
  spec.noise = NoiseKind::Multiplicative;
  spec.grid = {1.0, 6.0, 0.5};
  const auto result = run_sweep(spec);
  REQUIRE(result.thresholds.regime_switch.has_value());
  CHECK(std::abs(*result.thresholds.regime_switch - 3.082) < 1e-3);
  std::ostringstream out;
  write_csv(out, result);
  const auto row = fields(lines(out.str())[1]);
  CHECK(row[4].empty());
  CHECK(row[5].empty());
  CHECK(row[6] == "1");
}

TEST_CASE("vacuum correlated sweep is never entangled") {
  SweepSpec spec;
  spec.state = {StateKind::Vacuum2, 0.0};
  spec.noise = NoiseKind::Correlated;
  spec.grid = {0.0, 3.0, 0.25};
  const auto result = run_sweep(spec);
  std::ostringstream out;
  write_csv(out, result);
  const auto text = lines(out.str());
  for (std::size_t k = 1; k < text.size(); ++k) CHECK(fields(text[k])[9] == "false");
  CHECK_FALSE(result.thresholds.separability_boundary.has_value());
}

TEST_CASE("bisection helper") {
  const double x = bisect_switch([](double v) { return v < std::sqrt(2.0); }, 0.0, 3.0, 1e-6);
  CHECK(x == Approx(std::sqrt(2.0)).epsilon(1e-6));
}
