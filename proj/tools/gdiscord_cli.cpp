// gdiscord: command-line front end.
//
//   gdiscord report       --state epr --r 1 [--noise uncorrelated --v 0.5]
//   gdiscord sweep        --state ghz --a 2 --noise multiplicative --v-start 1 --v-stop 6 --v-step 0.1 --out ghz.csv
//   gdiscord validate     --state epr --r 1 --plan homodyne --m 1000000 --seed 7
//   gdiscord separability --file state.json
//   gdiscord entropy      --state ghz --a 2
//
// Exit codes: 0 ok, 2 usage/input error, 3 unphysical state, 4 validation failure.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gdiscord/covariance.hpp"
#include "gdiscord/discord.hpp"
#include "gdiscord/errors.hpp"
#include "gdiscord/io.hpp"
#include "gdiscord/mc_oracle.hpp"
#include "gdiscord/separability.hpp"
#include "gdiscord/sweep.hpp"

namespace {

using namespace gdiscord;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitUnphysical = 3;
constexpr int kExitValidation = 4;
constexpr double kValidationSigmas = 5.0;

// Values gathered from flags; every field is optional so a --config file can
// fill the gaps. Flags win over the file.
struct Settings {
  std::optional<std::string> config;
  std::optional<std::string> state;
  std::optional<double> r;
  std::optional<double> a;
  std::optional<std::string> file;
  std::optional<std::string> noise;
  std::optional<double> v;
  std::optional<int> measured;
  bool symmetric = false;
  bool full_search = false;
  std::optional<int> theta_points;
  std::optional<int> t_points;
  std::optional<int> symmetric_theta_points;
  std::optional<int> symmetric_t_points;
  std::optional<long> max_evaluations;
  std::optional<int> jobs;
  std::optional<double> v_start;
  std::optional<double> v_stop;
  std::optional<double> v_step;
  std::optional<std::string> out;
  std::optional<std::string> sidecar;
  std::optional<std::string> plan;
  std::optional<std::string> plan_file;
  std::optional<long> m;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> partition;
};

Json load_config(const Settings& s) {
  if (!s.config) return Json::object();
  std::ifstream in(*s.config);
  if (!in) throw input_error("cannot open config '" + *s.config + "'");
  try {
    auto j = Json::parse(in);
    if (!j.is_object()) throw input_error("config must be a JSON object");
    return j;
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error(std::string("cannot parse config: ") + e.what());
  }
}

// Flag value if given, else config value at `key`, else nullopt.
template <typename T>
std::optional<T> pick(const std::optional<T>& flag, const Json& config, const char* key) {
  if (flag) return flag;
  if (config.contains(key)) {
    try {
      return config.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw input_error(std::string("config key '") + key + "': " + e.what());
    }
  }
  return std::nullopt;
}

int default_jobs(const Settings& s, const Json& config) {
  if (auto j = pick(s.jobs, config, "jobs")) return *j;
  if (const char* env = std::getenv("GDISCORD_JOBS")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw input_error("GDISCORD_JOBS must be an integer");
    }
  }
  return 0;
}

SearchOptions search_options(const Settings& s, const Json& config) {
  SearchOptions o = config.contains("options") ? search_options_from_json(config.at("options")) : SearchOptions{};
  if (s.theta_points) o.theta_points = *s.theta_points;
  if (s.t_points) o.t_points = *s.t_points;
  if (s.symmetric_theta_points) o.symmetric_theta_points = *s.symmetric_theta_points;
  if (s.symmetric_t_points) o.symmetric_t_points = *s.symmetric_t_points;
  if (s.max_evaluations) o.max_evaluations = static_cast<std::size_t>(*s.max_evaluations);
  o.jobs = default_jobs(s, config);
  return o;
}

// Config "noise" is either a kind name or {"kind", "v"}; a top-level "v"
// also works.
std::optional<std::string> config_noise_kind(const Json& config) {
  if (!config.contains("noise")) return std::nullopt;
  const Json& n = config.at("noise");
  if (n.is_string()) return n.get<std::string>();
  if (n.is_object() && n.contains("kind")) return n.at("kind").get<std::string>();
  throw input_error("config key 'noise' must be a kind name or an object with 'kind'");
}

std::optional<NoiseModel> noise_model(const Settings& s, const Json& config) {
  const auto kind_name = s.noise ? s.noise : config_noise_kind(config);
  if (!kind_name) {
    if (s.v) throw input_error("--v needs --noise");
    return std::nullopt;
  }
  const NoiseKind kind = parse_noise_kind(*kind_name);
  std::optional<double> config_v;
  if (config.contains("noise") && config.at("noise").is_object() && config.at("noise").contains("v")) {
    config_v = pick(std::optional<double>{}, config.at("noise"), "v");
  }
  if (!config_v) config_v = pick(std::optional<double>{}, config, "v");
  NoiseModel n{kind, s.v ? *s.v : config_v.value_or(NoiseModel::identity(kind).v)};
  validate(n);
  return n;
}

StateSpec state_spec(const Settings& s, const Json& config) {
  const auto name = pick(s.state, config, "state");
  if (!name) throw input_error("no state given (use --state or --file)");
  StateSpec spec;
  spec.kind = parse_state_kind(*name);
  const auto parameter = pick(std::optional<double>{}, config, "parameter");
  if (spec.kind == StateKind::Epr) spec.parameter = pick(s.r, config, "r").value_or(parameter.value_or(1.0));
  if (spec.kind == StateKind::Ghz) spec.parameter = pick(s.a, config, "a").value_or(parameter.value_or(2.0));
  return spec;
}

CovarianceMatrix resolve_state(const Settings& s, const Json& config) {
  const auto file = pick(s.file, config, "file");
  CovarianceMatrix V = file ? read_covariance_file(*file) : state_spec(s, config).build();
  if (auto noise = noise_model(s, config)) V = apply_noise(V, *noise);
  require_physical(V);
  return V;
}

ReportOptions report_options(const Settings& s, const Json& config) {
  ReportOptions o;
  o.search = search_options(s, config);
  o.symmetric_search = s.symmetric || config.value("symmetric", false);
  const int measured = pick(s.measured, config, "measured").value_or(1);
  if (measured != 1 && measured != 2) throw input_error("--measured must be 1 or 2");
  o.measured_mode = measured - 1;
  return o;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

int cmd_report(const Settings& s) {
  const Json config = load_config(s);
  const auto V = resolve_state(s, config);
  const auto options = report_options(s, config);
  if (options.symmetric_search && !is_permutation_symmetric(V)) {
    throw input_error("--symmetric needs a permutation-symmetric state");
  }
  const auto report = gaussian_multipartite_qd(V, options);
  print_warnings(report.warnings);
  std::cout << to_json(report).dump(2) << '\n';
  return kExitOk;
}

int cmd_sweep(const Settings& s) {
  const Json config = load_config(s);
  if (s.file || config.contains("file")) throw input_error("sweep runs on built-in states; --file is not supported");
  if (s.v || config.contains("v")) throw input_error("sweep takes v from --v-start/--v-stop/--v-step, not --v");
  SweepSpec spec;
  spec.state = state_spec(s, config);
  const auto noise = s.noise ? s.noise : config_noise_kind(config);
  if (!noise) throw input_error("sweep needs --noise");
  spec.noise = parse_noise_kind(*noise);
  const Json grid = config.value("v_grid", Json::object());
  spec.grid.start = pick(s.v_start, grid, "start").value_or(spec.noise == NoiseKind::Multiplicative ? 1.0 : 0.0);
  spec.grid.stop = pick(s.v_stop, grid, "stop").value_or(spec.grid.start + 3.0);
  spec.grid.step = pick(s.v_step, grid, "step").value_or(0.05);
  spec.options = SweepSpec::default_options();
  spec.options.search = search_options(s, config);
  const auto search = pick(std::optional<std::string>{}, config, "search").value_or("symmetric");
  if (search != "symmetric" && search != "full") throw input_error("config key 'search' must be symmetric or full");
  spec.options.symmetric_search = !(s.full_search || search == "full");
  const int measured = pick(s.measured, config, "measured").value_or(1);
  if (measured != 1 && measured != 2) throw input_error("--measured must be 1 or 2");
  spec.options.measured_mode = measured - 1;
  spec.jobs = default_jobs(s, config);
  spec.validate();

  const auto out_path = pick(s.out, config, "out");
  if (!out_path) throw input_error("sweep needs --out");
  const auto sidecar_path = pick(s.sidecar, config, "sidecar").value_or(*out_path + ".json");

  const auto result = run_sweep(spec);
  for (const auto& row : result.rows) print_warnings(row.report.warnings);

  std::ofstream csv(*out_path, std::ios::binary);
  if (!csv) throw input_error("cannot write '" + *out_path + "'");
  write_csv(csv, result);
  std::ofstream side(sidecar_path, std::ios::binary);
  if (!side) throw input_error("cannot write '" + sidecar_path + "'");
  side << sidecar_json(spec, result).dump(2) << '\n';
  if (!csv || !side) throw input_error("write failed");
  return kExitOk;
}

int cmd_validate(const Settings& s) {
  const Json config = load_config(s);
  const auto V = resolve_state(s, config);
  const long m = pick(s.m, config, "m").value_or(1'000'000);
  const auto seed = pick(s.seed, config, "seed").value_or(20170101ULL);
  const int jobs = default_jobs(s, config);

  MeasurementPlan plan;
  std::string plan_name;
  if (const auto plan_file = pick(s.plan_file, config, "plan_file")) {
    std::ifstream in(*plan_file);
    if (!in) throw input_error("cannot open plan file '" + *plan_file + "'");
    plan = plan_from_json(Json::parse(in, nullptr, false));
    plan_name = "file";
  } else {
    plan_name = pick(s.plan, config, "plan").value_or("homodyne");
    if (plan_name == "homodyne") {
      plan = MeasurementPlan::homodyne(V.modes());
    } else if (plan_name == "heterodyne") {
      plan = MeasurementPlan::heterodyne(V.modes());
    } else if (plan_name == "optimal") {
      plan = maximize_mi(V, search_options(s, config)).plan;
    } else {
      throw input_error("--plan must be homodyne, heterodyne or optimal");
    }
  }
  if (plan.modes() != V.modes()) throw input_error("plan and state mode counts differ");

  const double analytic = measured_mi(V, plan);
  const auto estimate = estimate_mi(sample_outcomes(V, plan, m, seed, jobs));
  const double discrepancy = std::abs(estimate.mi - analytic);
  const bool pass = discrepancy <= kValidationSigmas * estimate.standard_error + 1e-12;
  Json out{{"plan_kind", plan_name},
           {"plan", to_json(plan)},
           {"analytic_mi", analytic},
           {"estimate", to_json(estimate)},
           {"discrepancy", discrepancy},
           {"sigmas", estimate.standard_error > 0 ? discrepancy / estimate.standard_error : 0.0},
           {"threshold_sigmas", kValidationSigmas},
           {"samples", m},
           {"seed", seed},
           {"sampler", kSamplerName},
           {"pass", pass}};
  std::cout << out.dump(2) << '\n';
  return pass ? kExitOk : kExitValidation;
}

int cmd_separability(const Settings& s) {
  const Json config = load_config(s);
  const auto V = resolve_state(s, config);
  Json out{{"verdict", to_json(assess_separability(V))}};
  Json cuts = Json::array();
  for (int k = 0; k < V.modes() && V.modes() >= 2; ++k) {
    const int side[] = {k};
    cuts.push_back(to_json(ppt_criterion(V, side)));
    if (V.modes() == 2) break;
  }
  out["ppt_cuts"] = std::move(cuts);
  if (duan_applicable(V)) out["duan"] = to_json(duan_criterion(V));
  if (s.partition) {
    std::vector<int> side;
    std::stringstream ss(*s.partition);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        side.push_back(std::stoi(item) - 1);
      } catch (const std::exception&) {
        throw input_error("--partition takes comma-separated 1-based mode labels");
      }
    }
    out["partition"] = to_json(ppt_criterion(V, side));
  }
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

int cmd_entropy(const Settings& s) {
  const Json config = load_config(s);
  const auto V = resolve_state(s, config);
  Json marginals = Json::array();
  for (int k = 0; k < V.modes(); ++k) {
    const int mode[] = {k};
    marginals.push_back(gaussian_entropy(marginal(V, mode)));
  }
  Json out{{"symplectic_eigenvalues", symplectic_eigenvalues(V).values},
           {"entropy", gaussian_entropy(V)},
           {"marginal_entropies", std::move(marginals)},
           {"i_q", quantum_mi(V)},
           {"units", "bits"}};
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

void add_state_options(CLI::App* cmd, Settings& s) {
  cmd->add_option("--config", s.config, "JSON config file; flags override its values");
  cmd->add_option("--state", s.state, "epr | ghz | vacuum2 | vacuum3");
  cmd->add_option("--r", s.r, "EPR squeezing parameter");
  cmd->add_option("--a", s.a, "GHZ local variance parameter (>= 1)");
  cmd->add_option("--file", s.file, "covariance JSON {\"n\": int, \"matrix\": [[...]]}");
  cmd->add_option("--noise", s.noise, "uncorrelated | multiplicative | correlated");
  cmd->add_option("--v", s.v, "noise strength");
}

void add_search_options(CLI::App* cmd, Settings& s) {
  cmd->add_option("--theta-points", s.theta_points, "coarse grid theta points per mode");
  cmd->add_option("--t-points", s.t_points, "coarse grid t points per mode");
  cmd->add_option("--symmetric-theta-points", s.symmetric_theta_points);
  cmd->add_option("--symmetric-t-points", s.symmetric_t_points);
  cmd->add_option("--max-evaluations", s.max_evaluations, "coarse grid evaluation budget");
  cmd->add_option("--jobs", s.jobs, "worker threads (default: $GDISCORD_JOBS or all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian multipartite classical correlations and quantum discord"};
  app.require_subcommand(1);
  Settings s;

  auto* report = app.add_subcommand("report", "correlation report for one state (JSON)");
  add_state_options(report, s);
  add_search_options(report, s);
  report->add_option("--measured", s.measured, "mode measured for the one-sided quantities (1 or 2)");
  report->add_flag("--symmetric", s.symmetric, "restrict to a common (theta, t) on every mode");

  auto* sweep = app.add_subcommand("sweep", "noise sweep to CSV plus threshold sidecar JSON");
  add_state_options(sweep, s);
  add_search_options(sweep, s);
  sweep->add_option("--v-start", s.v_start);
  sweep->add_option("--v-stop", s.v_stop);
  sweep->add_option("--v-step", s.v_step);
  sweep->add_option("--out", s.out, "CSV output path");
  sweep->add_option("--sidecar", s.sidecar, "threshold JSON path (default: <out>.json)");
  sweep->add_option("--measured", s.measured, "mode measured for the one-sided quantities (1 or 2)");
  sweep->add_flag("--full-search", s.full_search, "optimize all 2n parameters instead of a common (theta, t)");

  auto* validate = app.add_subcommand("validate", "Monte-Carlo check of the analytic MI");
  add_state_options(validate, s);
  add_search_options(validate, s);
  validate->add_option("--plan", s.plan, "homodyne | heterodyne | optimal");
  validate->add_option("--plan-file", s.plan_file, "measurement plan JSON");
  validate->add_option("--m", s.m, "sample count");
  validate->add_option("--seed", s.seed, "RNG seed");

  auto* separability = app.add_subcommand("separability", "Duan / PPT entanglement verdicts");
  add_state_options(separability, s);
  separability->add_option("--partition", s.partition, "extra PPT test: comma-separated 1-based modes of one side");

  auto* entropy = app.add_subcommand("entropy", "symplectic spectrum and entropies");
  add_state_options(entropy, s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (report->parsed()) return cmd_report(s);
    if (sweep->parsed()) return cmd_sweep(s);
    if (validate->parsed()) return cmd_validate(s);
    if (separability->parsed()) return cmd_separability(s);
    if (entropy->parsed()) return cmd_entropy(s);
  } catch (const unphysical_state& e) {
    std::cerr << "error: unphysical state: " << e.what() << '\n';
    return kExitUnphysical;
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const numerical_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
