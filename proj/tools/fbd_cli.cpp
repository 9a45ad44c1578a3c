// Command-line front end: divergence evaluation, invariant suites, the
// scaled-uniform estimators and the Monte Carlo harness.

#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <json.hpp>
#include <string>

#include "fbd/bregman.hpp"
#include "fbd/errors.hpp"
#include "fbd/functionals.hpp"
#include "fbd/simulation.hpp"
#include "fbd/suites.hpp"
#include "fbd/text.hpp"
#include "fbd/uniform_case.hpp"

namespace {

using nlohmann::json;

fbd::Functional functional_by_name(const std::string& name) {
  if (name == "tsd") return fbd::phi_total_squared();
  if (name == "bias") return fbd::phi_squared_bias();
  return fbd::phi_neg_entropy();
}

fbd::SpacePtr parse_grid(const std::string& spec) {
  const auto parts = fbd::split(spec, ',');
  if (parts.size() != 3) throw fbd::InvalidArgument("--grid expects a,b,cells");
  const int cells = fbd::parse_int(parts[2]);
  if (cells < 1) throw fbd::InvalidArgument("--grid needs at least one cell");
  return fbd::make_interval_grid(fbd::parse_double(parts[0]), fbd::parse_double(parts[1]),
                                 static_cast<std::size_t>(cells));
}

fbd::GridFunction load_on_grid(const std::string& path, const fbd::SpacePtr& grid) {
  const auto rows = fbd::read_function_file(path);
  if (rows.size() != grid->size()) {
    throw fbd::InvalidArgument(path + ": " + std::to_string(rows.size()) + " rows for a grid of " +
                               std::to_string(grid->size()) + " nodes");
  }
  const auto nodes = grid->nodes();
  const double tol = 1e-9 * (nodes.back() - nodes.front() + 1.0);
  std::vector<double> values;
  values.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (std::abs(rows[i].first - nodes[i]) > tol) {
      throw fbd::InvalidArgument(path + ": x = " + std::to_string(rows[i].first) + " does not match grid node " +
                                 std::to_string(nodes[i]));
    }
    values.push_back(rows[i].second);
  }
  return fbd::GridFunction(grid, std::move(values));
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

int cmd_divergence(const std::string& phi_name, const std::string& f_path, const std::string& g_path,
                   const std::string& grid_spec) {
  const fbd::SpacePtr grid = parse_grid(grid_spec);
  const fbd::GridFunction f = load_on_grid(f_path, grid);
  const fbd::GridFunction g = load_on_grid(g_path, grid);
  const fbd::DivergenceReport r = fbd::divergence(functional_by_name(phi_name), f, g);
  json out{{"phi", phi_name},
           {"value", number_or_null(r.value)},
           {"phi_f", r.phi_f},
           {"phi_g", r.phi_g},
           {"first_variation_term", r.first_variation_term},
           {"infinite", r.infinite}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_verify(const std::string& suite) {
  std::vector<fbd::CheckResult> results;
  if (suite == "properties") {
    results = fbd::run_property_suite();
  } else if (suite == "theorem") {
    results = fbd::run_theorem_suite();
  } else {
    results = fbd::run_case_study_suite();
  }
  for (const auto& r : results) std::cout << (r.pass ? "PASS  " : "FAIL  ") << r.name << "  [" << r.detail << "]\n";
  const bool ok = fbd::all_passed(results);
  std::cout << (ok ? "suite passed" : "suite FAILED") << '\n';
  return ok ? 0 : 1;
}

int cmd_estimate(const std::string& estimator, const std::string& samples_path, double t1, double t2,
                 const std::string& metric_name) {
  const fbd::Sample sample(fbd::read_samples(samples_path));
  const fbd::Metric metric = metric_name == "lebesgue" ? fbd::Metric::Lebesgue : fbd::Metric::Fisher;
  json out{{"estimator", estimator}, {"n", sample.n()}, {"x_max", sample.x_max()}};
  if (estimator == "mle") {
    out["scale"] = fbd::mle(sample).scale;
  } else if (estimator == "bayes-param") {
    out["t1"] = t1;
    out["t2"] = t2;
    out["scale"] = fbd::bayes_parameter(sample, {t1, t2});
  } else if (estimator == "restricted") {
    out["metric"] = metric_name;
    out["scale"] = fbd::bayes_uniform_restricted(sample, metric).scale;
  } else if (estimator == "projected") {
    out["scale"] = fbd::project_to_uniform(fbd::bayes_unrestricted(sample)).scale;
  } else {
    const fbd::UnrestrictedDensity d = fbd::bayes_unrestricted(sample);
    out["density"] = "n*x_max^n/((n+1)*max(x,x_max)^(n+1))";
    out["plateau"] = d(0.0);
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& out_path) {
  const fbd::SimConfig cfg = fbd::load_config(config_path);
  const auto records = fbd::run_simulation(cfg);
  fbd::write_csv(records, out_path);
  int failures = 0;
  for (const auto& r : records) {
    if (r.failed > 0) {
      std::cerr << "n=" << r.n << " " << r.estimator << ": " << r.failed << " of " << cfg.runs << " runs failed\n";
      failures += r.failed;
    }
  }
  std::cerr << "wrote " << records.size() << " records to " << out_path << " (" << failures << " failed runs)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Functional Bregman divergences and Bayesian scaled-uniform estimation"};
  app.require_subcommand(1);

  std::string phi_name, f_path, g_path, grid_spec;
  auto* div = app.add_subcommand("divergence", "Evaluate d_phi[f,g] on an interval grid and print it as JSON");
  div->add_option("--phi", phi_name, "Functional")->required()->check(CLI::IsMember({"tsd", "bias", "entropy"}));
  div->add_option("--f", f_path, "File with x,value rows for f")->required();
  div->add_option("--g", g_path, "File with x,value rows for g")->required();
  div->add_option("--grid", grid_spec, "Grid as a,b,cells")->required();

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run an invariant suite; exit 1 if any check fails");
  verify->add_option("--suite", suite, "Suite to run")
      ->required()
      ->check(CLI::IsMember({"properties", "theorem", "case-study"}));

  std::string estimator, samples_path, metric_name = "fisher";
  double t1 = 1.0, t2 = 1.0;
  auto* estimate = app.add_subcommand("estimate", "Estimate a scaled uniform distribution from samples");
  estimate->add_option("--estimator", estimator, "Estimator")
      ->required()
      ->check(CLI::IsMember({"mle", "bayes-param", "restricted", "unrestricted", "projected"}));
  estimate->add_option("--samples", samples_path, "File of positive sample values")->required();
  estimate->add_option("--t1", t1, "Gamma prior t1 (bayes-param)")->check(CLI::PositiveNumber);
  estimate->add_option("--t2", t2, "Gamma prior t2 (bayes-param)")->check(CLI::PositiveNumber);
  estimate->add_option("--metric", metric_name, "Metric on the uniform family (restricted)")
      ->check(CLI::IsMember({"fisher", "lebesgue"}));

  std::string config_path, out_path;
  auto* simulate = app.add_subcommand("simulate", "Run the Monte Carlo comparison and write CSV");
  simulate->add_option("--config", config_path, "key=value configuration file")->required();
  simulate->add_option("--out", out_path, "Output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*div) return cmd_divergence(phi_name, f_path, g_path, grid_spec);
    if (*verify) return cmd_verify(suite);
    if (*estimate) return cmd_estimate(estimator, samples_path, t1, t2, metric_name);
    if (*simulate) return cmd_simulate(config_path, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
