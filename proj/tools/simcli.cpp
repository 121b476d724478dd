// simcli: sampling, estimation and Monte Carlo study front end for the
// weighted exponential family with power generators.
//
// Exit codes: 0 success, 1 usage error, 2 data/config error, 3 estimation
// failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wexpfam/bootstrap.hpp"
#include "wexpfam/errors.hpp"
#include "wexpfam/estimators.hpp"
#include "wexpfam/io.hpp"
#include "wexpfam/moments.hpp"
#include "wexpfam/named.hpp"
#include "wexpfam/random.hpp"
#include "wexpfam/simulate.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitEstimation = 3;

wexpfam::NativeParams parse_params_flag(const std::string& text) {
  wexpfam::NativeParams params;
  for (const auto& item : wexpfam::split_list(text)) {
    const auto equals = item.find('=');
    if (equals == std::string::npos) {
      throw wexpfam::DomainError("--params expects name=value pairs, got '" + item + "'");
    }
    const std::string key = item.substr(0, equals);
    params.emplace_back(key, wexpfam::parse_double(item.substr(equals + 1), "parameter " + key));
  }
  return params;
}

int cmd_sample(const std::string& model_name, const std::string& params_text, long long n,
               std::uint64_t seed, const std::string& out_path) {
  if (n < 1) throw wexpfam::DomainError("--n must be >= 1");
  const auto model = wexpfam::from_named(model_name, parse_params_flag(params_text));
  const auto draws = wexpfam::sample(model.spec, model.params, static_cast<std::size_t>(n),
                                     wexpfam::SeededStream{seed, 0});
  std::ofstream out(out_path);
  if (!out) throw wexpfam::DataFileError(out_path, 0, "cannot open for writing");
  for (double x : draws) out << wexpfam::format_g17(x) << '\n';
  return 0;
}

int cmd_moments(const std::string& model_name, const std::string& params_text,
                const std::string& q_text) {
  const auto model = wexpfam::from_named(model_name, parse_params_flag(params_text));
  const auto h = wexpfam::population_h(model.spec, model.params);
  std::cout << "quantity,value\n";
  std::cout << "h1," << wexpfam::format_g17(h.h1) << '\n';
  std::cout << "h2," << wexpfam::format_g17(h.h2) << '\n';
  std::cout << "h3," << wexpfam::format_g17(h.h3) << '\n';
  std::cout << "h4," << wexpfam::format_g17(h.h4) << '\n';
  if (!q_text.empty()) {
    for (const auto& token : wexpfam::split_list(q_text)) {
      const double q = wexpfam::parse_double(token, "--q");
      std::cout << "moment[q=" << wexpfam::format_g17(q) << "],"
                << wexpfam::format_g17(wexpfam::moment(model.spec, model.params, q)) << '\n';
    }
  }
  return 0;
}

int cmd_estimate(const std::string& model_name, const std::string& data_path, int bootstrap_b,
                 bool with_mle, double ci_level, std::uint64_t seed) {
  if (bootstrap_b < 0) throw wexpfam::DomainError("--bootstrap must be >= 1");
  const auto family = wexpfam::parse_family_name(model_name);
  // Build a spec from the family row; the generator power is fixed by the
  // row, so any positive placeholder parameters give the right (s, delta).
  wexpfam::NativeParams placeholder;
  for (const auto& name : wexpfam::native_param_names(family)) placeholder.emplace_back(name, 1.0);
  const wexpfam::FamilySpec spec = wexpfam::from_named(family, placeholder).spec;

  const auto data = wexpfam::read_positive_data(data_path);
  const auto report = wexpfam::estimate(data, spec, family, ci_level);

  std::vector<std::pair<std::string, std::string>> columns;
  const auto add = [&columns](const std::string& name, double value) {
    columns.emplace_back(name, wexpfam::format_g17(value));
  };
  add("n", static_cast<double>(report.n));
  add("mu_hat", report.mu_hat);
  add("sigma_hat", report.sigma_hat);
  for (const auto& [name, value] : report.native) add(name + "_hat", value);
  add("cov_mu_mu", report.covariance[0][0]);
  add("cov_mu_sigma", report.covariance[0][1]);
  add("cov_sigma_sigma", report.covariance[1][1]);
  add("ci_level", report.ci_level);
  add("ci_mu_low", report.ci_mu[0]);
  add("ci_mu_high", report.ci_mu[1]);
  add("ci_sigma_low", report.ci_sigma[0]);
  add("ci_sigma_high", report.ci_sigma[1]);

  if (bootstrap_b > 0) {
    wexpfam::BootstrapConfig config;
    config.replications = bootstrap_b;
    config.stream = wexpfam::SeededStream{seed, 0};
    const auto reduced = wexpfam::bootstrap_bias_reduce(data, spec, config, family);
    for (std::size_t i = 0; i < reduced.names.size(); ++i) {
      add(reduced.names[i] + "_boot", reduced.reduced[i]);
    }
    add("boot_replicates_used", reduced.replicates_used);
    add("boot_failures", reduced.failures);
    add("boot_nonpositive", reduced.nonpositive_reduced ? 1.0 : 0.0);
  }
  if (with_mle) {
    const auto fitted = wexpfam::mle_numeric(data, spec);
    add("mu_mle", fitted.mu);
    add("sigma_mle", fitted.sigma);
    for (const auto& [name, value] :
         wexpfam::native_estimates(family, fitted.mu, fitted.sigma, spec.s)) {
      add(name + "_mle", value);
    }
  }

  for (std::size_t i = 0; i < columns.size(); ++i) {
    std::cout << columns[i].first << (i + 1 < columns.size() ? "," : "\n");
  }
  for (std::size_t i = 0; i < columns.size(); ++i) {
    std::cout << columns[i].second << (i + 1 < columns.size() ? "," : "\n");
  }
  return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 std::optional<std::uint64_t> seed, int threads) {
  wexpfam::Scenario scenario = wexpfam::load_scenario(config_path);
  if (seed) scenario.master_seed = *seed;
  const auto result = wexpfam::run_monte_carlo(scenario, threads);

  std::filesystem::create_directories(out_dir);
  const auto metrics_path = std::filesystem::path(out_dir) / "metrics.csv";
  const auto estimates_path = std::filesystem::path(out_dir) / "estimates.csv";
  {
    std::ofstream out(metrics_path);
    if (!out) throw wexpfam::DataFileError(metrics_path.string(), 0, "cannot open for writing");
    wexpfam::write_metrics_csv(result, out);
  }
  {
    std::ofstream out(estimates_path);
    if (!out) throw wexpfam::DataFileError(estimates_path.string(), 0, "cannot open for writing");
    wexpfam::write_estimates_csv(result, out);
  }
  std::cerr << "wrote " << metrics_path.string() << " and " << estimates_path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted exponential family (power generators): sampling, closed-form "
               "moment-type estimation, bootstrap bias reduction, Monte Carlo studies"};
  app.require_subcommand(1);

  std::string model_name, params_text, out_path, data_path, config_path, out_dir, q_text;
  long long n = 0;
  std::uint64_t seed = 0;
  int bootstrap_b = 0;
  bool with_mle = false;
  double ci_level = 0.95;
  int threads = 0;
  bool seed_given = false;

  auto* sample_cmd = app.add_subcommand("sample", "draw variates and write them to a file");
  sample_cmd->add_option("--model", model_name, "model name")->required();
  sample_cmd->add_option("--params", params_text, "native parameters, name=value[,...]")->required();
  sample_cmd->add_option("--n", n, "number of draws")->required();
  sample_cmd->add_option("--seed", seed, "master seed")->required();
  sample_cmd->add_option("--out", out_path, "output file, one draw per line")->required();

  auto* estimate_cmd = app.add_subcommand("estimate", "fit a model to a data file, print CSV");
  estimate_cmd->add_option("--model", model_name, "model name")->required();
  estimate_cmd->add_option("--data", data_path, "data file, one positive real per line")->required();
  estimate_cmd->add_option("--bootstrap", bootstrap_b, "bootstrap replications for bias reduction");
  estimate_cmd->add_flag("--mle", with_mle, "also fit the numerical MLE");
  estimate_cmd->add_option("--ci", ci_level, "confidence level, default 0.95");
  estimate_cmd->add_option("--seed", seed, "master seed for the bootstrap");

  auto* moments_cmd = app.add_subcommand("moments", "print population h-vector and moments as CSV");
  moments_cmd->add_option("--model", model_name, "model name")->required();
  moments_cmd->add_option("--params", params_text, "native parameters, name=value[,...]")->required();
  moments_cmd->add_option("--q", q_text, "comma-separated moment orders");

  auto* simulate_cmd = app.add_subcommand("simulate", "run a Monte Carlo study from a config file");
  simulate_cmd->add_option("--config", config_path, "scenario config, key = value lines")->required();
  simulate_cmd->add_option("--out", out_dir, "output directory for metrics.csv / estimates.csv")
      ->required();
  auto* seed_opt = simulate_cmd->add_option("--seed", seed, "master seed (overrides config)");
  simulate_cmd->add_option("--threads", threads, "worker threads (default: SIMCLI_THREADS or all)");

  try {
    app.parse(argc, argv);
    seed_given = seed_opt->count() > 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sample_cmd->parsed()) return cmd_sample(model_name, params_text, n, seed, out_path);
    if (estimate_cmd->parsed()) {
      return cmd_estimate(model_name, data_path, bootstrap_b, with_mle, ci_level, seed);
    }
    if (moments_cmd->parsed()) return cmd_moments(model_name, params_text, q_text);
    if (simulate_cmd->parsed()) {
      return cmd_simulate(config_path, out_dir,
                          seed_given ? std::optional<std::uint64_t>(seed) : std::nullopt, threads);
    }
  } catch (const wexpfam::DataFileError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const wexpfam::NonPositiveData& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const wexpfam::EmptySample& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const wexpfam::EstimationFailed& e) {
    std::cerr << "estimation failed: " << e.what() << "\n";
    return kExitEstimation;
  } catch (const wexpfam::OptimizationFailed& e) {
    std::cerr << "estimation failed: " << e.what() << "\n";
    return kExitEstimation;
  } catch (const wexpfam::BootstrapDegenerate& e) {
    std::cerr << "estimation failed: " << e.what() << "\n";
    return kExitEstimation;
  } catch (const wexpfam::MomentUndefined& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEstimation;
  } catch (const wexpfam::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
