#include "wexpfam/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "wexpfam/errors.hpp"
#include "wexpfam/io.hpp"
#include "wexpfam/random.hpp"

namespace wexpfam {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> fit_native(std::span<const double> data, const FamilySpec& spec,
                               NamedFamily model) {
  const auto stats = summary_stats(data, spec);
  const double sigma_hat = g1(stats.hstats, spec.delta);
  const double mu_hat = g2(stats.hstats, sigma_hat, spec.delta);
  std::vector<double> out;
  for (const auto& [name, value] : native_estimates(model, mu_hat, sigma_hat, spec.s)) {
    (void)name;
    out.push_back(value);
  }
  return out;
}

}  // namespace

std::string_view estimator_name(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::moment: return "mom";
    case EstimatorKind::moment_bootstrap: return "mom_boot";
    case EstimatorKind::mle: return "mle";
  }
  return "?";
}

EstimatorKind parse_estimator_name(std::string_view name) {
  if (name == "mom") return EstimatorKind::moment;
  if (name == "mom_boot") return EstimatorKind::moment_bootstrap;
  if (name == "mle") return EstimatorKind::mle;
  throw DomainError("unknown estimator '" + std::string(name) + "'; expected mom, mom_boot or mle");
}

int default_thread_count() {
  if (const char* env = std::getenv("SIMCLI_THREADS")) {
    const long long parsed = parse_int(env, "SIMCLI_THREADS");
    if (parsed >= 1) return static_cast<int>(parsed);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

Scenario load_scenario(const std::string& path) {
  auto kv = read_key_value_file(path);
  const auto take = [&](const std::string& key) -> std::string {
    auto it = kv.find(key);
    if (it == kv.end()) return {};
    std::string value = it->second;
    kv.erase(it);
    return value;
  };

  Scenario scenario;
  const std::string model_text = take("model");
  if (model_text.empty()) throw DataFileError(path, 0, "missing required key 'model'");
  scenario.model = parse_family_name(model_text);

  scenario.param_grid.clear();
  for (const auto& pname : native_param_names(scenario.model)) {
    const std::string text = take(pname);
    if (text.empty()) {
      throw DataFileError(path, 0, "missing values for model parameter '" + pname + "'");
    }
    std::vector<double> values;
    for (const auto& token : split_list(text)) {
      const double v = parse_double(token, "parameter " + pname);
      if (!(v > 0.0)) throw DataFileError(path, 0, "parameter " + pname + " values must be > 0");
      values.push_back(v);
    }
    scenario.param_grid.push_back(std::move(values));
  }

  const std::string n_text = take("n");
  if (n_text.empty()) throw DataFileError(path, 0, "missing required key 'n'");
  for (const auto& token : split_list(n_text)) {
    const long long n = parse_int(token, "n");
    if (n < 2) throw DataFileError(path, 0, "sample sizes must be >= 2, got " + token);
    scenario.n_grid.push_back(static_cast<int>(n));
  }

  if (const std::string text = take("N"); !text.empty()) {
    const long long n = parse_int(text, "N");
    if (n < 1) throw DataFileError(path, 0, "N must be >= 1");
    scenario.replications = static_cast<int>(n);
  }
  if (const std::string text = take("B"); !text.empty()) {
    const long long b = parse_int(text, "B");
    if (b < 1) throw DataFileError(path, 0, "B must be >= 1");
    scenario.bootstrap_b = static_cast<int>(b);
  }
  if (const std::string text = take("seed"); !text.empty()) {
    scenario.master_seed = static_cast<std::uint64_t>(parse_int(text, "seed"));
  }
  if (const std::string text = take("estimators"); !text.empty()) {
    scenario.estimators.clear();
    for (const auto& token : split_list(text)) {
      scenario.estimators.push_back(parse_estimator_name(token));
    }
  }
  if (const std::string text = take("scheme"); !text.empty()) {
    if (text == "nonparametric") {
      scenario.scheme = BootstrapScheme::nonparametric;
    } else if (text == "parametric") {
      scenario.scheme = BootstrapScheme::parametric;
    } else {
      throw DataFileError(path, 0, "scheme must be nonparametric or parametric, got '" + text + "'");
    }
  }
  if (!kv.empty()) {
    throw DataFileError(path, 0, "unknown key '" + kv.begin()->first + "'");
  }
  return scenario;
}

SimulationResult run_monte_carlo(const Scenario& scenario, int threads) {
  if (scenario.replications < 1) throw DomainError("run_monte_carlo: N must be >= 1");
  if (scenario.bootstrap_b < 1) throw DomainError("run_monte_carlo: B must be >= 1");
  if (scenario.n_grid.empty()) throw DomainError("run_monte_carlo: empty n grid");
  if (scenario.estimators.empty()) throw DomainError("run_monte_carlo: no estimators requested");
  for (int n : scenario.n_grid) {
    if (n < 2) throw DomainError("run_monte_carlo: sample sizes must be >= 2");
  }

  SimulationResult result;
  result.param_names = native_param_names(scenario.model);
  if (scenario.param_grid.size() != result.param_names.size()) {
    throw DomainError("run_monte_carlo: parameter grid must cover every native parameter");
  }
  for (const auto& values : scenario.param_grid) {
    if (values.empty()) throw DomainError("run_monte_carlo: empty parameter grid entry");
  }
  for (auto kind : scenario.estimators) {
    result.estimator_names.emplace_back(estimator_name(kind));
  }

  // Materialize the cell list: cartesian product of the parameter grid
  // (row-major) crossed with the n grid.
  const std::size_t n_params = scenario.param_grid.size();
  std::vector<std::size_t> index(n_params, 0);
  std::vector<std::pair<FamilySpec, Params>> cell_models;
  for (;;) {
    NativeParams point;
    for (std::size_t k = 0; k < n_params; ++k) {
      point.emplace_back(result.param_names[k], scenario.param_grid[k][index[k]]);
    }
    const NamedModel model = from_named(scenario.model, point);
    for (int n : scenario.n_grid) {
      result.cells.push_back({model.native, n});
      cell_models.emplace_back(model.spec, model.params);
    }
    std::size_t k = n_params;
    while (k > 0) {
      --k;
      if (++index[k] < scenario.param_grid[k].size()) break;
      index[k] = 0;
      if (k == 0) goto grid_done;
    }
    if (n_params == 0) break;
  }
grid_done:;

  const int n_cells = static_cast<int>(result.cells.size());
  const int n_reps = scenario.replications;
  const int n_estimators = static_cast<int>(scenario.estimators.size());
  const std::size_t n_tasks = static_cast<std::size_t>(n_cells) * n_reps;

  result.records.resize(n_tasks * n_estimators);

  const auto run_task = [&](std::size_t task) {
    const int cell = static_cast<int>(task / n_reps);
    const int rep = static_cast<int>(task % n_reps);
    const auto& [spec, params] = cell_models[cell];
    const int n = result.cells[cell].n;

    const SeededStream rep_stream =
        SeededStream{scenario.master_seed, 0}.child(cell).child(rep);
    const std::vector<double> data = sample(spec, params, n, rep_stream.child(0));

    for (int e = 0; e < n_estimators; ++e) {
      SimulationResult::Record& record =
          result.records[(static_cast<std::size_t>(cell) * n_reps + rep) * n_estimators + e];
      record.cell = cell;
      record.estimator = e;
      record.rep = rep;
      record.estimates.assign(n_params, kNaN);
      record.ok = false;
      try {
        std::vector<double> estimates;
        switch (scenario.estimators[e]) {
          case EstimatorKind::moment:
            estimates = fit_native(data, spec, scenario.model);
            break;
          case EstimatorKind::moment_bootstrap: {
            BootstrapConfig config;
            config.replications = scenario.bootstrap_b;
            config.scheme = scenario.scheme;
            config.stream = rep_stream.child(1);
            estimates = bootstrap_bias_reduce(data, spec, config, scenario.model).reduced;
            break;
          }
          case EstimatorKind::mle: {
            const Params fitted = mle_numeric(data, spec);
            estimates.clear();
            for (const auto& [name, value] :
                 native_estimates(scenario.model, fitted.mu, fitted.sigma, spec.s)) {
              (void)name;
              estimates.push_back(value);
            }
            break;
          }
        }
        record.estimates = std::move(estimates);
        record.ok = true;
      } catch (const EstimationFailed&) {
      } catch (const BootstrapDegenerate&) {
      } catch (const OptimizationFailed&) {
      }
    }
  };

  const int n_threads =
      std::max(1, std::min<int>(threads > 0 ? threads : default_thread_count(),
                                static_cast<int>(n_tasks)));
  if (n_threads == 1) {
    for (std::size_t task = 0; task < n_tasks; ++task) run_task(task);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t task = next.fetch_add(1);
          if (task >= n_tasks) return;
          try {
            run_task(task);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            return;
          }
        }
      });
    }
    for (auto& worker : pool) worker.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  // Aggregate in a fixed order: cell, estimator, parameter.
  for (int cell = 0; cell < n_cells; ++cell) {
    for (int e = 0; e < n_estimators; ++e) {
      std::vector<double> mean(n_params, 0.0), mse(n_params, 0.0);
      int used = 0;
      for (int rep = 0; rep < n_reps; ++rep) {
        const auto& record =
            result.records[(static_cast<std::size_t>(cell) * n_reps + rep) * n_estimators + e];
        if (!record.ok) continue;
        ++used;
        for (std::size_t k = 0; k < n_params; ++k) {
          const double truth = result.cells[cell].truth[k].second;
          mean[k] += record.estimates[k];
          mse[k] += (record.estimates[k] - truth) * (record.estimates[k] - truth);
        }
      }
      const bool flagged = (n_reps - used) * 4 > n_reps;
      for (std::size_t k = 0; k < n_params; ++k) {
        MetricRow row;
        row.estimator = result.estimator_names[e];
        row.parameter = result.param_names[k];
        row.n = result.cells[cell].n;
        row.truth = result.cells[cell].truth;
        row.true_value = result.cells[cell].truth[k].second;
        if (used > 0) {
          row.rb = std::abs(mean[k] / used - row.true_value) / std::abs(row.true_value);
          row.rmse = std::sqrt(mse[k] / used);
        } else {
          row.rb = kNaN;
          row.rmse = kNaN;
        }
        row.n_effective = used;
        row.flagged = flagged;
        result.metrics.push_back(std::move(row));
      }
    }
  }
  return result;
}

void write_metrics_csv(const SimulationResult& result, std::ostream& out) {
  out << "estimator,parameter,n";
  for (const auto& name : result.param_names) out << ',' << name;
  out << ",true_value,rb,rmse,n_effective,flagged\n";
  for (const auto& row : result.metrics) {
    out << row.estimator << ',' << row.parameter << ',' << row.n;
    for (const auto& [name, value] : row.truth) {
      (void)name;
      out << ',' << format_g17(value);
    }
    out << ',' << format_g17(row.true_value) << ',' << format_g17(row.rb) << ','
        << format_g17(row.rmse) << ',' << row.n_effective << ',' << (row.flagged ? 1 : 0)
        << '\n';
  }
}

void write_estimates_csv(const SimulationResult& result, std::ostream& out) {
  out << "cell,estimator,n";
  for (const auto& name : result.param_names) out << ',' << name;
  out << ",rep";
  for (const auto& name : result.param_names) out << ',' << name << "_hat";
  out << ",status\n";
  for (const auto& record : result.records) {
    const auto& cell = result.cells[record.cell];
    out << record.cell << ',' << result.estimator_names[record.estimator] << ',' << cell.n;
    for (const auto& [name, value] : cell.truth) {
      (void)name;
      out << ',' << format_g17(value);
    }
    out << ',' << record.rep;
    for (double estimate : record.estimates) out << ',' << format_g17(estimate);
    out << ',' << (record.ok ? "ok" : "failed") << '\n';
  }
}

}  // namespace wexpfam
