#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "wexpfam/bootstrap.hpp"
#include "wexpfam/named.hpp"

namespace wexpfam {

enum class EstimatorKind {
  moment,            // raw moment-type estimates
  moment_bootstrap,  // bootstrap bias-reduced moment-type estimates
  mle,               // numerical maximum likelihood
};

std::string_view estimator_name(EstimatorKind kind);        // mom / mom_boot / mle
EstimatorKind parse_estimator_name(std::string_view name);

// One simulation study: a named model with a grid over its native
// parameters (cartesian product) crossed with a grid of sample sizes.
struct Scenario {
  NamedFamily model = NamedFamily::weighted_inverse_lindley;
  std::vector<std::vector<double>> param_grid;  // per native parameter, canonical order
  std::vector<int> n_grid;
  int replications = 1000;  // N
  int bootstrap_b = 200;    // B
  std::uint64_t master_seed = 0;
  std::vector<EstimatorKind> estimators = {EstimatorKind::moment,
                                           EstimatorKind::moment_bootstrap, EstimatorKind::mle};
  BootstrapScheme scheme = BootstrapScheme::nonparametric;
};

// Reads a scenario from a "key = value" file: model, one key per native
// parameter (comma lists make the grid), n, N, B, seed, estimators, scheme.
Scenario load_scenario(const std::string& path);

struct MetricRow {
  std::string estimator;
  std::string parameter;
  int n = 0;
  NativeParams truth;  // the full grid point
  double true_value = 0.0;
  double rb = 0.0;    // |mean(estimates) - truth| / |truth|
  double rmse = 0.0;  // sqrt(mean((estimate - truth)^2))
  int n_effective = 0;
  bool flagged = false;  // more than 25% of the replications failed
};

struct SimulationResult {
  std::vector<std::string> param_names;
  std::vector<std::string> estimator_names;

  struct Cell {
    NativeParams truth;
    int n = 0;
  };
  std::vector<Cell> cells;

  // Raw per-replication estimates, ordered by (cell, replication, estimator).
  struct Record {
    int cell = 0;
    int estimator = 0;
    int rep = 0;
    std::vector<double> estimates;  // per native parameter; NaN when failed
    bool ok = false;
  };
  std::vector<Record> records;

  // Aggregates, ordered by (cell, estimator, parameter).
  std::vector<MetricRow> metrics;
};

// Runs the study.  Replication r of cell c always uses sub-stream
// (master_seed, c, r), and results land in pre-indexed slots, so the output
// is identical for any thread count.  threads <= 0 picks the default
// (SIMCLI_THREADS or hardware concurrency).  Estimation failures are counted
// into n_effective and excluded; a (cell, estimator) with more than 25%
// failures is flagged.
SimulationResult run_monte_carlo(const Scenario& scenario, int threads = 0);

void write_metrics_csv(const SimulationResult& result, std::ostream& out);
void write_estimates_csv(const SimulationResult& result, std::ostream& out);

int default_thread_count();

}  // namespace wexpfam
