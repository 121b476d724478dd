#include "wexpfam/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wexpfam/errors.hpp"

namespace wexpfam {

namespace {

// Point fit in the reporting parameterization: native when a family is
// given, (mu, sigma) otherwise.
std::vector<double> fit(std::span<const double> data, const FamilySpec& spec,
                        const std::optional<NamedFamily>& named) {
  const auto stats = summary_stats(data, spec);
  const double sigma_hat = g1(stats.hstats, spec.delta);
  const double mu_hat = g2(stats.hstats, sigma_hat, spec.delta);
  if (!named) return {mu_hat, sigma_hat};
  std::vector<double> out;
  for (const auto& [name, value] : native_estimates(*named, mu_hat, sigma_hat, spec.s)) {
    (void)name;
    out.push_back(value);
  }
  return out;
}

}  // namespace

BiasReducedEstimate bootstrap_bias_reduce_with(
    std::span<const double> data, const FamilySpec& spec, const BootstrapConfig& config,
    std::optional<NamedFamily> named,
    const std::function<std::vector<double>(int)>& make_sample) {
  if (config.replications < 1) {
    throw DomainError("bootstrap: B must be >= 1, got " + std::to_string(config.replications));
  }

  BiasReducedEstimate result;
  result.names = named ? native_param_names(*named) : std::vector<std::string>{"mu", "sigma"};
  result.raw = fit(data, spec, named);  // raw fit failures propagate

  const std::size_t k = result.raw.size();
  std::vector<double> sum(k, 0.0);
  for (int b = 0; b < config.replications; ++b) {
    const std::vector<double> replicate = make_sample(b);
    try {
      const auto est = fit(replicate, spec, named);
      for (std::size_t i = 0; i < k; ++i) sum[i] += est[i];
      ++result.replicates_used;
    } catch (const EstimationFailed&) {
      ++result.failures;
    }
  }

  const int required = std::min(config.replications, std::max(10, config.replications / 4));
  if (result.replicates_used < required) {
    throw BootstrapDegenerate("bootstrap: only " + std::to_string(result.replicates_used) + " of " +
                              std::to_string(config.replications) + " replicates estimable (need " +
                              std::to_string(required) + ")");
  }

  result.replicate_mean.resize(k);
  result.reduced.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    result.replicate_mean[i] = sum[i] / result.replicates_used;
    result.reduced[i] = 2.0 * result.raw[i] - result.replicate_mean[i];
    if (!(result.reduced[i] > 0.0)) result.nonpositive_reduced = true;
  }
  return result;
}

BiasReducedEstimate bootstrap_bias_reduce(std::span<const double> data, const FamilySpec& spec,
                                          const BootstrapConfig& config,
                                          std::optional<NamedFamily> named) {
  if (config.scheme == BootstrapScheme::nonparametric) {
    return bootstrap_bias_reduce_with(
        data, spec, config, named, [&](int b) {
          RandomStream rng(config.stream.child(static_cast<std::uint64_t>(b)));
          std::vector<double> resampled(data.size());
          for (double& x : resampled) x = data[rng.uniform_below(data.size())];
          return resampled;
        });
  }

  // Parametric: draw replicates from the fitted model.
  const auto stats = summary_stats(data, spec);
  const double sigma_hat = g1(stats.hstats, spec.delta);
  const double mu_hat = g2(stats.hstats, sigma_hat, spec.delta);
  const Params fitted(mu_hat, sigma_hat);
  return bootstrap_bias_reduce_with(
      data, spec, config, named, [&, fitted](int b) {
        return sample(spec, fitted, data.size(), config.stream.child(static_cast<std::uint64_t>(b)));
      });
}

}  // namespace wexpfam
