#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wexpfam/estimators.hpp"
#include "wexpfam/random.hpp"

namespace wexpfam {

enum class BootstrapScheme {
  nonparametric,  // resample n points with replacement
  parametric,     // sample n points from the fitted model
};

struct BootstrapConfig {
  int replications = 200;  // B
  BootstrapScheme scheme = BootstrapScheme::nonparametric;
  SeededStream stream;
};

// Raw and bias-reduced estimates.  The components are the native parameters
// when a named family is given (matching how the simulation study reduces
// (lambda, phi)), otherwise (mu, sigma).
struct BiasReducedEstimate {
  std::vector<std::string> names;
  std::vector<double> raw;
  std::vector<double> reduced;         // 2*raw - replicate_mean, per component
  std::vector<double> replicate_mean;  // over successful replicates
  int replicates_used = 0;
  int failures = 0;
  // The 2*raw - mean correction can cross zero; the value is reported as-is
  // and this flag raised instead of truncating.
  bool nonpositive_reduced = false;
};

// Fits the raw estimates, refits on B bootstrap samples (replicate b always
// uses sub-stream config.stream.child(b), so results do not depend on
// evaluation order), and applies the 2*raw - mean correction over the
// successful replicates.  Failed replicates are counted and excluded; fewer
// than min(B, max(10, B/4)) successes raises BootstrapDegenerate.
BiasReducedEstimate bootstrap_bias_reduce(std::span<const double> data, const FamilySpec& spec,
                                          const BootstrapConfig& config,
                                          std::optional<NamedFamily> named = std::nullopt);

// Seam for tests: replicate b is fit to make_sample(b) instead of a drawn
// bootstrap sample.
BiasReducedEstimate bootstrap_bias_reduce_with(
    std::span<const double> data, const FamilySpec& spec, const BootstrapConfig& config,
    std::optional<NamedFamily> named,
    const std::function<std::vector<double>(int)>& make_sample);

}  // namespace wexpfam
