#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>

#include "wexpfam/family.hpp"
#include "wexpfam/moments.hpp"
#include "wexpfam/named.hpp"

namespace wexpfam {

// Sample means of (h1, h2, h3, h4) over a positive sample of size n.
struct SampleHStats {
  HVector hstats;
  std::size_t n = 0;
};

// One pass over the data; requires n >= 2 and every point > 0.
SampleHStats summary_stats(std::span<const double> data, const FamilySpec& spec);

// The sigma map.  With
//   C = 1 - delta h4 + delta h2 / (delta h1 + 1)
//   D = delta - delta h3 / (delta h1 + 1)
// returns the positive root of  h4 sigma^2 - C sigma - D = 0,
//   sigma = [C + sqrt(C^2 + 4 h4 D)] / (2 h4),
// which collapses to 1/h4 when delta = 0 (there it coincides with the ML
// estimator).  Throws EstimationFailed on a negative discriminant or a
// non-positive root; degenerate samples are reported, never clamped.
double g1(const HVector& h, int delta);

// The mu map: (delta h1 + 1) / (sigma h2 - h3); the denominator must be
// strictly positive, else EstimationFailed naming the offending value.
double g2(const HVector& h, double sigma, int delta);

struct EstimateReport {
  double mu_hat = 0.0;
  double sigma_hat = 0.0;
  NativeParams native;  // filled when a named family is supplied
  // Asymptotic covariance of (mu_hat, sigma_hat) at this sample size,
  // A Sigma A^T / n; NaN-filled when n < 5.
  std::array<std::array<double, 2>, 2> covariance{};
  double ci_level = 0.95;
  std::array<double, 2> ci_mu{};     // Wald interval for mu
  std::array<double, 2> ci_sigma{};  // Wald interval for sigma
  std::size_t n = 0;
};

// Moment-type point estimates sigma_hat = g1(Xbar), mu_hat = g2(Xbar,
// sigma_hat), plus delta-method covariance and Wald intervals (when n >= 5)
// and native-parameter estimates (when a named family is given).
EstimateReport estimate(std::span<const double> data, const FamilySpec& spec,
                        std::optional<NamedFamily> named = std::nullopt, double ci_level = 0.95);

// Jacobian of x -> (g2(x, g1(x)), g1(x)) by central differences with step
// eps^(1/3) max(1, |x_i|) per coordinate; row 0 is the mu map.
std::array<std::array<double, 4>, 2> estimator_jacobian(const HVector& h, int delta);

// A Sigma_hat A^T / n with Sigma_hat the sample covariance of the per-point
// h-vectors and A = estimator_jacobian at the sample means.  Requires n >= 5
// and a successful point fit.
std::array<std::array<double, 2>, 2> asymptotic_covariance(std::span<const double> data,
                                                           const FamilySpec& spec, double mu_hat,
                                                           double sigma_hat);

// Numerical maximum likelihood over (log mu, log sigma), Nelder-Mead,
// started at the moment-type estimates unless an init is given.  Converges
// on simplex diameter < 1e-10 or finite-difference gradient norm < 1e-8;
// throws OptimizationFailed (with the last iterate) otherwise.
Params mle_numeric(std::span<const double> data, const FamilySpec& spec,
                   std::optional<Params> init = std::nullopt);

// Total log-likelihood of the sample; the comparison yardstick for the tests.
double log_likelihood(std::span<const double> data, const FamilySpec& spec, const Params& params);

}  // namespace wexpfam
