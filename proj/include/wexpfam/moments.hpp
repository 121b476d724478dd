#pragma once

#include "wexpfam/family.hpp"

namespace wexpfam {

// Expectations of the statistic vector driving the estimators:
//   h1(x) = x^(-s) log(x^(-s)) / (1 + delta x^(-s))
//   h2(x) = x^(-s) log(x^(-s))
//   h3(x) = log(x^(-s))
//   h4(x) = x^(-s)
// Holds either population values or sample means.  When delta = 0 the h1
// denominator is 1, so h1 == h2.
struct HVector {
  double h1 = 0.0;
  double h2 = 0.0;
  double h3 = 0.0;
  double h4 = 0.0;

  double& operator[](int i);
  double operator[](int i) const;
};

// psi^(0), the logarithmic derivative of the gamma function, for z > 0.
// Absolute error below 1e-12 on [1e-3, 1e6].
double digamma(double z);

// E[X^q] = (mu*sigma)^(q/s) Gamma(mu - q/s)/Gamma(mu)
//          * [ w1 + w2 (mu - q/s)/mu ],     requires mu - q/s > 0.
// Throws MomentUndefined when the existence condition fails (the boundary
// mu - q/s = 0 is a Gamma pole and is rejected, not clamped).
double moment(const FamilySpec& spec, const Params& params, double q);

// E[X^(-p) log X]; requires mu + p/s > 0, else MomentUndefined.
double neg_power_log_moment(const FamilySpec& spec, const Params& params, double p);

// E[ X^(-s) log(X^(-s)) / (1 + delta X^(-s)) ]
//   = [psi(mu+1) - log(mu*sigma)] / (sigma + delta),  finite for all mu, sigma > 0.
double weighted_log_moment(const FamilySpec& spec, const Params& params);

// Population h-vector:
//   h4 = (1/sigma)(1 + delta/((sigma+delta) mu))
//   h3 = -s E[log X]
//   h2 = -s E[X^(-s) log X]
//   h1 = weighted_log_moment for delta = 1, and exactly h2 for delta = 0.
HVector population_h(const FamilySpec& spec, const Params& params);

}  // namespace wexpfam
