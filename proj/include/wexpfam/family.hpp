#pragma once

#include <utility>

namespace wexpfam {

// Identifies a member of the weighted exponential family with a power
// generator.  The generator is T(x) = x^(-s), so classical rows with
// T(x) = x^d correspond to s = -d; delta is the Kronecker indicator
// (1 for the weighted case a=b, 0 otherwise).
struct FamilySpec {
  double s;
  int delta;

  FamilySpec(double s, int delta);
};

// The (mu, sigma) pair, both strictly positive and finite.
struct Params {
  double mu;
  double sigma;

  Params(double mu, double sigma);
};

// Density
//
//   f(x) = (mu*sigma)^(mu+1) / ((sigma+delta) Gamma(mu+1))
//          * (1 + delta*T(x)) * |s|/x * exp(-mu*sigma*T(x) + mu*log T(x))
//
// on x in (0, inf).  Evaluated in log space; the linear-scale value is
// exponentiated last so large mu does not overflow Gamma(mu+1).
double density(const FamilySpec& spec, const Params& params, double x);
double log_density(const FamilySpec& spec, const Params& params, double x);

// Mixture weights (w1, w2) = (sigma, delta) / (sigma + delta); f = w1*f1 + w2*f2.
std::pair<double, double> mixture_weights(const FamilySpec& spec, const Params& params);

// Mixture component f_j, j in {1, 2}:
//   f_j(x) = (mu*sigma)^(mu+j-1) / Gamma(mu+j-1) * |s|/x
//            * exp(-mu*sigma*T(x) + (mu+j-1)*log T(x))
// f_j is the density of T^{-1}(Z_j) with Z_j ~ Gamma(mu+j-1, 1/(mu*sigma)).
double component_density(const FamilySpec& spec, const Params& params, int j, double x);

}  // namespace wexpfam
