#include "wexpfam/moments.hpp"

#include <cmath>
#include <string>

#include "wexpfam/errors.hpp"

namespace wexpfam {

double& HVector::operator[](int i) {
  switch (i) {
    case 0: return h1;
    case 1: return h2;
    case 2: return h3;
    default: return h4;
  }
}

double HVector::operator[](int i) const {
  return const_cast<HVector&>(*this)[i];
}

double digamma(double z) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw DomainError("digamma: argument must be positive and finite, got " + std::to_string(z));
  }
  // Upward recurrence psi(z) = psi(z+1) - 1/z until the asymptotic
  // expansion is accurate, then Bernoulli terms through z^-14.
  double shifted = 0.0;
  while (z < 8.0) {
    shifted -= 1.0 / z;
    z += 1.0;
  }
  const double w = 1.0 / (z * z);
  const double tail =
      w * (1.0 / 12.0 -
           w * (1.0 / 120.0 -
                w * (1.0 / 252.0 -
                     w * (1.0 / 240.0 -
                          w * (1.0 / 132.0 - w * (691.0 / 32760.0 - w * (1.0 / 12.0)))))));
  return shifted + std::log(z) - 0.5 / z - tail;
}

double moment(const FamilySpec& spec, const Params& p, double q) {
  const double r = q / spec.s;
  const double arg = p.mu - r;
  if (!(arg > 0.0)) {
    throw MomentUndefined("E[X^q] requires mu - q/s > 0; got mu - q/s = " + std::to_string(arg));
  }
  const auto [w1, w2] = mixture_weights(spec, p);
  const double bracket = w1 + w2 * (arg / p.mu);
  return std::exp(r * std::log(p.mu * p.sigma) + std::lgamma(arg) - std::lgamma(p.mu)) * bracket;
}

double neg_power_log_moment(const FamilySpec& spec, const Params& p, double pw) {
  const double r = pw / spec.s;
  const double arg = p.mu + r;
  if (!(arg > 0.0)) {
    throw MomentUndefined("E[X^-p log X] requires mu + p/s > 0; got mu + p/s = " +
                          std::to_string(arg));
  }
  const auto [w1, w2] = mixture_weights(spec, p);
  const double log_rate = std::log(p.mu * p.sigma);
  const double prefactor =
      std::exp(-r * log_rate + std::lgamma(arg) - std::lgamma(p.mu)) / -spec.s;
  return prefactor * (w1 * (digamma(arg) - log_rate) +
                      w2 * (arg / p.mu) * (digamma(arg + 1.0) - log_rate));
}

double weighted_log_moment(const FamilySpec& spec, const Params& p) {
  return (digamma(p.mu + 1.0) - std::log(p.mu * p.sigma)) / (p.sigma + spec.delta);
}

HVector population_h(const FamilySpec& spec, const Params& p) {
  HVector h;
  h.h4 = (1.0 / p.sigma) * (1.0 + spec.delta / ((p.sigma + spec.delta) * p.mu));
  h.h3 = -spec.s * neg_power_log_moment(spec, p, 0.0);
  h.h2 = -spec.s * neg_power_log_moment(spec, p, spec.s);
  h.h1 = spec.delta == 1 ? weighted_log_moment(spec, p) : h.h2;
  return h;
}

}  // namespace wexpfam
