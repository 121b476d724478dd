#include "wexpfam/family.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "wexpfam/errors.hpp"

namespace wexpfam {

namespace {

void check_x(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("x must be a positive finite real, got " + std::to_string(x));
  }
}

// log f_j for the component index j in {1, 2}; k = mu + j - 1 is the gamma
// shape of the matching Z_j.
double log_component(const FamilySpec& spec, const Params& p, int j, double x) {
  const double k = p.mu + (j - 1);
  const double u = -spec.s * std::log(x);  // log T(x)
  const double t = std::exp(u);            // T(x)
  if (std::isinf(t)) return -std::numeric_limits<double>::infinity();
  return k * std::log(p.mu * p.sigma) - std::lgamma(k) + std::log(std::abs(spec.s)) -
         std::log(x) + k * u - p.mu * p.sigma * t;
}

}  // namespace

FamilySpec::FamilySpec(double s_, int delta_) : s(s_), delta(delta_) {
  if (!std::isfinite(s) || s == 0.0) {
    throw DomainError("generator power s must be finite and nonzero");
  }
  if (delta != 0 && delta != 1) {
    throw DomainError("delta must be 0 or 1, got " + std::to_string(delta));
  }
}

Params::Params(double mu_, double sigma_) : mu(mu_), sigma(sigma_) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw DomainError("mu must be a positive finite real, got " + std::to_string(mu));
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw DomainError("sigma must be a positive finite real, got " + std::to_string(sigma));
  }
}

double log_density(const FamilySpec& spec, const Params& p, double x) {
  check_x(x);
  // With delta = 0 the density is exactly the first mixture component.
  if (spec.delta == 0) return log_component(spec, p, 1, x);

  const double u = -spec.s * std::log(x);
  const double t = std::exp(u);
  // T(x) overflows only far past the point where exp(-mu*sigma*T) has
  // driven the density to zero.
  if (std::isinf(t)) return -std::numeric_limits<double>::infinity();
  return (p.mu + 1.0) * std::log(p.mu * p.sigma) - std::log(p.sigma + 1.0) -
         std::lgamma(p.mu + 1.0) + std::log1p(t) + std::log(std::abs(spec.s)) -
         std::log(x) + p.mu * u - p.mu * p.sigma * t;
}

double density(const FamilySpec& spec, const Params& p, double x) {
  return std::exp(log_density(spec, p, x));
}

std::pair<double, double> mixture_weights(const FamilySpec& spec, const Params& p) {
  const double total = p.sigma + spec.delta;
  return {p.sigma / total, spec.delta / total};
}

double component_density(const FamilySpec& spec, const Params& p, int j, double x) {
  if (j != 1 && j != 2) {
    throw DomainError("component index must be 1 or 2, got " + std::to_string(j));
  }
  check_x(x);
  return std::exp(log_component(spec, p, j, x));
}

}  // namespace wexpfam
