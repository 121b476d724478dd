#pragma once

// Test-side oracles, independent of the code paths they check:
//  - improper-integral quadrature (Boost double-exponential scheme)
//  - a long-double direct evaluation of the density formula
//  - the regularized incomplete gamma function for KS tests
//  - the shared (s, delta, mu, sigma) test grid

#include <cmath>
#include <utility>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "wexpfam/family.hpp"

namespace testsupport {

// Integral of f over (0, inf), double-exponential transform, target 1e-10.
template <class F>
double integrate_zero_inf(const F& f, double tolerance = 1e-11) {
  boost::math::quadrature::exp_sinh<double> integrator(12);
  return integrator.integrate(f, tolerance);
}

// Quadrature value of E[g(X)] where g receives (x, t, u) with t = x^(-s) and
// u = log(t) = -s log(x).  Where the density has underflowed to zero the
// product is zero regardless of g, which keeps the integrand NaN-free at the
// extreme abscissae the quadrature probes.
template <class G>
double expectation_quad(const wexpfam::FamilySpec& spec, const wexpfam::Params& params,
                        const G& g, double tolerance = 1e-11) {
  return integrate_zero_inf(
      [&](double x) {
        const double fx = wexpfam::density(spec, params, x);
        if (fx == 0.0) return 0.0;
        const double u = -spec.s * std::log(x);
        return g(x, std::exp(u), u) * fx;
      },
      tolerance);
}

// Direct long-double evaluation of the density written exactly as the
// closed form reads, one term per factor.
inline long double ref_log_density(long double s, int delta, long double mu, long double sigma,
                                   long double x) {
  const long double t = powl(x, -s);
  return (mu + 1.0L) * logl(mu * sigma) - logl(sigma + delta) - lgammal(mu + 1.0L) +
         log1pl(delta * t) + logl(fabsl(s)) - logl(x) + mu * logl(t) - mu * sigma * t;
}

inline long double ref_density(long double s, int delta, long double mu, long double sigma,
                               long double x) {
  return expl(ref_log_density(s, delta, mu, sigma, x));
}

// P(a, x/scale): CDF of Gamma(shape, scale).
inline double gamma_cdf(double shape, double scale, double x) {
  if (x <= 0.0) return 0.0;
  return boost::math::gamma_p(shape, x / scale);
}

inline double ref_digamma(double z) { return boost::math::digamma(z); }

inline double rel_err(double got, double want) {
  const double scale = std::max(std::abs(got), std::abs(want));
  if (scale == 0.0) return 0.0;
  return std::abs(got - want) / scale;
}

// s in {-2,-1,1,2} x delta in {0,1} x mu in {0.5,1,3,9} x sigma in {0.25,1,4}.
inline const std::vector<std::pair<wexpfam::FamilySpec, wexpfam::Params>>& family_grid() {
  static const auto grid = [] {
    std::vector<std::pair<wexpfam::FamilySpec, wexpfam::Params>> out;
    for (double s : {-2.0, -1.0, 1.0, 2.0}) {
      for (int delta : {0, 1}) {
        for (double mu : {0.5, 1.0, 3.0, 9.0}) {
          for (double sigma : {0.25, 1.0, 4.0}) {
            out.emplace_back(wexpfam::FamilySpec(s, delta), wexpfam::Params(mu, sigma));
          }
        }
      }
    }
    return out;
  }();
  return grid;
}

}  // namespace testsupport
