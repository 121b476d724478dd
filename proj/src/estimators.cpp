#include "wexpfam/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "wexpfam/errors.hpp"

namespace wexpfam {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

// h-vector of a single observation.  h1 is evaluated as u / (1 + 1/t) so
// that t overflowing to inf or underflowing to zero still yields the correct
// limit instead of inf/inf.
std::array<double, 4> h_point(const FamilySpec& spec, double x, std::size_t index) {
  if (!(x > 0.0) || !std::isfinite(x)) throw NonPositiveData(index, x);
  const double u = -spec.s * std::log(x);  // log T(x)
  const double t = std::exp(u);            // T(x)
  const double h2 = t * u;
  const double h1 = spec.delta == 1 ? u / (1.0 + 1.0 / t) : h2;
  return {h1, h2, u, t};
}

// Standard normal quantile: Acklam's rational approximation polished with
// one Halley step through erfc, good to full double precision.
double normal_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw DomainError("normal_quantile: p must lie in (0, 1), got " + std::to_string(p));
  }
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double err = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = err * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace

SampleHStats summary_stats(std::span<const double> data, const FamilySpec& spec) {
  if (data.size() < 2) {
    throw EmptySample("summary_stats: need at least 2 observations, got " +
                      std::to_string(data.size()));
  }
  double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto h = h_point(spec, data[i], i);
    s1 += h[0];
    s2 += h[1];
    s3 += h[2];
    s4 += h[3];
  }
  const double n = static_cast<double>(data.size());
  HVector h;
  h.h2 = s2 / n;
  h.h3 = s3 / n;
  h.h4 = s4 / n;
  h.h1 = spec.delta == 1 ? s1 / n : h.h2;  // delta = 0: h1 == h2 bit for bit
  return {h, data.size()};
}

double g1(const HVector& h, int delta) {
  if (delta != 0 && delta != 1) throw DomainError("g1: delta must be 0 or 1");
  if (!(h.h4 > 0.0) || !std::isfinite(h.h4)) {
    throw EstimationFailed("g1: mean of h4 must be positive and finite, got " +
                           std::to_string(h.h4));
  }
  if (delta == 0) return 1.0 / h.h4;  // C = 1, D = 0 collapse the quadratic

  const double shifted = h.h1 + 1.0;
  if (shifted == 0.0) throw EstimationFailed("g1: h1 + 1 vanishes");
  const double c = 1.0 - h.h4 + h.h2 / shifted;
  const double d = 1.0 - h.h3 / shifted;
  const double disc = c * c + 4.0 * h.h4 * d;
  if (disc < 0.0) {
    throw EstimationFailed("g1: negative discriminant " + std::to_string(disc) +
                           " (degenerate sample)");
  }
  const double root = std::sqrt(disc);
  // Larger root of h4 sigma^2 - c sigma - d, in the cancellation-free form.
  const double sigma = c > 0.0 ? (c + root) / (2.0 * h.h4) : 2.0 * d / (root - c);
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw EstimationFailed("g1: non-positive sigma root " + std::to_string(sigma) +
                           " (degenerate sample)");
  }
  return sigma;
}

double g2(const HVector& h, double sigma, int delta) {
  if (delta != 0 && delta != 1) throw DomainError("g2: delta must be 0 or 1");
  const double denom = sigma * h.h2 - h.h3;
  if (!(denom > 0.0)) {
    throw EstimationFailed("g2: sigma*h2 - h3 = " + std::to_string(denom) +
                           " must be strictly positive");
  }
  return (delta * h.h1 + 1.0) / denom;
}

std::array<std::array<double, 4>, 2> estimator_jacobian(const HVector& h, int delta) {
  const double cbrt_eps = std::cbrt(std::numeric_limits<double>::epsilon());
  const auto eval = [delta](const HVector& v) -> std::array<double, 2> {
    const double sigma = g1(v, delta);
    return {g2(v, sigma, delta), sigma};
  };
  std::array<std::array<double, 4>, 2> jac{};
  for (int k = 0; k < 4; ++k) {
    const double step = cbrt_eps * std::max(1.0, std::abs(h[k]));
    HVector hi = h, lo = h;
    hi[k] += step;
    lo[k] -= step;
    const auto up = eval(hi);
    const auto down = eval(lo);
    jac[0][k] = (up[0] - down[0]) / (2.0 * step);
    jac[1][k] = (up[1] - down[1]) / (2.0 * step);
  }
  return jac;
}

std::array<std::array<double, 2>, 2> asymptotic_covariance(std::span<const double> data,
                                                           const FamilySpec& spec, double mu_hat,
                                                           double sigma_hat) {
  if (data.size() < 5) {
    throw EmptySample("asymptotic_covariance: need n >= 5, got " + std::to_string(data.size()));
  }
  if (!(mu_hat > 0.0) || !(sigma_hat > 0.0)) {
    throw EstimationFailed("asymptotic_covariance: requires a successful point fit");
  }
  const std::size_t n = data.size();
  std::vector<std::array<double, 4>> hv(n);
  std::array<double, 4> mean{};
  for (std::size_t i = 0; i < n; ++i) {
    hv[i] = h_point(spec, data[i], i);
    for (int k = 0; k < 4; ++k) mean[k] += hv[i][k];
  }
  for (int k = 0; k < 4; ++k) mean[k] /= static_cast<double>(n);

  std::array<std::array<double, 4>, 4> cov{};
  for (std::size_t i = 0; i < n; ++i) {
    std::array<double, 4> centered;
    for (int k = 0; k < 4; ++k) centered[k] = hv[i][k] - mean[k];
    for (int k = 0; k < 4; ++k) {
      for (int l = k; l < 4; ++l) cov[k][l] += centered[k] * centered[l];
    }
  }
  for (int k = 0; k < 4; ++k) {
    for (int l = k; l < 4; ++l) {
      cov[k][l] /= static_cast<double>(n - 1);
      cov[l][k] = cov[k][l];
    }
  }

  const HVector hbar{mean[0], mean[1], mean[2], mean[3]};
  const auto jac = estimator_jacobian(hbar, spec.delta);
  std::array<std::array<double, 2>, 2> out{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) acc += jac[i][k] * cov[k][l] * jac[j][l];
      }
      out[i][j] = acc / static_cast<double>(n);
    }
  }
  return out;
}

EstimateReport estimate(std::span<const double> data, const FamilySpec& spec,
                        std::optional<NamedFamily> named, double ci_level) {
  if (!(ci_level > 0.0) || !(ci_level < 1.0)) {
    throw DomainError("ci_level must lie in (0, 1), got " + std::to_string(ci_level));
  }
  const auto stats = summary_stats(data, spec);
  const double sigma_hat = g1(stats.hstats, spec.delta);
  const double mu_hat = g2(stats.hstats, sigma_hat, spec.delta);

  EstimateReport rep;
  rep.mu_hat = mu_hat;
  rep.sigma_hat = sigma_hat;
  rep.n = stats.n;
  rep.ci_level = ci_level;
  rep.covariance = {{{kNaN, kNaN}, {kNaN, kNaN}}};
  rep.ci_mu = {kNaN, kNaN};
  rep.ci_sigma = {kNaN, kNaN};
  if (stats.n >= 5) {
    rep.covariance = asymptotic_covariance(data, spec, mu_hat, sigma_hat);
    const double z = normal_quantile(0.5 + 0.5 * ci_level);
    const double se_mu = std::sqrt(std::max(0.0, rep.covariance[0][0]));
    const double se_sigma = std::sqrt(std::max(0.0, rep.covariance[1][1]));
    rep.ci_mu = {mu_hat - z * se_mu, mu_hat + z * se_mu};
    rep.ci_sigma = {sigma_hat - z * se_sigma, sigma_hat + z * se_sigma};
  }
  if (named) rep.native = native_estimates(*named, mu_hat, sigma_hat, spec.s);
  return rep;
}

double log_likelihood(std::span<const double> data, const FamilySpec& spec,
                      const Params& params) {
  double total = 0.0;
  for (double x : data) total += log_density(spec, params, x);
  return total;
}

namespace {

// The log-likelihood depends on the data only through the means of
// log T(X) and T(X) plus a parameter-free offset, so the optimizer's
// objective is O(1) per evaluation.
struct LikelihoodStats {
  double mean_log_t = 0.0;
  double mean_t = 0.0;
  int delta = 0;
};

double neg_mean_loglik(const LikelihoodStats& ls, double log_mu, double log_sigma) {
  if (std::abs(log_mu) > 300.0 || std::abs(log_sigma) > 300.0) return kInf;
  const double mu = std::exp(log_mu);
  const double sigma = std::exp(log_sigma);
  const double log_rate = log_mu + log_sigma;  // log(mu*sigma)
  const double shape_part =
      ls.delta == 1 ? (mu + 1.0) * log_rate - std::log1p(sigma) - std::lgamma(mu + 1.0)
                    : mu * log_rate - std::lgamma(mu);
  const double value = shape_part + mu * ls.mean_log_t - mu * sigma * ls.mean_t;
  return std::isfinite(value) ? -value : kInf;
}

}  // namespace

Params mle_numeric(std::span<const double> data, const FamilySpec& spec,
                   std::optional<Params> init) {
  const auto stats = summary_stats(data, spec);
  const LikelihoodStats ls{stats.hstats.h3, stats.hstats.h4, spec.delta};
  const auto objective = [&ls](const std::array<double, 2>& y) {
    return neg_mean_loglik(ls, y[0], y[1]);
  };

  Params start = init ? *init : [&] {
    const double sigma0 = g1(stats.hstats, spec.delta);
    return Params(g2(stats.hstats, sigma0, spec.delta), sigma0);
  }();

  // Nelder-Mead on (log mu, log sigma).
  std::array<std::array<double, 2>, 3> simplex = {{
      {std::log(start.mu), std::log(start.sigma)},
      {std::log(start.mu) + 0.1, std::log(start.sigma)},
      {std::log(start.mu), std::log(start.sigma) + 0.1},
  }};
  std::array<double, 3> value = {objective(simplex[0]), objective(simplex[1]),
                                 objective(simplex[2])};

  const int max_iter = 2000;
  for (int iter = 0; iter < max_iter; ++iter) {
    // Order: 0 best, 2 worst.
    std::array<int, 3> order = {0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) { return value[a] < value[b]; });
    const std::array<std::array<double, 2>, 3> vs = {simplex[order[0]], simplex[order[1]],
                                                     simplex[order[2]]};
    const std::array<double, 3> fs = {value[order[0]], value[order[1]], value[order[2]]};
    simplex = vs;
    value = fs;

    const double diameter =
        std::max(std::max(std::abs(simplex[1][0] - simplex[0][0]),
                          std::abs(simplex[1][1] - simplex[0][1])),
                 std::max(std::abs(simplex[2][0] - simplex[0][0]),
                          std::abs(simplex[2][1] - simplex[0][1])));
    if (diameter < 1e-10) break;
    if (iter % 25 == 0) {
      const double h = 1e-7;
      double g0 = (objective({simplex[0][0] + h, simplex[0][1]}) -
                   objective({simplex[0][0] - h, simplex[0][1]})) /
                  (2.0 * h);
      double g1v = (objective({simplex[0][0], simplex[0][1] + h}) -
                    objective({simplex[0][0], simplex[0][1] - h})) /
                   (2.0 * h);
      if (std::hypot(g0, g1v) < 1e-8) break;
    }
    if (iter == max_iter - 1) {
      throw OptimizationFailed("mle_numeric: exceeded iteration budget",
                               std::exp(simplex[0][0]), std::exp(simplex[0][1]));
    }

    const std::array<double, 2> centroid = {(simplex[0][0] + simplex[1][0]) / 2.0,
                                            (simplex[0][1] + simplex[1][1]) / 2.0};
    const auto at = [&](double coef) -> std::array<double, 2> {
      return {centroid[0] + coef * (centroid[0] - simplex[2][0]),
              centroid[1] + coef * (centroid[1] - simplex[2][1])};
    };

    const auto reflected = at(1.0);
    const double f_reflected = objective(reflected);
    if (f_reflected < value[0]) {
      const auto expanded = at(2.0);
      const double f_expanded = objective(expanded);
      if (f_expanded < f_reflected) {
        simplex[2] = expanded;
        value[2] = f_expanded;
      } else {
        simplex[2] = reflected;
        value[2] = f_reflected;
      }
      continue;
    }
    if (f_reflected < value[1]) {
      simplex[2] = reflected;
      value[2] = f_reflected;
      continue;
    }
    const auto contracted = f_reflected < value[2] ? at(0.5) : at(-0.5);
    const double f_contracted = objective(contracted);
    if (f_contracted < std::min(f_reflected, value[2])) {
      simplex[2] = contracted;
      value[2] = f_contracted;
      continue;
    }
    // Shrink towards the best vertex.
    for (int i = 1; i < 3; ++i) {
      simplex[i] = {0.5 * (simplex[i][0] + simplex[0][0]), 0.5 * (simplex[i][1] + simplex[0][1])};
      value[i] = objective(simplex[i]);
    }
  }

  return Params(std::exp(simplex[0][0]), std::exp(simplex[0][1]));
}

}  // namespace wexpfam
