#include "wexpfam/named.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "wexpfam/errors.hpp"

namespace wexpfam {

namespace {

struct RowInfo {
  const char* name;
  std::vector<std::string> params;
};

const std::map<NamedFamily, RowInfo>& rows() {
  static const std::map<NamedFamily, RowInfo> table = {
      {NamedFamily::weighted_lindley, {"weighted_lindley", {"lambda", "phi"}}},
      {NamedFamily::weighted_inverse_lindley, {"weighted_inverse_lindley", {"lambda", "phi"}}},
      {NamedFamily::weighted_nakagami, {"weighted_nakagami", {"m", "omega"}}},
      {NamedFamily::weighted_inverse_nakagami, {"weighted_inverse_nakagami", {"m", "omega"}}},
      {NamedFamily::nakagami, {"nakagami", {"m", "omega"}}},
      {NamedFamily::maxwell_boltzmann, {"maxwell_boltzmann", {"beta"}}},
      {NamedFamily::rayleigh, {"rayleigh", {"beta"}}},
      {NamedFamily::gamma, {"gamma", {"alpha", "beta"}}},
      {NamedFamily::inverse_gamma, {"inverse_gamma", {"alpha", "beta"}}},
      {NamedFamily::delta_gamma, {"delta_gamma", {"delta", "beta"}}},
      {NamedFamily::weibull, {"weibull", {"delta", "beta"}}},
      {NamedFamily::inverse_weibull, {"inverse_weibull", {"delta", "beta"}}},
      {NamedFamily::generalized_gamma, {"generalized_gamma", {"alpha", "delta", "beta"}}},
      {NamedFamily::generalized_inverse_gamma,
       {"generalized_inverse_gamma", {"alpha", "delta", "beta"}}},
      {NamedFamily::chi_squared, {"chi_squared", {"nu"}}},
      {NamedFamily::scaled_inverse_chi_squared,
       {"scaled_inverse_chi_squared", {"nu", "tau2"}}},
  };
  return table;
}

// Table rows whose generator is not a pure power of x.
const std::vector<std::string>& non_power_rows() {
  static const std::vector<std::string> names = {
      "new_weighted_exponentiated_lindley",
      "new_weighted_log_lindley",
      "new_weighted_exponentiated_nakagami",
      "new_weighted_log_nakagami",
      "new_log_generalized_gamma",
      "new_log_generalized_inverse_gamma",
      "new_exponentiated_generalized_gamma",
      "new_exponentiated_generalized_inverse_gamma",
      "new_modified_log_generalized_gamma",
      "new_extended_log_generalized_gamma",
      "gompertz",
      "modified_weibull_extension",
      "traditional_weibull",
      "flexible_weibull",
      "burr_xii",
      "dagum",
  };
  return names;
}

// Fetch the row's parameters in canonical order; rejects missing, duplicate
// and unknown keys.
std::vector<double> collect(NamedFamily family, const NativeParams& native) {
  const auto& expected = rows().at(family).params;
  for (const auto& [key, value] : native) {
    (void)value;
    if (std::find(expected.begin(), expected.end(), key) == expected.end()) {
      throw DomainError(std::string(family_name(family)) + ": unknown parameter '" + key + "'");
    }
  }
  std::vector<double> out;
  out.reserve(expected.size());
  for (const auto& key : expected) {
    const double* found = nullptr;
    for (const auto& [k, v] : native) {
      if (k == key) {
        if (found) {
          throw DomainError(std::string(family_name(family)) + ": duplicate parameter '" + key + "'");
        }
        found = &v;
      }
    }
    if (!found) {
      throw DomainError(std::string(family_name(family)) + ": missing parameter '" + key + "'");
    }
    out.push_back(*found);
  }
  return out;
}

void require_positive(NamedFamily family, const char* key, double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(family_name(family)) + ": parameter " + key +
                      " must be positive and finite, got " + std::to_string(value));
  }
}

bool rel_close(double a, double b, double tol = 1e-9) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

void require_spec(NamedFamily family, const FamilySpec& spec, double s, int delta) {
  if (spec.delta != delta || spec.s != s) {
    throw DomainError(std::string(family_name(family)) + ": expects s=" + std::to_string(s) +
                      ", delta=" + std::to_string(delta));
  }
}

void require_pinned(NamedFamily family, const char* what, double actual, double pinned) {
  if (!rel_close(actual, pinned)) {
    throw DomainError(std::string(family_name(family)) + ": " + what + " must equal " +
                      std::to_string(pinned) + " for this row, got " + std::to_string(actual));
  }
}

NativeParams pack(NamedFamily family, std::initializer_list<double> values) {
  const auto& names = rows().at(family).params;
  NativeParams out;
  auto it = names.begin();
  for (double v : values) out.emplace_back(*it++, v);
  return out;
}

}  // namespace

NamedFamily parse_family_name(std::string_view name) {
  for (const auto& [family, info] : rows()) {
    if (name == info.name) return family;
  }
  for (const auto& other : non_power_rows()) {
    if (name == other) {
      throw DomainError("'" + std::string(name) +
                        "' has a non-power generator; only generators T(x) = x^(-s) are supported");
    }
  }
  std::string msg = "unknown model '" + std::string(name) + "'; supported models:";
  for (const auto& n : supported_family_names()) msg += " " + n;
  throw DomainError(msg);
}

std::string_view family_name(NamedFamily family) { return rows().at(family).name; }

const std::vector<std::string>& supported_family_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [family, info] : rows()) out.push_back(info.name);
    std::sort(out.begin(), out.end());
    return out;
  }();
  return names;
}

const std::vector<std::string>& native_param_names(NamedFamily family) {
  return rows().at(family).params;
}

NamedModel from_named(NamedFamily family, const NativeParams& native) {
  const auto v = collect(family, native);
  switch (family) {
    case NamedFamily::weighted_lindley:
    case NamedFamily::weighted_inverse_lindley: {
      const double lambda = v[0], phi = v[1];
      require_positive(family, "lambda", lambda);
      require_positive(family, "phi", phi);
      const double s = family == NamedFamily::weighted_lindley ? -1.0 : 1.0;
      return {family, pack(family, {lambda, phi}), FamilySpec(s, 1), Params(phi, lambda / phi)};
    }
    case NamedFamily::weighted_nakagami:
    case NamedFamily::weighted_inverse_nakagami:
    case NamedFamily::nakagami: {
      const double m = v[0], omega = v[1];
      if (!(m >= 0.5) || !std::isfinite(m)) {
        throw DomainError(std::string(family_name(family)) + ": m must be >= 1/2, got " +
                          std::to_string(m));
      }
      require_positive(family, "omega", omega);
      const double s = family == NamedFamily::weighted_inverse_nakagami ? 2.0 : -2.0;
      const int delta = family == NamedFamily::nakagami ? 0 : 1;
      return {family, pack(family, {m, omega}), FamilySpec(s, delta), Params(m, 1.0 / omega)};
    }
    case NamedFamily::maxwell_boltzmann: {
      const double beta = v[0];
      require_positive(family, "beta", beta);
      return {family, pack(family, {beta}), FamilySpec(-2.0, 0),
              Params(1.5, 1.0 / (3.0 * beta * beta))};
    }
    case NamedFamily::rayleigh: {
      const double beta = v[0];
      require_positive(family, "beta", beta);
      return {family, pack(family, {beta}), FamilySpec(-2.0, 0),
              Params(1.0, 1.0 / (2.0 * beta * beta))};
    }
    case NamedFamily::gamma:
    case NamedFamily::inverse_gamma: {
      const double alpha = v[0], beta = v[1];
      require_positive(family, "alpha", alpha);
      require_positive(family, "beta", beta);
      const double s = family == NamedFamily::gamma ? -1.0 : 1.0;
      return {family, pack(family, {alpha, beta}), FamilySpec(s, 0),
              Params(alpha, 1.0 / (alpha * beta))};
    }
    case NamedFamily::delta_gamma: {
      const double d = v[0], beta = v[1];
      require_positive(family, "delta", d);
      require_positive(family, "beta", beta);
      return {family, pack(family, {d, beta}), FamilySpec(-d, 0), Params(beta / d, 1.0 / beta)};
    }
    case NamedFamily::weibull:
    case NamedFamily::inverse_weibull: {
      const double d = v[0], beta = v[1];
      require_positive(family, "delta", d);
      require_positive(family, "beta", beta);
      const double s = family == NamedFamily::weibull ? -d : d;
      return {family, pack(family, {d, beta}), FamilySpec(s, 0),
              Params(1.0, std::pow(beta, -d))};
    }
    case NamedFamily::generalized_gamma:
    case NamedFamily::generalized_inverse_gamma: {
      const double alpha = v[0], d = v[1], beta = v[2];
      require_positive(family, "alpha", alpha);
      require_positive(family, "delta", d);
      require_positive(family, "beta", beta);
      const double s = family == NamedFamily::generalized_gamma ? -d : d;
      return {family, pack(family, {alpha, d, beta}), FamilySpec(s, 0),
              Params(alpha / d, d / (alpha * std::pow(beta, d)))};
    }
    case NamedFamily::chi_squared: {
      const double nu = v[0];
      require_positive(family, "nu", nu);
      return {family, pack(family, {nu}), FamilySpec(-1.0, 0), Params(nu / 2.0, 1.0 / nu)};
    }
    case NamedFamily::scaled_inverse_chi_squared: {
      const double nu = v[0], tau2 = v[1];
      require_positive(family, "nu", nu);
      require_positive(family, "tau2", tau2);
      return {family, pack(family, {nu, tau2}), FamilySpec(1.0, 0), Params(nu / 2.0, tau2)};
    }
  }
  throw DomainError("unreachable named family");
}

NamedModel from_named(std::string_view name, const NativeParams& native) {
  return from_named(parse_family_name(name), native);
}

NativeParams to_named(NamedFamily family, const FamilySpec& spec, const Params& p) {
  switch (family) {
    case NamedFamily::weighted_lindley:
    case NamedFamily::weighted_inverse_lindley:
      require_spec(family, spec, family == NamedFamily::weighted_lindley ? -1.0 : 1.0, 1);
      return pack(family, {p.mu * p.sigma, p.mu});
    case NamedFamily::weighted_nakagami:
    case NamedFamily::weighted_inverse_nakagami:
    case NamedFamily::nakagami: {
      require_spec(family, spec, family == NamedFamily::weighted_inverse_nakagami ? 2.0 : -2.0,
                   family == NamedFamily::nakagami ? 0 : 1);
      if (!(p.mu >= 0.5)) {
        throw DomainError(std::string(family_name(family)) + ": mu must be >= 1/2, got " +
                          std::to_string(p.mu));
      }
      return pack(family, {p.mu, 1.0 / p.sigma});
    }
    case NamedFamily::maxwell_boltzmann:
      require_spec(family, spec, -2.0, 0);
      require_pinned(family, "mu", p.mu, 1.5);
      return pack(family, {1.0 / std::sqrt(3.0 * p.sigma)});
    case NamedFamily::rayleigh:
      require_spec(family, spec, -2.0, 0);
      require_pinned(family, "mu", p.mu, 1.0);
      return pack(family, {1.0 / std::sqrt(2.0 * p.sigma)});
    case NamedFamily::gamma:
    case NamedFamily::inverse_gamma:
      require_spec(family, spec, family == NamedFamily::gamma ? -1.0 : 1.0, 0);
      return pack(family, {p.mu, 1.0 / (p.mu * p.sigma)});
    case NamedFamily::delta_gamma: {
      if (spec.delta != 0 || !(spec.s < 0.0)) {
        throw DomainError("delta_gamma: expects delta=0 and s < 0");
      }
      // The row's image is the curve mu*sigma*(-s) = 1.
      require_pinned(family, "mu*sigma*(-s)", p.mu * p.sigma * (-spec.s), 1.0);
      return pack(family, {-spec.s, 1.0 / p.sigma});
    }
    case NamedFamily::weibull:
    case NamedFamily::inverse_weibull: {
      const bool inverse = family == NamedFamily::inverse_weibull;
      if (spec.delta != 0 || !(inverse ? spec.s > 0.0 : spec.s < 0.0)) {
        throw DomainError(std::string(family_name(family)) + ": expects delta=0 and s " +
                          (inverse ? "> 0" : "< 0"));
      }
      require_pinned(family, "mu", p.mu, 1.0);
      return pack(family, {std::abs(spec.s), std::pow(p.sigma, inverse ? -1.0 / spec.s : 1.0 / spec.s)});
    }
    case NamedFamily::generalized_gamma:
    case NamedFamily::generalized_inverse_gamma: {
      const bool inverse = family == NamedFamily::generalized_inverse_gamma;
      if (spec.delta != 0 || !(inverse ? spec.s > 0.0 : spec.s < 0.0)) {
        throw DomainError(std::string(family_name(family)) + ": expects delta=0 and s " +
                          (inverse ? "> 0" : "< 0"));
      }
      const double d = std::abs(spec.s);
      const double beta = std::pow(p.mu * p.sigma, inverse ? -1.0 / spec.s : 1.0 / spec.s);
      return pack(family, {p.mu * d, d, beta});
    }
    case NamedFamily::chi_squared:
      require_spec(family, spec, -1.0, 0);
      require_pinned(family, "sigma", p.sigma, 1.0 / (2.0 * p.mu));
      return pack(family, {2.0 * p.mu});
    case NamedFamily::scaled_inverse_chi_squared:
      require_spec(family, spec, 1.0, 0);
      return pack(family, {2.0 * p.mu, p.sigma});
  }
  throw DomainError("unreachable named family");
}

NativeParams native_estimates(NamedFamily family, double mu_hat, double sigma_hat, double s) {
  switch (family) {
    case NamedFamily::weighted_lindley:
    case NamedFamily::weighted_inverse_lindley:
      return pack(family, {mu_hat * sigma_hat, mu_hat});
    case NamedFamily::weighted_nakagami:
    case NamedFamily::weighted_inverse_nakagami:
    case NamedFamily::nakagami:
      return pack(family, {mu_hat, 1.0 / sigma_hat});
    case NamedFamily::maxwell_boltzmann:
      return pack(family, {1.0 / std::sqrt(3.0 * sigma_hat)});
    case NamedFamily::rayleigh:
      return pack(family, {1.0 / std::sqrt(2.0 * sigma_hat)});
    case NamedFamily::gamma:
    case NamedFamily::inverse_gamma:
      return pack(family, {mu_hat, 1.0 / (mu_hat * sigma_hat)});
    case NamedFamily::delta_gamma:
      return pack(family, {std::abs(s), 1.0 / sigma_hat});
    case NamedFamily::weibull:
      return pack(family, {std::abs(s), std::pow(sigma_hat, 1.0 / s)});
    case NamedFamily::inverse_weibull:
      return pack(family, {std::abs(s), std::pow(sigma_hat, -1.0 / s)});
    case NamedFamily::generalized_gamma:
      return pack(family, {mu_hat * std::abs(s), std::abs(s), std::pow(mu_hat * sigma_hat, 1.0 / s)});
    case NamedFamily::generalized_inverse_gamma:
      return pack(family, {mu_hat * std::abs(s), std::abs(s), std::pow(mu_hat * sigma_hat, -1.0 / s)});
    case NamedFamily::chi_squared:
      return pack(family, {2.0 * mu_hat});
    case NamedFamily::scaled_inverse_chi_squared:
      return pack(family, {2.0 * mu_hat, sigma_hat});
  }
  throw DomainError("unreachable named family");
}

}  // namespace wexpfam
