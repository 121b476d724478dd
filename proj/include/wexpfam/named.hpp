#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wexpfam/family.hpp"

namespace wexpfam {

// The classical distributions whose generator is a pure power of x.  Rows
// with other generators (Gompertz, Burr XII, log/exponentiated variants, ...)
// are recognized by name but rejected: the closed-form machinery here needs
// T(x) = x^(-s).
enum class NamedFamily {
  weighted_lindley,
  weighted_inverse_lindley,
  weighted_nakagami,
  weighted_inverse_nakagami,
  nakagami,
  maxwell_boltzmann,
  rayleigh,
  gamma,
  inverse_gamma,
  delta_gamma,
  weibull,
  inverse_weibull,
  generalized_gamma,
  generalized_inverse_gamma,
  chi_squared,
  scaled_inverse_chi_squared,
};

using NativeParams = std::vector<std::pair<std::string, double>>;

// A named distribution together with its (mu, sigma, s, delta) image.
struct NamedModel {
  NamedFamily family;
  NativeParams native;
  FamilySpec spec;
  Params params;
};

// Name <-> enum.  parse_family_name throws DomainError on unknown names and
// gives a dedicated message for known non-power rows.
NamedFamily parse_family_name(std::string_view name);
std::string_view family_name(NamedFamily family);
const std::vector<std::string>& supported_family_names();

// Canonical native parameter names of a row, in declaration order.
const std::vector<std::string>& native_param_names(NamedFamily family);

// Build a model from native parameters (validates the row's constraints,
// e.g. m >= 1/2 for Nakagami rows).  Parameters may be given in any order.
NamedModel from_named(NamedFamily family, const NativeParams& native);
NamedModel from_named(std::string_view name, const NativeParams& native);

// Invert the table mapping.  Requires (spec, params) to lie in the row's
// image: s must match, and rows with pinned parameters (e.g. Rayleigh's
// mu = 1) check the pinned value to small relative tolerance.
NativeParams to_named(NamedFamily family, const FamilySpec& spec, const Params& params);

// Native parameters implied by point estimates (mu_hat, sigma_hat) with the
// generator power fixed at s.  Unlike to_named this never checks pinned
// coordinates: rows like Rayleigh recover their parameter from sigma_hat
// alone, which is what fitting such a model to data means here.
NativeParams native_estimates(NamedFamily family, double mu_hat, double sigma_hat, double s);

}  // namespace wexpfam
