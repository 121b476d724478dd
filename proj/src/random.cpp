#include "wexpfam/random.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "wexpfam/errors.hpp"

namespace wexpfam {

namespace {

// SplitMix64 finalizer; decorrelates nearby seeds before they reach the engine.
std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

SeededStream SeededStream::child(std::uint64_t index) const {
  return {master_seed, splitmix64(splitmix64(stream_id) + index)};
}

RandomStream::RandomStream(SeededStream seed)
    : engine_(splitmix64(splitmix64(seed.master_seed) ^ splitmix64(~seed.stream_id))) {}

double RandomStream::uniform() {
  // (k + 1/2) / 2^53 with k in [0, 2^53): open on both ends, safe under log().
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t RandomStream::uniform_below(std::uint64_t n) {
  if (n == 0) throw DomainError("uniform_below: n must be >= 1");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  for (;;) {
    const std::uint64_t raw = engine_();
    if (raw < limit) return raw % n;
  }
}

double RandomStream::normal() {
  for (;;) {
    const double a = 2.0 * uniform() - 1.0;
    const double b = 2.0 * uniform() - 1.0;
    const double r2 = a * a + b * b;
    if (r2 >= 1.0 || r2 == 0.0) continue;
    return a * std::sqrt(-2.0 * std::log(r2) / r2);
  }
}

double RandomStream::gamma(double shape, double scale) {
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw DomainError("gamma: shape must be positive and finite, got " + std::to_string(shape));
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("gamma: scale must be positive and finite, got " + std::to_string(scale));
  }
  if (shape < 1.0) {
    // G(a) = G(a+1) * U^(1/a); the log form keeps tiny shapes exact.
    const double boosted = gamma(shape + 1.0, scale);
    return boosted * std::exp(std::log(uniform()) / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v * scale;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
  }
}

std::vector<double> sample(const FamilySpec& spec, const Params& params, std::size_t n,
                           SeededStream stream) {
  if (n == 0) throw DomainError("sample: n must be >= 1");
  RandomStream rng(stream);
  const double p_weighted = spec.delta / (params.sigma + spec.delta);
  const double scale = 1.0 / (params.mu * params.sigma);
  std::vector<double> out(n);
  for (double& x : out) {
    double shape = params.mu;
    if (spec.delta == 1 && rng.uniform() < p_weighted) shape += 1.0;
    const double z = rng.gamma(shape, scale);
    x = std::exp(-std::log(z) / spec.s);  // T^{-1}(z) = z^(-1/s)
  }
  return out;
}

}  // namespace wexpfam
