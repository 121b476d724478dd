#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "wexpfam/family.hpp"

namespace wexpfam {

// Identifies a reproducible variate sequence.  Equal (master_seed, stream_id)
// pairs replay the same sequence on any platform and thread schedule;
// distinct stream_ids give statistically independent streams.  child()
// derives sub-streams, so hierarchical seeding (cell -> replication ->
// bootstrap replicate) never depends on execution order.
struct SeededStream {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  SeededStream child(std::uint64_t index) const;
};

// One stateful generator per stream.  Value semantics: copies fork the
// state.  A single instance must not be shared between threads.
//
// The engine is std::mt19937_64 (sequence pinned by the standard); all
// distributions on top of it are implemented here because the standard
// library's are implementation-defined and would break cross-platform
// reproducibility.
class RandomStream {
 public:
  explicit RandomStream(SeededStream seed);

  // Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();

  // Uniform on {0, 1, ..., n-1}, unbiased.
  std::uint64_t uniform_below(std::uint64_t n);

  // Standard normal (Marsaglia polar method).
  double normal();

  // Gamma(shape, scale) via the Marsaglia-Tsang squeeze method for
  // shape >= 1 and the U^(1/shape) boost below 1.
  double gamma(double shape, double scale);

 private:
  std::mt19937_64 engine_;
};

// n draws of X = (1-B) T^{-1}(Z1) + B T^{-1}(Z2) with
// B ~ Bernoulli(delta/(sigma+delta)), Z_j ~ Gamma(mu+j-1, 1/(mu*sigma)) and
// T^{-1}(z) = z^(-1/s).  Every draw is strictly positive and finite.
std::vector<double> sample(const FamilySpec& spec, const Params& params, std::size_t n,
                           SeededStream stream);

}  // namespace wexpfam
