#include <algorithm>
#include <cmath>
#include <numeric>

#include <doctest.h>

#include "support/reference.hpp"
#include "wexpfam/errors.hpp"
#include "wexpfam/moments.hpp"
#include "wexpfam/random.hpp"

using namespace wexpfam;

namespace {

struct MeanVar {
  double mean = 0.0;
  double var = 0.0;
};

MeanVar mean_var(const std::vector<double>& values) {
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, ss / (n - 1.0)};
}

}  // namespace

TEST_CASE("identical streams replay bit-identically; distinct streams differ") {
  const FamilySpec spec(1.0, 1);
  const Params p(2.0, 0.5);
  const auto a = sample(spec, p, 1000, {42, 7});
  const auto b = sample(spec, p, 1000, {42, 7});
  CHECK(a == b);

  const auto c = sample(spec, p, 1000, {42, 8});
  CHECK(a != c);
  const auto d = sample(spec, p, 1000, {43, 7});
  CHECK(a != d);

  // child derivation is pure.
  const SeededStream root{42, 7};
  CHECK(root.child(3).stream_id == root.child(3).stream_id);
  CHECK(root.child(3).stream_id != root.child(4).stream_id);
}

TEST_CASE("gamma(1, theta) is exponential with mean theta") {
  RandomStream rng({20240907, 0});
  const double theta = 2.5;
  std::vector<double> draws(1000000);
  for (double& x : draws) x = rng.gamma(1.0, theta);
  const auto [mean, var] = mean_var(draws);
  const double band = 5.0 * std::sqrt(var / static_cast<double>(draws.size()));
  CHECK(std::abs(mean - theta) < band);
}

TEST_CASE("gamma moments for shape below one (boosted branch)") {
  RandomStream rng({20240908, 0});
  const double shape = 0.5, scale = 2.0;
  std::vector<double> draws(1000000);
  for (double& x : draws) x = rng.gamma(shape, scale);
  const auto [mean, var] = mean_var(draws);
  const double n = static_cast<double>(draws.size());
  // mean k*theta = 1, variance k*theta^2 = 2
  CHECK(std::abs(mean - 1.0) < 5.0 * std::sqrt(var / n));
  // The variance of the sample variance is (m4 - var^2)/n with
  // m4 = E[(X-mean)^4]; estimate m4 empirically for the band.
  double m4 = 0.0;
  for (double x : draws) m4 += std::pow(x - mean, 4);
  m4 /= n;
  CHECK(std::abs(var - 2.0) < 5.0 * std::sqrt((m4 - var * var) / n));
  for (double x : draws) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      FAIL("gamma draw not positive finite");
      break;
    }
  }
}

TEST_CASE("gamma sampler passes a Kolmogorov-Smirnov test against the gamma CDF") {
  for (const double shape : {0.7, 1.0, 3.5}) {
    const double scale = 1.3;
    RandomStream rng({20240909, static_cast<std::uint64_t>(shape * 1000)});
    const std::size_t n = 100000;
    std::vector<double> draws(n);
    for (double& x : draws) x = rng.gamma(shape, scale);
    std::sort(draws.begin(), draws.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double cdf = testsupport::gamma_cdf(shape, scale, draws[i]);
      ks = std::max(ks, std::abs(cdf - static_cast<double>(i) / n));
      ks = std::max(ks, std::abs(cdf - static_cast<double>(i + 1) / n));
    }
    // 1% critical value, asymptotic: 1.628 / sqrt(n).
    CHECK(ks < 1.628 / std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("delta=0 sampling reduces to a transformed gamma") {
  // s=-1, mu=sigma=1: exactly the unit exponential.
  const auto draws = sample(FamilySpec(-1.0, 0), Params(1.0, 1.0), 1000000, {20240910, 0});
  const auto [mean, var] = mean_var(draws);
  CHECK(std::abs(mean - 1.0) < 5.0 * std::sqrt(var / static_cast<double>(draws.size())));
}

TEST_CASE("weighted sampling matches the closed-form mean of T(X)") {
  // Weighted inverse Lindley (lambda=1, phi=1): E[X^-1] = 1.5.
  const FamilySpec spec(1.0, 1);
  const Params p(1.0, 1.0);
  const auto draws = sample(spec, p, 1000000, {20240911, 0});
  std::vector<double> inv(draws.size());
  std::transform(draws.begin(), draws.end(), inv.begin(), [](double x) { return 1.0 / x; });
  const auto [mean, var] = mean_var(inv);
  CHECK(std::abs(mean - 1.5) < 5.0 * std::sqrt(var / static_cast<double>(inv.size())));
}

TEST_CASE("sampled h-statistics track the population h-vector across the grid") {
  const std::size_t n = 100000;
  std::uint64_t stream = 0;
  for (const auto& [spec, p] : testsupport::family_grid()) {
    const HVector h = population_h(spec, p);
    const auto draws = sample(spec, p, n, {20240912, stream++});
    HVector mean, sq;
    for (double x : draws) {
      const double u = -spec.s * std::log(x);
      const double t = std::exp(u);
      const double v[4] = {spec.delta == 1 ? u / (1.0 + 1.0 / t) : t * u, t * u, u, t};
      for (int k = 0; k < 4; ++k) {
        mean[k] += v[k];
        sq[k] += v[k] * v[k];
      }
    }
    for (int k = 0; k < 4; ++k) {
      mean[k] /= static_cast<double>(n);
      const double var = sq[k] / static_cast<double>(n) - mean[k] * mean[k];
      const double band = 5.0 * std::sqrt(var / static_cast<double>(n));
      CHECK(std::abs(mean[k] - h[k]) < band);
    }
  }
}

TEST_CASE("all draws are positive and finite") {
  for (const auto& [spec, p] : {std::pair{FamilySpec(2.0, 1), Params(0.5, 0.25)},
                                std::pair{FamilySpec(-2.0, 0), Params(9.0, 4.0)}}) {
    const auto draws = sample(spec, p, 200000, {20240913, 0});
    for (double x : draws) {
      if (!(x > 0.0) || !std::isfinite(x)) {
        FAIL("draw not positive finite: ", x);
        break;
      }
    }
  }
}

TEST_CASE("sampler input validation") {
  RandomStream rng({1, 1});
  CHECK_THROWS_AS(rng.gamma(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(rng.gamma(1.0, -1.0), DomainError);
  CHECK_THROWS_AS(rng.uniform_below(0), DomainError);
  CHECK_THROWS_AS(sample(FamilySpec(1.0, 0), Params(1.0, 1.0), 0, {0, 0}), DomainError);
}

TEST_CASE("uniform_below is within range and roughly uniform") {
  RandomStream rng({20240914, 0});
  std::array<int, 7> counts{};
  const int n = 70000;
  for (int i = 0; i < n; ++i) counts[rng.uniform_below(7)]++;
  for (int c : counts) {
    CHECK(c > 9000);
    CHECK(c < 11000);
  }
}
