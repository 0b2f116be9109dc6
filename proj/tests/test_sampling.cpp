#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "subqfi/fidelity.hpp"
#include "subqfi/fisher.hpp"
#include "subqfi/rng.hpp"
#include "subqfi/sample.hpp"
#include "subqfi/sampling.hpp"

using namespace subqfi;
using fixtures::commuting_generator;
using fixtures::commuting_state;
using fixtures::ket0_state;
using fixtures::ket1_state;
using fixtures::maximally_mixed;
using fixtures::plus_state;
using fixtures::sigma_z_generator;

TEST_CASE("overlap estimator on deterministic targets") {
  Rng rng(1);
  // Identical pure states: every outcome is +1.
  const EstimateWithError same = simulate_overlap(plus_state(), plus_state(), 1000, rng);
  CHECK(same.value == 1.0);
  CHECK(same.std_error == 0.0);

  // Orthogonal pure states: mean 0, concentration at 3/sqrt(nu).
  const EstimateWithError ortho = simulate_overlap(ket0_state(), ket1_state(), 10000, rng);
  CHECK(std::abs(ortho.value) <= 3.0 / 100.0);

  const EstimateWithError half = simulate_overlap(maximally_mixed(2), ket0_state(), 1000000, rng);
  CHECK(std::abs(half.value - 0.5) <= 3e-3);
  CHECK(half.std_error == doctest::Approx(std::sqrt(0.75 / 1e6)).epsilon(0.05));
}

TEST_CASE("overlap estimator is unbiased") {
  Rng rng(3);
  const DensityMatrix rho = sample_density(3, 2, rng);
  const DensityMatrix sigma = sample_density(3, 3, rng);
  const double target = overlap(rho, sigma);
  const int seeds = 4000;
  double sum = 0.0, sum_sq = 0.0;
  for (int s = 0; s < seeds; ++s) {
    Rng local = rng.split(s);
    const double v = simulate_overlap(rho, sigma, 100, local).value;
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / seeds;
  const double se = std::sqrt((sum_sq / seeds - mean * mean) / seeds);
  CHECK(std::abs(mean - target) <= 4.0 * se);
}

TEST_CASE("overlap estimator std scales as one over sqrt(shots)") {
  Rng rng(5);
  const DensityMatrix rho = sample_density(2, 2, rng);
  const DensityMatrix sigma = sample_density(2, 2, rng);
  double scaled[3];
  const std::int64_t counts[3] = {100, 10000, 1000000};
  for (int c = 0; c < 3; ++c) {
    const int reps = 600;  // the std of the std estimate itself is ~1/sqrt(2 reps)
    double sum = 0.0, sum_sq = 0.0;
    for (int r = 0; r < reps; ++r) {
      Rng local = rng.split(1000 * c + r);
      const double v = simulate_overlap(rho, sigma, counts[c], local).value;
      sum += v;
      sum_sq += v * v;
    }
    const double mean = sum / reps;
    scaled[c] = std::sqrt(std::max(0.0, sum_sq / reps - mean * mean)) *
                std::sqrt(static_cast<double>(counts[c]));
  }
  CHECK(std::abs(scaled[1] / scaled[0] - 1.0) <= 0.10);
  CHECK(std::abs(scaled[2] / scaled[0] - 1.0) <= 0.10);
}

TEST_CASE("finite-delta estimate reduces to the exact quotient without noise") {
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    const int d = 2 + static_cast<int>(rng.next_u64() % 3);
    const DensityMatrix rho = sample_density(d, d, rng);
    const HermitianGenerator gen = sample_hermitian(d, rng);
    const double delta = 0.01 + 0.09 * rng.uniform();
    const DensityMatrix shifted = PhaseEncoding(gen, delta).evolve(rho);
    const double fed =
        subqfi_finite_delta(overlap(rho, shifted), purity(rho), purity(shifted), delta);
    CHECK(fed == subqfi_fd(rho, gen, delta, false));
  }
}

TEST_CASE("estimate on the pure-qubit fixture covers the exact value") {
  // bias + 3 sigma covers the exact value 4 for most seeds; spot-check a few.
  int covered = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const EstimateWithError est =
        estimate_subqfi(plus_state(), sigma_z_generator(), 0.0, 0.05, 1000000, rng);
    REQUIRE(est.bias_note.has_value());
    if (std::abs(est.value - 4.0) <= *est.bias_note + 3.0 * est.std_error) ++covered;
  }
  CHECK(covered >= 18);
}

TEST_CASE("estimate fluctuates around zero on the fixed-point orbit") {
  Rng rng(11);
  const EstimateWithError est =
      estimate_subqfi(commuting_state(), commuting_generator(), 0.0, 0.05, 10000, rng);
  CHECK(std::abs(est.value) <= 3.0 * est.std_error + 1e-12);
  REQUIRE(est.bias_note.has_value());
  CHECK(*est.bias_note <= 1e-10);
}

TEST_CASE("estimate rejects bad arguments") {
  Rng rng(13);
  CHECK_THROWS_AS(static_cast<void>(
                      estimate_subqfi(plus_state(), sigma_z_generator(), 0.0, 0.5, 1000, rng)),
                  Error);
  CHECK_THROWS_AS(static_cast<void>(
                      estimate_subqfi(plus_state(), sigma_z_generator(), 0.0, 0.05, 10, rng)),
                  Error);
}

TEST_CASE("estimate works away from theta = 0") {
  Rng rng(17);
  const EstimateWithError est =
      estimate_subqfi(plus_state(), sigma_z_generator(), 0.7, 0.05, 1000000, rng);
  // The value is theta-independent for unitary encodings.
  REQUIRE(est.bias_note.has_value());
  CHECK(std::abs(est.value - 4.0) <= *est.bias_note + 4.0 * est.std_error);
}
