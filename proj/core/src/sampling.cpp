#include "subqfi/sampling.hpp"

#include <cmath>
#include <string>

#include "subqfi/fidelity.hpp"

namespace subqfi {

namespace {

struct ShotStats {
  double mean = 0.0;
  double std_error = 0.0;
};

// nu i.i.d. +/-1 outcomes with mean target; returns the sample mean and the
// sample-std / sqrt(nu) standard error.
ShotStats draw_overlap_shots(double target, std::int64_t shots, Rng& rng) {
  const double p_plus = 0.5 * (1.0 + target);
  std::int64_t plus = 0;
  for (std::int64_t s = 0; s < shots; ++s)
    if (rng.uniform() < p_plus) ++plus;
  const double mean = (2.0 * static_cast<double>(plus) - static_cast<double>(shots)) /
                      static_cast<double>(shots);
  ShotStats stats;
  stats.mean = mean;
  if (shots > 1) {
    // Sample variance of +/-1 outcomes: nu (1 - mean^2) / (nu - 1).
    const double var = std::max(0.0, static_cast<double>(shots) * (1.0 - mean * mean) /
                                         static_cast<double>(shots - 1));
    stats.std_error = std::sqrt(var / static_cast<double>(shots));
  }
  return stats;
}

}  // namespace

EstimateWithError simulate_overlap(const DensityMatrix& rho, const DensityMatrix& sigma,
                                   std::int64_t shots, Rng& rng) {
  if (shots < 1) raise(Errc::bad_input, "need at least one shot");
  const double target = overlap(rho, sigma);
  const ShotStats stats = draw_overlap_shots(target, shots, rng);
  EstimateWithError estimate;
  estimate.value = stats.mean;
  estimate.std_error = stats.std_error;
  estimate.shots = shots;
  return estimate;
}

EstimateWithError estimate_subqfi(const DensityMatrix& rho, const HermitianGenerator& gen,
                                  double theta, double delta, std::int64_t shots_per_term,
                                  Rng& rng) {
  if (!(delta > 0.0) || delta > tol::delta_max)
    raise(Errc::delta_too_large, "delta must lie in (0, " + std::to_string(tol::delta_max) + "]");
  if (shots_per_term < 100) raise(Errc::bad_input, "need at least 100 shots per term");

  const DensityMatrix exact = PhaseEncoding(gen, theta).evolve(rho);
  const DensityMatrix error = PhaseEncoding(gen, theta + delta).evolve(rho);

  // The three traces in the super-fidelity are estimated independently.
  const double o_true = overlap(exact, error);
  const double p1_true = purity(exact);
  const double p2_true = purity(error);
  const ShotStats o_hat = draw_overlap_shots(o_true, shots_per_term, rng);
  const ShotStats p1_hat = draw_overlap_shots(p1_true, shots_per_term, rng);
  const ShotStats p2_hat = draw_overlap_shots(p2_true, shots_per_term, rng);

  EstimateWithError estimate;
  estimate.shots = shots_per_term;

  double r1 = 1.0 - p1_hat.mean;
  double r2 = 1.0 - p2_hat.mean;
  if (r1 < -tol::radicand || r2 < -tol::radicand) estimate.radicand_clamped = true;
  r1 = std::max(r1, 0.0);
  r2 = std::max(r2, 0.0);
  double g_hat = o_hat.mean + std::sqrt(r1 * r2);
  if (g_hat < 0.0) {
    estimate.radicand_clamped = true;
    g_hat = 0.0;
  }
  // Same quotient as the exact finite-delta route; a noisy G > 1 yields a
  // negative estimate and is reported as-is.
  estimate.value = 8.0 * (1.0 - std::sqrt(g_hat)) / (delta * delta);

  // First-order error propagation through G and the quotient. At a clamped
  // radicand the square-root term is flat, so its contribution drops out.
  double var_g = o_hat.std_error * o_hat.std_error;
  if (r1 > 0.0 && r2 > 0.0) {
    const double dg_dp1 = -0.5 * std::sqrt(r2 / r1);
    const double dg_dp2 = -0.5 * std::sqrt(r1 / r2);
    var_g += dg_dp1 * dg_dp1 * p1_hat.std_error * p1_hat.std_error +
             dg_dp2 * dg_dp2 * p2_hat.std_error * p2_hat.std_error;
  }
  const double dv_dg = g_hat > 0.0 ? 4.0 / (delta * delta * std::sqrt(g_hat)) : 0.0;
  estimate.std_error = dv_dg * std::sqrt(var_g);

  // Exact truncation error of the finite-delta quotient.
  estimate.bias_note = std::abs(subqfi_fd(rho, gen, delta, false) - subqfi_closed(rho, gen));
  return estimate;
}

}  // namespace subqfi
