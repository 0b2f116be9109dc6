#pragma once

#include <cstdint>
#include <optional>

#include "subqfi/fisher.hpp"
#include "subqfi/rng.hpp"
#include "subqfi/states.hpp"

namespace subqfi {

/// Finite-shot estimate with its standard error (sample std / sqrt(shots)).
struct EstimateWithError {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t shots = 0;
  std::optional<double> bias_note;  // exact finite-delta truncation bound, where applicable
  bool radicand_clamped = false;    // shot noise drove a radicand negative
};

/// Overlap-circuit measurement model: nu i.i.d. outcomes in {-1, +1} with mean
/// Tr[rho sigma] (P(+1) = (1 + o)/2). Statistically exact for the estimator;
/// unbiased with single-shot variance 1 - o^2.
EstimateWithError simulate_overlap(const DensityMatrix& rho, const DensityMatrix& sigma,
                                   std::int64_t shots, Rng& rng);

/// Shot-based sub-QFI estimate at finite delta: the three traces in the
/// super-fidelity are estimated independently with shots_per_term shots each
/// and pushed through the same quotient as subqfi_fd. The standard error is
/// propagated to first order; bias_note carries the exact truncation error
/// |subqfi_fd(delta) - subqfi_closed|. A negative estimate is reported as-is.
EstimateWithError estimate_subqfi(const DensityMatrix& rho, const HermitianGenerator& gen,
                                  double theta, double delta, std::int64_t shots_per_term,
                                  Rng& rng);

}  // namespace subqfi
