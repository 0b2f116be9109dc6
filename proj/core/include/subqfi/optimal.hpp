#pragma once

#include "subqfi/rng.hpp"
#include "subqfi/states.hpp"

namespace subqfi {

/// Orthonormal basis that maximizes the sub-QFI for a given generator:
/// equal-weight superpositions pairing the extremal generator eigenvectors,
/// |phi_j> = (|h_j> +/- e^{i chi} |h_{d-j+1}>)/sqrt(2), with the middle
/// eigenvector kept as-is for odd d.
struct OptimalBasis {
  ComplexMatrix vectors;  // columns
  double chi = 0.0;
};

struct OptimalStateResult {
  DensityMatrix rho_star;
  double max_subqfi = 0.0;
};

struct SampledMaxima {
  double max_subqfi = 0.0;
  double max_qfi = 0.0;
  double argmax_agreement = 0.0;  // max-abs distance between the two argmax states
  DensityMatrix best_subqfi_state;
  DensityMatrix best_qfi_state;
};

OptimalBasis optimal_basis(const HermitianGenerator& gen, double chi = 0.0);

/// Optimal probe state rho* = sum_j lambda_j |phi_j><phi_j| for a descending
/// probability spectrum, together with the closed-form maximal sub-QFI.
/// Throws bad_spectrum unless the spectrum is descending, non-negative and
/// sums to one.
OptimalStateResult optimal_state(const RealVector& spectrum_descending,
                                 const HermitianGenerator& gen, double chi = 0.0);

/// Closed-form maximum 1/2 sum_k (l_k - l_{d-k+1})^2 (h_k - h_{d-k+1})^2 of the
/// sub-QFI over all unitary state preparations with the given spectrum.
double max_subqfi_closed(const RealVector& spectrum_descending, const HermitianGenerator& gen);

/// Squared Hilbert-Schmidt norm of the off-diagonal block rows 1..k, columns
/// k+1..d of the generator expressed in an orthonormal basis. Bounded above by
/// 1/4 sum_{i<=min(k,d-k)} (h_i - h_{d-i+1})^2 (Bloomfield-Watson inequality),
/// with equality on the optimal basis.
double offdiag_block_norm(const HermitianGenerator& gen, const ComplexMatrix& basis, int k);

/// Random search over Haar unitaries: evaluates sub-QFI and QFI of U rho U^dag
/// and tracks both maxima and the distance between the two argmax states. The
/// unrotated input always counts as a candidate. Deterministic under seed;
/// trials are chunked over threads with split streams.
SampledMaxima sample_unitary_maxima(const DensityMatrix& rho, const HermitianGenerator& gen,
                                    int trials, const Rng& rng);

}  // namespace subqfi
