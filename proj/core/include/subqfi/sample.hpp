#pragma once

#include "subqfi/rng.hpp"
#include "subqfi/states.hpp"

namespace subqfi {

/// Random rank-r state rho = A A^dag / Tr[A A^dag] with A a d x r complex
/// Ginibre draw. Throws bad_rank unless 1 <= r <= d.
DensityMatrix sample_density(int dim, int rank, Rng& rng);

/// Random Hermitian generator (B + B^dag)/2 rescaled so max |h_j| <= 1.
HermitianGenerator sample_hermitian(int dim, Rng& rng);

/// Haar-random unitary via QR of a Ginibre draw with the R diagonal phase fix.
ComplexMatrix sample_unitary(int dim, Rng& rng);

}  // namespace subqfi
