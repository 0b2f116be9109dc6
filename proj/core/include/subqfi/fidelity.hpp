#pragma once

#include "subqfi/states.hpp"

namespace subqfi {

/// Tr[rho^2], in [1/d, 1].
double purity(const DensityMatrix& rho);

/// Tr[rho sigma], in [0, 1]. Throws non_real_trace if the imaginary residue
/// of the trace exceeds tolerance, dimension_mismatch on unequal dims.
double overlap(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Super-fidelity G(rho, sigma) = Tr[rho sigma] + sqrt((1-Tr[rho^2])(1-Tr[sigma^2])).
double super_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Super-fidelity assembled from precomputed traces; negative radicands within
/// tol::radicand are clamped to zero. Shared by the exact and shot-estimated paths.
double super_fidelity_from_traces(double tr_rho_sigma, double purity_rho, double purity_sigma);

/// Uhlmann fidelity F(rho, sigma) = || sqrt(rho) sqrt(sigma) ||_1, computed as
/// the singular value sum; clamped to [0, 1] when within tol::boundary.
double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Hilbert-Schmidt distance Tr[(rho - sigma)^2] >= 0.
double hs_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace subqfi
