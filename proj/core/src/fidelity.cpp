#include "subqfi/fidelity.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace subqfi {

namespace {

void check_same_dim(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    raise(Errc::dimension_mismatch, "state dimensions " + std::to_string(rho.dim()) + " and " +
                                        std::to_string(sigma.dim()) + " differ");
}

}  // namespace

double purity(const DensityMatrix& rho) {
  // Tr[rho^2] = ||rho||_F^2 for Hermitian rho; exactly real.
  return rho.matrix().squaredNorm();
}

double overlap(const DensityMatrix& rho, const DensityMatrix& sigma) {
  check_same_dim(rho, sigma);
  const Complex tr = (rho.matrix() * sigma.matrix()).trace();
  return real_part_checked(tr);
}

double super_fidelity_from_traces(double tr_rho_sigma, double purity_rho, double purity_sigma) {
  // The purity of a numerically pure state misses 1 by rounding in either
  // direction; the square root would promote that noise to O(sqrt(eps)), so
  // radicands within the clamp window count as exact zeros.
  double ra = 1.0 - purity_rho;
  double rb = 1.0 - purity_sigma;
  if (std::abs(ra) <= tol::radicand) ra = 0.0;
  if (std::abs(rb) <= tol::radicand) rb = 0.0;
  ra = std::max(ra, 0.0);
  rb = std::max(rb, 0.0);
  return tr_rho_sigma + std::sqrt(ra * rb);
}

double super_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  check_same_dim(rho, sigma);
  return super_fidelity_from_traces(overlap(rho, sigma), purity(rho), purity(sigma));
}

double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  check_same_dim(rho, sigma);
  const ComplexMatrix product = psd_sqrt(rho) * psd_sqrt(sigma);
  Eigen::BDCSVD<ComplexMatrix> svd(product);
  double f = svd.singularValues().sum();
  if (f > 1.0 && f <= 1.0 + tol::boundary) f = 1.0;
  if (f < 0.0 && f >= -tol::boundary) f = 0.0;
  return f;
}

double hs_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  check_same_dim(rho, sigma);
  // Tr[(rho-sigma)^2] = ||rho-sigma||_F^2, real and non-negative.
  return (rho.matrix() - sigma.matrix()).squaredNorm();
}

}  // namespace subqfi
