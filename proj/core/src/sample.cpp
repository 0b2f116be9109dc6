#include "subqfi/sample.hpp"

#include <Eigen/QR>
#include <string>

namespace subqfi {

namespace {

// Row-major fill so the draw order is part of the stream contract.
ComplexMatrix ginibre(int rows, int cols, Rng& rng) {
  ComplexMatrix a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = rng.complex_normal();
  return a;
}

}  // namespace

DensityMatrix sample_density(int dim, int rank, Rng& rng) {
  if (dim < 1) raise(Errc::bad_input, "dimension must be positive");
  if (rank < 1 || rank > dim)
    raise(Errc::bad_rank, "rank " + std::to_string(rank) + " outside [1, " +
                              std::to_string(dim) + "]");
  const ComplexMatrix a = ginibre(dim, rank, rng);
  ComplexMatrix m = a * a.adjoint();
  m /= m.trace().real();
  return DensityMatrix::validated(m);
}

HermitianGenerator sample_hermitian(int dim, Rng& rng) {
  if (dim < 1) raise(Errc::bad_input, "dimension must be positive");
  const ComplexMatrix b = ginibre(dim, dim, rng);
  ComplexMatrix h = 0.5 * (b + b.adjoint());
  HermitianGenerator g = HermitianGenerator::validated(h);
  const double scale =
      std::max(std::abs(g.eigenvalues()(0)), std::abs(g.eigenvalues()(dim - 1)));
  if (scale > 0.0) h /= scale;
  return HermitianGenerator::validated(h);
}

ComplexMatrix sample_unitary(int dim, Rng& rng) {
  if (dim < 1) raise(Errc::bad_input, "dimension must be positive");
  const ComplexMatrix a = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(a);
  ComplexMatrix q = qr.householderQ();
  // Fixing the phases of the R diagonal makes the draw Haar-distributed.
  ComplexVector phases(dim);
  for (int j = 0; j < dim; ++j) {
    const Complex r = qr.matrixQR()(j, j);
    const double mag = std::abs(r);
    phases(j) = mag > 0.0 ? r / mag : Complex(1.0, 0.0);
  }
  return q * phases.asDiagonal();
}

}  // namespace subqfi
