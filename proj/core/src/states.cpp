#include "subqfi/states.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

namespace subqfi {

namespace {

// Descending-order spectral decomposition of a Hermitian matrix.
void eig_descending(const ComplexMatrix& m, RealVector& vals, ComplexMatrix& vecs) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success)
    raise(Errc::bad_input, "eigendecomposition failed to converge");
  vals = solver.eigenvalues().reverse();
  vecs = solver.eigenvectors().rowwise().reverse();
}

void check_square_finite(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    raise(Errc::dimension_mismatch, "matrix must be square and non-empty, got " +
                                        std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  if (!all_finite(m)) raise(Errc::bad_input, "matrix has non-finite entries");
}

void check_hermitian(const ComplexMatrix& m) {
  const double dev = max_abs(m - m.adjoint());
  if (dev > tol::hermitian)
    raise(Errc::not_hermitian, "max-abs deviation from Hermiticity is " + std::to_string(dev));
}

}  // namespace

DensityMatrix DensityMatrix::validated(const ComplexMatrix& m) {
  check_square_finite(m);
  check_hermitian(m);

  const double trace_dev = std::abs(m.trace() - Complex(1.0, 0.0));
  if (trace_dev > tol::unit_trace)
    raise(Errc::not_unit_trace, "|Tr - 1| = " + std::to_string(trace_dev));

  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  RealVector vals;
  ComplexMatrix vecs;
  eig_descending(sym, vals, vecs);

  const double min_eig = vals(vals.size() - 1);
  if (min_eig < -tol::psd)
    raise(Errc::not_positive, "smallest eigenvalue is " + std::to_string(min_eig));

  for (Eigen::Index i = 0; i < vals.size(); ++i) vals(i) = std::clamp(vals(i), 0.0, 1.0);
  const double sum = vals.sum();
  if (std::abs(sum - 1.0) > tol::spectrum_sum)
    raise(Errc::not_unit_trace, "clamped eigenvalue sum deviates by " + std::to_string(sum - 1.0));
  vals /= sum;

  int rank = 0;
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    if (vals(i) > tol::rank) ++rank;

  return DensityMatrix(sym, std::move(vals), std::move(vecs), rank);
}

DensityMatrix DensityMatrix::from_spectrum(const RealVector& eigenvalues_descending,
                                           const ComplexMatrix& eigenvectors) {
  const Eigen::Index d = eigenvalues_descending.size();
  if (eigenvectors.rows() != d || eigenvectors.cols() != d)
    raise(Errc::dimension_mismatch, "spectrum/eigenvector size mismatch");

  RealVector vals = eigenvalues_descending;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (vals(i) < -tol::psd) raise(Errc::bad_spectrum, "negative weight " + std::to_string(vals(i)));
    if (i + 1 < d && vals(i) < vals(i + 1) - 1e-12)
      raise(Errc::bad_spectrum, "weights are not in descending order");
    vals(i) = std::clamp(vals(i), 0.0, 1.0);
  }
  const double sum = vals.sum();
  if (std::abs(sum - 1.0) > tol::spectrum_sum)
    raise(Errc::bad_spectrum, "weights sum to " + std::to_string(sum));
  vals /= sum;

  const double ortho = max_abs(eigenvectors.adjoint() * eigenvectors -
                               ComplexMatrix::Identity(d, d));
  if (ortho > tol::orthonormal)
    raise(Errc::basis_not_orthonormal, "max-abs Gram deviation is " + std::to_string(ortho));

  ComplexMatrix m = eigenvectors * vals.asDiagonal() * eigenvectors.adjoint();
  m = 0.5 * (m + m.adjoint()).eval();

  int rank = 0;
  for (Eigen::Index i = 0; i < d; ++i)
    if (vals(i) > tol::rank) ++rank;

  return DensityMatrix(std::move(m), std::move(vals), eigenvectors, rank);
}

HermitianGenerator HermitianGenerator::validated(const ComplexMatrix& m) {
  check_square_finite(m);
  check_hermitian(m);

  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  RealVector vals;
  ComplexMatrix vecs;
  eig_descending(sym, vals, vecs);

  const double ortho =
      max_abs(vecs.adjoint() * vecs - ComplexMatrix::Identity(vecs.rows(), vecs.cols()));
  if (ortho > tol::orthonormal)
    raise(Errc::basis_not_orthonormal, "eigenvector Gram deviation is " + std::to_string(ortho));

  return HermitianGenerator(sym, std::move(vals), std::move(vecs));
}

PhaseEncoding::PhaseEncoding(HermitianGenerator generator, double theta)
    : generator_(std::move(generator)), theta_(theta) {
  const RealVector& h = generator_.eigenvalues();
  const ComplexMatrix& v = generator_.eigenvectors();
  ComplexVector phases(h.size());
  for (Eigen::Index j = 0; j < h.size(); ++j)
    phases(j) = std::polar(1.0, -theta_ * h(j));
  unitary_ = v * phases.asDiagonal() * v.adjoint();

  const double dev = max_abs(unitary_ * unitary_.adjoint() -
                             ComplexMatrix::Identity(h.size(), h.size()));
  if (dev > tol::unitary)
    raise(Errc::bad_input, "encoding unitary deviates from unitarity by " + std::to_string(dev));
}

ComplexMatrix PhaseEncoding::evolve_matrix(const ComplexMatrix& rho) const {
  if (rho.rows() != unitary_.rows())
    raise(Errc::dimension_mismatch, "state/generator dimension mismatch");
  return unitary_ * rho * unitary_.adjoint();
}

DensityMatrix PhaseEncoding::evolve(const DensityMatrix& rho) const {
  if (rho.dim() != unitary_.rows())
    raise(Errc::dimension_mismatch, "state/generator dimension mismatch");
  return DensityMatrix::from_spectrum(rho.eigenvalues(), unitary_ * rho.eigenvectors());
}

DensityMatrix validate_density(const ComplexMatrix& m) { return DensityMatrix::validated(m); }

ComplexMatrix psd_sqrt(const DensityMatrix& rho) {
  // Eigenvalues below the rank tolerance are numerical zeros; taking their
  // square root would promote O(eps) noise to O(sqrt(eps)).
  RealVector roots(rho.eigenvalues().size());
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    const double v = rho.eigenvalues()(i);
    roots(i) = v > tol::rank ? std::sqrt(v) : 0.0;
  }
  ComplexMatrix s = rho.eigenvectors() * roots.asDiagonal() * rho.eigenvectors().adjoint();
  return 0.5 * (s + s.adjoint()).eval();
}

DensityMatrix partial_trace(const DensityMatrix& rho, int dim_a, int dim_b, Subsystem keep) {
  if (dim_a < 1 || dim_b < 1 || dim_a * dim_b != rho.dim())
    raise(Errc::dimension_mismatch, "subsystem dims " + std::to_string(dim_a) + "x" +
                                        std::to_string(dim_b) + " do not factor dim " +
                                        std::to_string(rho.dim()));
  const ComplexMatrix& m = rho.matrix();
  if (keep == Subsystem::A) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_a, dim_a);
    for (int a = 0; a < dim_a; ++a)
      for (int a2 = 0; a2 < dim_a; ++a2)
        for (int b = 0; b < dim_b; ++b)
          out(a, a2) += m(a * dim_b + b, a2 * dim_b + b);
    return DensityMatrix::validated(out);
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
  for (int b = 0; b < dim_b; ++b)
    for (int b2 = 0; b2 < dim_b; ++b2)
      for (int a = 0; a < dim_a; ++a)
        out(b, b2) += m(a * dim_b + b, a * dim_b + b2);
  return DensityMatrix::validated(out);
}

}  // namespace subqfi
