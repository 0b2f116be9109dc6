#pragma once

#include "subqfi/matrix.hpp"

namespace subqfi {

/// Validated density matrix: Hermitian, unit trace, positive semidefinite,
/// with a cached spectral decomposition. Eigenvalues are clamped to [0,1],
/// renormalized to unit sum, and stored in descending order together with the
/// matching eigenvector columns. Immutable after construction.
class DensityMatrix {
 public:
  /// Validates an arbitrary matrix as a quantum state. Throws not_hermitian,
  /// not_unit_trace or not_positive with the offending magnitude.
  static DensityMatrix validated(const ComplexMatrix& m);

  /// Builds a state directly from a descending spectrum and orthonormal
  /// eigenvector columns (used where the decomposition is known by
  /// construction, e.g. unitary conjugation). Throws bad_spectrum.
  static DensityMatrix from_spectrum(const RealVector& eigenvalues_descending,
                                     const ComplexMatrix& eigenvectors);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }

  /// Descending, clamped, renormalized eigenvalues.
  const RealVector& eigenvalues() const { return eigenvalues_; }
  /// Eigenvector columns aligned with eigenvalues().
  const ComplexMatrix& eigenvectors() const { return eigenvectors_; }

  /// Number of eigenvalues above the rank tolerance.
  int rank() const { return rank_; }
  bool is_full_rank(double min_eig = tol::full_rank) const {
    return eigenvalues_(dim() - 1) > min_eig;
  }

 private:
  DensityMatrix(ComplexMatrix m, RealVector vals, ComplexMatrix vecs, int rank)
      : matrix_(std::move(m)),
        eigenvalues_(std::move(vals)),
        eigenvectors_(std::move(vecs)),
        rank_(rank) {}

  ComplexMatrix matrix_;
  RealVector eigenvalues_;
  ComplexMatrix eigenvectors_;
  int rank_;
};

/// Validated Hermitian generator with cached descending spectrum.
class HermitianGenerator {
 public:
  static HermitianGenerator validated(const ComplexMatrix& m);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }
  const RealVector& eigenvalues() const { return eigenvalues_; }
  const ComplexMatrix& eigenvectors() const { return eigenvectors_; }

 private:
  HermitianGenerator(ComplexMatrix m, RealVector vals, ComplexMatrix vecs)
      : matrix_(std::move(m)), eigenvalues_(std::move(vals)), eigenvectors_(std::move(vecs)) {}

  ComplexMatrix matrix_;
  RealVector eigenvalues_;
  ComplexMatrix eigenvectors_;
};

/// Unitary phase encoding W = exp(-i theta H) built from the generator's
/// spectrum. Conjugation preserves the state's eigenvalues, so evolve()
/// reuses the input spectrum with rotated eigenvectors.
class PhaseEncoding {
 public:
  PhaseEncoding(HermitianGenerator generator, double theta);

  double theta() const { return theta_; }
  const HermitianGenerator& generator() const { return generator_; }
  const ComplexMatrix& unitary() const { return unitary_; }

  /// W rho W^dag as a plain matrix.
  ComplexMatrix evolve_matrix(const ComplexMatrix& rho) const;

  /// W rho W^dag as a validated state with the rotated spectral decomposition.
  DensityMatrix evolve(const DensityMatrix& rho) const;

 private:
  HermitianGenerator generator_;
  double theta_;
  ComplexMatrix unitary_;
};

/// Free-function form of DensityMatrix::validated.
DensityMatrix validate_density(const ComplexMatrix& m);

/// Hermitian PSD square root via the cached spectrum; S*S recovers rho.
ComplexMatrix psd_sqrt(const DensityMatrix& rho);

enum class Subsystem { A, B };

/// Reduced state of a bipartite system with composite index i_a*d_b + i_b.
DensityMatrix partial_trace(const DensityMatrix& rho, int dim_a, int dim_b, Subsystem keep);

}  // namespace subqfi
