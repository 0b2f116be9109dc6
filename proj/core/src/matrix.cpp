#include "subqfi/matrix.hpp"

#include <cmath>

namespace subqfi {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::bad_input: return "BadInput";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::not_hermitian: return "NotHermitian";
    case Errc::not_unit_trace: return "NotUnitTrace";
    case Errc::not_positive: return "NotPositive";
    case Errc::bad_rank: return "BadRank";
    case Errc::non_real_trace: return "NonRealTrace";
    case Errc::delta_too_large: return "DeltaTooLarge";
    case Errc::not_full_rank: return "NotFullRank";
    case Errc::zero_information: return "ZeroInformation";
    case Errc::quadrature_unconverged: return "QuadratureUnconverged";
    case Errc::bad_spectrum: return "BadSpectrum";
    case Errc::basis_not_orthonormal: return "BasisNotOrthonormal";
    case Errc::unconverged: return "Unconverged";
    case Errc::io_failure: return "IoFailure";
  }
  return "UnknownError";
}

double max_abs(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double real_part_checked(Complex z, double residue_tol) {
  if (std::abs(z.imag()) > residue_tol)
    raise(Errc::non_real_trace,
          "imaginary residue " + std::to_string(std::abs(z.imag())) + " exceeds tolerance");
  return z.real();
}

}  // namespace subqfi
