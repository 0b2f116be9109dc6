#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace subqfi {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Numerical tolerances used across the library. Validation tolerances are
/// deliberately tight (inputs are expected to be states up to rounding);
/// derived-quantity tolerances account for O(d^3) floating-point pipelines.
namespace tol {
inline constexpr double hermitian = 1e-10;       // max-abs ||M - M^dag||
inline constexpr double unit_trace = 1e-10;      // |Tr M - 1|
inline constexpr double psd = 1e-10;             // admissible negative eigenvalue
inline constexpr double rank = 1e-10;            // eigenvalues below this do not count toward rank
inline constexpr double spectrum_sum = 1e-9;     // eigenvalue sum after clamping
inline constexpr double orthonormal = 1e-9;      // max-abs ||V^dag V - I||
inline constexpr double unitary = 1e-9;          // max-abs ||W W^dag - I||
inline constexpr double imag_residue = 1e-8;     // largest imaginary part tolerated on a real trace
inline constexpr double radicand = 1e-12;        // negative radicand clamp in the super-fidelity
inline constexpr double boundary = 1e-9;         // clamp window at the [0,1] boundary for fidelities
inline constexpr double chain = 1e-9;            // slack for information bound chains
inline constexpr double full_rank = 1e-8;        // smallest eigenvalue accepted as "full rank"
inline constexpr double support = 1e-12;         // eigenvalue-pair support cutoff in spectral sums
inline constexpr double delta_max = 0.1;         // largest admissible finite-difference shift
}  // namespace tol

enum class Errc {
  bad_input,
  dimension_mismatch,
  not_hermitian,
  not_unit_trace,
  not_positive,
  bad_rank,
  non_real_trace,
  delta_too_large,
  not_full_rank,
  zero_information,
  quadrature_unconverged,
  bad_spectrum,
  basis_not_orthonormal,
  unconverged,
  io_failure,
};

const char* errc_name(Errc code);

/// Library error type; carries a machine-checkable code plus a message that
/// reports the offending magnitude where applicable.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

/// Largest entry magnitude, used by max-abs validation checks.
double max_abs(const ComplexMatrix& m);

bool all_finite(const ComplexMatrix& m);

/// Kronecker product with row-major composite indexing: (i_a*d_b + i_b).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Real part of a trace-like scalar; throws non_real_trace if the imaginary
/// residue exceeds the tolerance.
double real_part_checked(Complex z, double residue_tol = tol::imag_residue);

}  // namespace subqfi
