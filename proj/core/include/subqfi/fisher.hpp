#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "subqfi/states.hpp"

namespace subqfi {

/// All information quantities and bound verdicts for one (rho, H) instance.
struct FisherReport {
  double qfi = 0.0;        // I(rho_theta)
  double sub_qfi = 0.0;    // lower bound on the QFI
  double skew_info = 0.0;  // Wigner-Yanase skew information
  std::map<std::string, double> method_values;
  std::optional<ComplexMatrix> sld;  // symmetric logarithmic derivative at theta = 0
  bool bound_chain_ok = false;       // I >= sub_qfi, I >= I_WY >= sub_qfi / 8
  double chain_tol = tol::chain;
};

struct QfiResult {
  double value = 0.0;
  ComplexMatrix sld;
};

/// Non-Hermitian logarithmic derivative Lambda = (d_theta rho_theta) rho^-1
/// for full-rank states; satisfies Tr[Lambda rho] = 0.
struct NsldResult {
  ComplexMatrix lambda;
  double value = 0.0;
};

struct PurityLossResult {
  double delta_gamma = 0.0;  // Tr[rho^2] - Tr[rho_ave^2]
  double delta_x = 0.0;      // std dev of the Gaussian phase fluctuation
  double ratio = 0.0;        // 2 delta_gamma / delta_x^2
  DensityMatrix rho_ave;
  int nodes = 0;
};

struct PurityLossRelation {
  double lhs = 0.0;  // commutator value
  double rhs = 0.0;  // purity-loss ratio
  double rel_err = 0.0;
};

/// Sub-QFI in commutator form, -2 Tr[[rho, H]^2]. Non-negative; the trace's
/// imaginary residue is checked before the real part is taken.
double subqfi_closed(const DensityMatrix& rho, const HermitianGenerator& gen);

/// Sub-QFI as the eigenbasis double sum 2 sum_{ij} (l_i - l_j)^2 |<i|H|j>|^2.
/// The sum runs over the full eigenbasis; pairs of zero eigenvalues vanish
/// identically, so the value matches the commutator form for any rank.
double subqfi_spectral(const DensityMatrix& rho, const HermitianGenerator& gen);

/// Sub-QFI from the finite-delta super-fidelity quotient 8(1 - sqrt G)/delta^2.
/// With richardson the two-grid combination (4 f(d/2) - f(d))/3 is returned;
/// the quotient is even in delta so the error improves from O(d^2) to O(d^4).
double subqfi_fd(const DensityMatrix& rho, const HermitianGenerator& gen, double delta,
                 bool richardson);

/// Finite-delta quotient assembled from precomputed traces. estimate_subqfi
/// feeds shot estimates through this exact same arithmetic.
double subqfi_finite_delta(double tr_overlap, double purity_a, double purity_b, double delta);

/// Sub-QFI via the non-Hermitian logarithmic derivative, 2 Tr[L^dag L rho^2].
/// Requires a full-rank state (smallest eigenvalue > tol::full_rank).
NsldResult subqfi_nsld(const DensityMatrix& rho, const HermitianGenerator& gen);

/// Sub-QFI as the second derivative of the Hilbert-Schmidt distance along the
/// orbit, by central second difference.
double hs_curvature(const DensityMatrix& rho, const HermitianGenerator& gen, double delta);

/// QFI closed form 2 sum_{l_i + l_j > tol} ((l_i - l_j)^2/(l_i + l_j)) |<i|H|j>|^2
/// plus the SLD matrix assembled on the same index set.
QfiResult qfi_spectral(const DensityMatrix& rho, const HermitianGenerator& gen);

/// QFI from the Uhlmann-fidelity quotient 8(1 - F)/delta^2. epsilon > 0 mixes
/// the state with epsilon/d identity first; fidelity finite differences are
/// discontinuous at rank changes, so regularization is an explicit knob here.
double qfi_fd(const DensityMatrix& rho, const HermitianGenerator& gen, double delta,
              double epsilon);

/// Wigner-Yanase skew information -1/2 Tr[[sqrt(rho), H]^2].
double skew_information(const DensityMatrix& rho, const HermitianGenerator& gen);

/// Computes QFI, sub-QFI and skew information and checks the bound chain
/// I >= I_WY >= sub/8 and I >= sub. With include_methods, every sub-QFI route
/// is evaluated and recorded (the nSLD route only for full-rank states).
FisherReport bound_report(const DensityMatrix& rho, const HermitianGenerator& gen,
                          bool include_methods = false, double delta = 1e-3);

/// Cramer-Rao limit (delta theta)^2 = 1/(nu I). Throws zero_information for I <= 0.
double cramer_rao(double information, std::int64_t nu);

/// Purity loss under Gaussian phase noise of std dev delta_x, with the
/// ensemble average computed by Gauss-Hermite quadrature (node-doubling
/// convergence check; throws quadrature_unconverged).
PurityLossResult purity_loss(const DensityMatrix& rho, const HermitianGenerator& gen,
                             double delta_x, int nodes = 41);

/// Sharp-distribution relation: compares the commutator value against
/// 2 delta_gamma / delta_x^2. Requires delta_x <= 0.05.
PurityLossRelation purity_loss_relation_check(const DensityMatrix& rho,
                                              const HermitianGenerator& gen, double delta_x);

}  // namespace subqfi
