#include "subqfi/fisher.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "subqfi/fidelity.hpp"

namespace subqfi {

namespace {

void check_same_dim(const DensityMatrix& rho, const HermitianGenerator& gen) {
  if (rho.dim() != gen.dim())
    raise(Errc::dimension_mismatch, "state dim " + std::to_string(rho.dim()) +
                                        " vs generator dim " + std::to_string(gen.dim()));
}

void check_delta(double delta) {
  if (!(delta > 0.0) || delta > tol::delta_max)
    raise(Errc::delta_too_large,
          "delta must lie in (0, " + std::to_string(tol::delta_max) + "], got " +
              std::to_string(delta));
}

double clamp_small_negative(double v, double window = tol::psd) {
  if (v < 0.0 && v >= -window) return 0.0;
  if (v < -window)
    raise(Errc::not_positive, "value " + std::to_string(v) + " negative beyond tolerance");
  return v + 0.0;  // normalizes -0.0
}

// -2 Tr[[rho, H]^2] on plain matrices; [rho,H] is anti-Hermitian so the trace
// is real and non-positive up to rounding.
double commutator_value(const ComplexMatrix& rho, const ComplexMatrix& h) {
  const ComplexMatrix c = rho * h - h * rho;
  const Complex tr = (c * c).trace();
  return clamp_small_negative(-2.0 * real_part_checked(tr));
}

// Gauss-Hermite nodes/weights for weight exp(-t^2), by Golub-Welsch on the
// Jacobi matrix. Weights are normalized to sum to one.
void gauss_hermite(int n, RealVector& nodes, RealVector& weights) {
  RealVector diag = RealVector::Zero(n);
  RealVector sub(n - 1);
  for (int k = 1; k < n; ++k) sub(k - 1) = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    raise(Errc::quadrature_unconverged, "Gauss-Hermite eigensolve failed");
  nodes = solver.eigenvalues();
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const double v0 = solver.eigenvectors()(0, i);
    weights(i) = v0 * v0;
  }
  weights /= weights.sum();
}

// Ensemble average of the orbit under Gaussian phase noise; returns Tr[ave^2].
double averaged_purity(const DensityMatrix& rho, const HermitianGenerator& gen, double delta_x,
                       int nodes) {
  RealVector t, w;
  gauss_hermite(nodes, t, w);
  const int d = rho.dim();
  ComplexMatrix ave = ComplexMatrix::Zero(d, d);
  const RealVector& h = gen.eigenvalues();
  const ComplexMatrix& v = gen.eigenvectors();
  const ComplexMatrix rho_h = v.adjoint() * rho.matrix() * v;  // rho in the H eigenbasis
  for (int i = 0; i < nodes; ++i) {
    const double x = std::sqrt(2.0) * delta_x * t(i);
    ComplexMatrix shifted(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        shifted(r, c) = rho_h(r, c) * std::polar(1.0, -x * (h(r) - h(c)));
    ave += w(i) * shifted;
  }
  return ave.squaredNorm();
}

}  // namespace

double subqfi_closed(const DensityMatrix& rho, const HermitianGenerator& gen) {
  check_same_dim(rho, gen);
  return commutator_value(rho.matrix(), gen.matrix());
}

double subqfi_spectral(const DensityMatrix& rho, const HermitianGenerator& gen) {
  check_same_dim(rho, gen);
  const ComplexMatrix ht = rho.eigenvectors().adjoint() * gen.matrix() * rho.eigenvectors();
  const RealVector& lambda = rho.eigenvalues();
  const int d = rho.dim();
  double sum = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double gap = lambda(i) - lambda(j);
      sum += gap * gap * std::norm(ht(i, j));
    }
  return 2.0 * sum;
}

double subqfi_finite_delta(double tr_overlap, double purity_a, double purity_b, double delta) {
  check_delta(delta);
  double g = super_fidelity_from_traces(tr_overlap, purity_a, purity_b);
  g = std::max(g, 0.0);
  return 8.0 * (1.0 - std::sqrt(g)) / (delta * delta);
}

double subqfi_fd(const DensityMatrix& rho, const HermitianGenerator& gen, double delta,
                 bool richardson) {
  check_same_dim(rho, gen);
  check_delta(delta);
  const auto quotient = [&](double dlt) {
    const DensityMatrix shifted = PhaseEncoding(gen, dlt).evolve(rho);
    return subqfi_finite_delta(overlap(rho, shifted), purity(rho), purity(shifted), dlt);
  };
  if (!richardson) return quotient(delta);
  return (4.0 * quotient(0.5 * delta) - quotient(delta)) / 3.0;
}

NsldResult subqfi_nsld(const DensityMatrix& rho, const HermitianGenerator& gen) {
  check_same_dim(rho, gen);
  if (!rho.is_full_rank())
    raise(Errc::not_full_rank, "smallest eigenvalue " +
                                   std::to_string(rho.eigenvalues()(rho.dim() - 1)) +
                                   " is not above " + std::to_string(tol::full_rank));
  const ComplexMatrix& m = rho.matrix();
  const ComplexMatrix& h = gen.matrix();
  const ComplexMatrix drho = Complex(0.0, 1.0) * (m * h - h * m);
  const ComplexMatrix inv = rho.eigenvectors() *
                            rho.eigenvalues().cwiseInverse().asDiagonal() *
                            rho.eigenvectors().adjoint();
  NsldResult result;
  result.lambda = drho * inv;
  // Tr[L^dag L rho^2] = ||L rho||_F^2 exactly; the Frobenius form avoids the
  // ||rho^-1||^2 amplification a four-factor trace would pick up.
  result.value = 2.0 * (result.lambda * m).squaredNorm();
  return result;
}

double hs_curvature(const DensityMatrix& rho, const HermitianGenerator& gen, double delta) {
  check_same_dim(rho, gen);
  check_delta(delta);
  const DensityMatrix plus = PhaseEncoding(gen, delta).evolve(rho);
  const DensityMatrix minus = PhaseEncoding(gen, -delta).evolve(rho);
  // Central second difference; the distance at the center point is zero.
  return (hs_distance(rho, plus) + hs_distance(rho, minus)) / (delta * delta);
}

QfiResult qfi_spectral(const DensityMatrix& rho, const HermitianGenerator& gen) {
  check_same_dim(rho, gen);
  const ComplexMatrix& v = rho.eigenvectors();
  const ComplexMatrix ht = v.adjoint() * gen.matrix() * v;
  const RealVector& lambda = rho.eigenvalues();
  const int d = rho.dim();

  double sum = 0.0;
  ComplexMatrix sld_eig = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double denom = lambda(i) + lambda(j);
      if (denom <= tol::support) continue;  // unconstrained SLD components, zero contribution
      const double gap = lambda(i) - lambda(j);
      sum += gap * gap / denom * std::norm(ht(i, j));
      // d_theta rho in the eigenbasis is i (l_i - l_j) H_ij.
      sld_eig(i, j) = 2.0 * Complex(0.0, 1.0) * gap * ht(i, j) / denom;
    }

  QfiResult result;
  result.value = 2.0 * sum;
  result.sld = v * sld_eig * v.adjoint();
  return result;
}

double qfi_fd(const DensityMatrix& rho, const HermitianGenerator& gen, double delta,
              double epsilon) {
  check_same_dim(rho, gen);
  check_delta(delta);
  if (epsilon < 0.0 || epsilon > 1e-4)
    raise(Errc::bad_input, "epsilon must lie in [0, 1e-4], got " + std::to_string(epsilon));

  DensityMatrix base = rho;
  if (epsilon > 0.0) {
    RealVector vals = (1.0 - epsilon) * rho.eigenvalues();
    vals.array() += epsilon / rho.dim();
    base = DensityMatrix::from_spectrum(vals, rho.eigenvectors());
  }
  const DensityMatrix shifted = PhaseEncoding(gen, delta).evolve(base);
  const double f = uhlmann_fidelity(base, shifted);
  return 8.0 * (1.0 - f) / (delta * delta);
}

double skew_information(const DensityMatrix& rho, const HermitianGenerator& gen) {
  check_same_dim(rho, gen);
  const ComplexMatrix root = psd_sqrt(rho);
  const ComplexMatrix& h = gen.matrix();
  const ComplexMatrix c = root * h - h * root;
  const Complex tr = (c * c).trace();
  return clamp_small_negative(-0.5 * real_part_checked(tr));
}

FisherReport bound_report(const DensityMatrix& rho, const HermitianGenerator& gen,
                          bool include_methods, double delta) {
  check_same_dim(rho, gen);
  FisherReport report;
  const QfiResult qfi = qfi_spectral(rho, gen);
  report.qfi = qfi.value;
  report.sld = qfi.sld;
  report.sub_qfi = subqfi_closed(rho, gen);
  report.skew_info = skew_information(rho, gen);
  report.chain_tol = tol::chain;
  report.bound_chain_ok = (report.qfi + report.chain_tol >= report.skew_info) &&
                          (report.skew_info + report.chain_tol >= report.sub_qfi / 8.0) &&
                          (report.qfi + report.chain_tol >= report.sub_qfi);
  report.method_values["closed"] = report.sub_qfi;
  if (include_methods) {
    report.method_values["spectral"] = subqfi_spectral(rho, gen);
    report.method_values["fd"] = subqfi_fd(rho, gen, delta, true);
    report.method_values["hs"] = hs_curvature(rho, gen, delta);
    if (rho.is_full_rank()) report.method_values["nsld"] = subqfi_nsld(rho, gen).value;
  }
  return report;
}

double cramer_rao(double information, std::int64_t nu) {
  if (nu < 1) raise(Errc::bad_input, "measurement count must be >= 1");
  if (!(information > 0.0))
    raise(Errc::zero_information, "information " + std::to_string(information) + " is not > 0");
  return 1.0 / (static_cast<double>(nu) * information);
}

PurityLossResult purity_loss(const DensityMatrix& rho, const HermitianGenerator& gen,
                             double delta_x, int nodes) {
  check_same_dim(rho, gen);
  if (!(delta_x > 0.0)) raise(Errc::bad_input, "delta_x must be positive");
  if (nodes < 15) raise(Errc::bad_input, "need at least 15 quadrature nodes");

  const double p = purity(rho);
  const double gamma_n = p - averaged_purity(rho, gen, delta_x, nodes);
  const double gamma_2n = p - averaged_purity(rho, gen, delta_x, 2 * nodes);
  // Relative node-doubling change, with the purity scale (<= 1) as the floor so
  // an exactly-stationary orbit (delta_gamma = 0) counts as converged.
  const double rel = std::abs(gamma_2n - gamma_n) / std::max(std::abs(gamma_2n), 1.0);
  if (rel > 1e-10)
    raise(Errc::quadrature_unconverged,
          "node doubling changed delta_gamma by " + std::to_string(rel));

  PurityLossResult result{.delta_gamma = clamp_small_negative(gamma_n),
                          .delta_x = delta_x,
                          .ratio = 0.0,
                          .rho_ave = rho,
                          .nodes = nodes};
  result.ratio = 2.0 * result.delta_gamma / (delta_x * delta_x);

  // Rebuild the averaged state once more as a validated state for reporting.
  RealVector t, w;
  gauss_hermite(nodes, t, w);
  ComplexMatrix ave = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (int i = 0; i < nodes; ++i) {
    const double x = std::sqrt(2.0) * delta_x * t(i);
    ave += w(i) * PhaseEncoding(gen, x).evolve_matrix(rho.matrix());
  }
  result.rho_ave = DensityMatrix::validated(ave);
  return result;
}

PurityLossRelation purity_loss_relation_check(const DensityMatrix& rho,
                                              const HermitianGenerator& gen, double delta_x) {
  if (!(delta_x > 0.0) || delta_x > 0.05)
    raise(Errc::bad_input, "relation check requires 0 < delta_x <= 0.05");
  PurityLossRelation rel;
  rel.lhs = subqfi_closed(rho, gen);
  rel.rhs = purity_loss(rho, gen, delta_x).ratio;
  rel.rel_err = std::abs(rel.lhs - rel.rhs) / std::max(rel.lhs, 1e-12);
  return rel;
}

}  // namespace subqfi
