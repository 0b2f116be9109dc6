#include "subqfi/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "subqfi/fidelity.hpp"
#include "subqfi/fisher.hpp"
#include "subqfi/matrix.hpp"
#include "subqfi/optimal.hpp"
#include "subqfi/optimize.hpp"
#include "subqfi/rng.hpp"
#include "subqfi/sample.hpp"
#include "subqfi/sampling.hpp"
#include "subqfi/states.hpp"

namespace subqfi::verify {

namespace {

struct Context {
  int dim;
  int trials;
  std::uint64_t seed;
};

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

DensityMatrix random_density_mixed_rank(int dim, Rng& rng) {
  const int rank = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(dim));
  return sample_density(dim, rank, rng);
}

// (rho, H) diagonal in a shared random basis, so [rho, H] = 0.
std::pair<DensityMatrix, HermitianGenerator> random_commuting_pair(int dim, Rng& rng) {
  const ComplexMatrix u = sample_unitary(dim, rng);
  RealVector lambda(dim);
  double sum = 0.0;
  for (int i = 0; i < dim; ++i) {
    lambda(i) = rng.uniform() + 1e-3;
    sum += lambda(i);
  }
  lambda /= sum;
  std::sort(lambda.data(), lambda.data() + dim, std::greater<double>());
  RealVector h(dim);
  for (int i = 0; i < dim; ++i) h(i) = 2.0 * rng.uniform() - 1.0;
  const ComplexMatrix h_mat = u * h.asDiagonal() * u.adjoint();
  return {DensityMatrix::from_spectrum(lambda, u),
          HermitianGenerator::validated(0.5 * (h_mat + h_mat.adjoint()))};
}

RealVector random_spectrum(int dim, Rng& rng) {
  RealVector lambda(dim);
  double sum = 0.0;
  for (int i = 0; i < dim; ++i) {
    lambda(i) = rng.uniform();
    sum += lambda(i);
  }
  lambda /= sum;
  std::sort(lambda.data(), lambda.data() + dim, std::greater<double>());
  return lambda;
}

using Check = std::function<PropertyResult(const Context&, Rng&)>;

PropertyResult pass(const std::string& name, const std::string& detail) {
  return {name, true, detail};
}

PropertyResult fail(const std::string& name, const std::string& detail) {
  return {name, false, detail};
}

// ---------------------------------------------------------------------------
// core

PropertyResult check_reconstruction(const Context& ctx, Rng& rng) {
  double worst = 0.0;
  for (int t = 0; t < ctx.trials; ++t) {
    const DensityMatrix rho = random_density_mixed_rank(ctx.dim, rng);
    const ComplexMatrix rebuilt = rho.eigenvectors() * rho.eigenvalues().asDiagonal() *
                                  rho.eigenvectors().adjoint();
    worst = std::max(worst, max_abs(rho.matrix() - rebuilt));
  }
  const std::string detail = "max reconstruction deviation " + fmt(worst);
  return worst <= 1e-9 ? pass("eigendecomposition-reconstruction", detail)
                       : fail("eigendecomposition-reconstruction", detail);
}

PropertyResult check_partial_trace(const Context& ctx, Rng& rng) {
  double worst_state = 0.0;
  double worst_trace = 0.0;
  for (int t = 0; t < std::max(1, ctx.trials / 4); ++t) {
    const DensityMatrix a = random_density_mixed_rank(ctx.dim, rng);
    const DensityMatrix b = random_density_mixed_rank(2, rng);
    const DensityMatrix joint = DensityMatrix::validated(kron(a.matrix(), b.matrix()));
    const DensityMatrix red_a = partial_trace(joint, ctx.dim, 2, Subsystem::A);
    const DensityMatrix red_b = partial_trace(joint, ctx.dim, 2, Subsystem::B);
    worst_state = std::max({worst_state, max_abs(red_a.matrix() - a.matrix()),
                            max_abs(red_b.matrix() - b.matrix())});
    worst_trace = std::max(worst_trace, std::abs(red_a.matrix().trace().real() - 1.0));
  }
  const std::string detail =
      "max product-state deviation " + fmt(worst_state) + ", trace deviation " + fmt(worst_trace);
  return (worst_state <= 1e-9 && worst_trace <= 1e-10) ? pass("partial-trace", detail)
                                                       : fail("partial-trace", detail);
}

PropertyResult check_psd_sqrt(const Context& ctx, Rng& rng) {
  double worst = 0.0;
  for (int t = 0; t < ctx.trials; ++t) {
    const DensityMatrix rho = random_density_mixed_rank(ctx.dim, rng);
    const ComplexMatrix s = psd_sqrt(rho);
    worst = std::max(worst, max_abs(s * s - rho.matrix()));
  }
  const std::string detail = "max ||S*S - rho|| " + fmt(worst);
  return worst <= 1e-9 ? pass("psd-sqrt-recovery", detail) : fail("psd-sqrt-recovery", detail);
}

PropertyResult check_haar_moment(const Context& ctx, Rng& rng) {
  const int draws = 10000;
  double sum = 0.0;
  double sum_sq = 0.0;
  double worst_unitarity = 0.0;
  for (int t = 0; t < draws; ++t) {
    const ComplexMatrix u = sample_unitary(ctx.dim, rng);
    if (t < 100)
      worst_unitarity = std::max(
          worst_unitarity,
          max_abs(u.adjoint() * u - ComplexMatrix::Identity(ctx.dim, ctx.dim)));
    const double v = std::norm(u(0, 0));
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / draws;
  const double var = std::max(0.0, sum_sq / draws - mean * mean);
  const double se = std::sqrt(var / draws);
  const double z = std::abs(mean - 1.0 / ctx.dim) / std::max(se, 1e-300);
  const std::string detail = "mean |U11|^2 = " + fmt(mean) + " (z = " + fmt(z) +
                             "), unitarity deviation " + fmt(worst_unitarity);
  return (z <= 3.0 && worst_unitarity <= 1e-12) ? pass("haar-moment", detail)
                                                : fail("haar-moment", detail);
}

// ---------------------------------------------------------------------------
// fidelity

PropertyResult check_superfidelity_bound(const Context& ctx, Rng& rng) {
  double worst = -1.0;
  for (int t = 0; t < ctx.trials; ++t) {
    const DensityMatrix rho = random_density_mixed_rank(ctx.dim, rng);
    const DensityMatrix sigma = random_density_mixed_rank(ctx.dim, rng);
    const double f = uhlmann_fidelity(rho, sigma);
    const double g = super_fidelity(rho, sigma);
    worst = std::max(worst, f - std::sqrt(std::max(g, 0.0)));
  }
  const std::string detail = "max F - sqrt(G) = " + fmt(worst);
  return worst <= 1e-9 ? pass("superfidelity-bound", detail) : fail("superfidelity-bound", detail);
}

PropertyResult check_qubit_saturation(const Context& ctx, Rng& rng) {
  double worst = 0.0;
  for (int t = 0; t < ctx.trials; ++t) {
    const DensityMatrix rho = random_density_mixed_rank(2, rng);
    const DensityMatrix sigma = random_density_mixed_rank(2, rng);
    const double f = uhlmann_fidelity(rho, sigma);
    worst = std::max(worst, std::abs(f * f - super_fidelity(rho, sigma)));
  }
  const std::string detail = "max |F^2 - G| at d=2: " + fmt(worst);
  return worst <= 1e-9 ? pass("qubit-saturation", detail) : fail("qubit-saturation", detail);
}

PropertyResult check_fidelity_symmetry(const Context& ctx, Rng& rng) {
  double worst = 0.0;
  for (int t = 0; t < std::max(1, ctx.trials / 4); ++t) {
    const DensityMatrix rho = random_density_mixed_rank(ctx.dim, rng);
    const DensityMatrix sigma = random_density_mixed_rank(ctx.dim, rng);
    worst = std::max({worst,
                      std::abs(uhlmann_fidelity(rho, sigma) - uhlmann_fidelity(sigma, rho)),
                      std::abs(super_fidelity(rho, sigma) - super_fidelity(sigma, rho))});
  }
  const std::string detail = "max symmetry defect " + fmt(worst);
  return worst <= 1e-12 ? pass("fidelity-symmetry", detail) : fail("fidelity-symmetry", detail);
}

PropertyResult check_unitary_invariance(const Context& ctx, Rng& rng) {
  double worst = 0.0;
  for (int t = 0; t < std::max(1, ctx.trials / 4); ++t) {
    const DensityMatrix rho = random_density_mixed_rank(ctx.dim, rng);
    const DensityMatrix sigma = random_density_mixed_rank(ctx.dim, rng);
    const ComplexMatrix u = sample_unitary(ctx.dim, rng);
    const DensityMatrix rho_u =
        DensityMatrix::from_spectrum(rho.eigenvalues(), u * rho.eigenvectors());
    const DensityMatrix sigma_u =
        DensityMatrix::from_spectrum(sigma.eigenvalues(), u * sigma.eigenvectors());
    worst = std::max({worst,
                      std::abs(uhlmann_fidelity(rho_u, sigma_u) - uhlmann_fidelity(rho, sigma)),
                      std::abs(super_fidelity(rho_u, sigma_u) - super_fidelity(rho, sigma)),
                      std::abs(hs_distance(rho_u, sigma_u) - hs_distance(rho, sigma))});
  }
  const std::string detail = "max invariance defect " + fmt(worst);
  return worst <= 1e-9 ? pass("unitary-invariance", detail) : fail("unitary-invariance", detail);
}

// ---------------------------------------------------------------------------
// fisher

PropertyResult check_route_equivalence(const Context& ctx, Rng& rng) {
  const int n = std::min(ctx.trials, 200);
  double worst_exact = 0.0;  // closed vs spectral vs nsld
  double worst_fd = 0.0;     // fd-richardson and hs-curvature vs closed
  for (int t = 0; t < n; ++t) {
    const DensityMatrix rho = sample_density(ctx.dim, ctx.dim, rng);
    const HermitianGenerator gen = sample_hermitian(ctx.dim, rng);
    const double closed = subqfi_closed(rho, gen);
    const double spectral = subqfi_spectral(rho, gen);
    const double nsld = subqfi_nsld(rho, gen).value;
    const double fd = subqfi_fd(rho, gen, 1e-3, true);
    const double hs = hs_curvature(rho, gen, 1e-3);
    const double scale = std::max(closed, 1e-12);
    worst_exact = std::max({worst_exact, std::abs(closed - spectral) / scale,
                            std::abs(closed - nsld) / scale, std::abs(spectral - nsld) / scale});
    worst_fd = std::max({worst_fd, std::abs(fd - closed) / scale, std::abs(hs - closed) / scale});
  }
  const std::string detail =
      "max rel dev: exact routes " + fmt(worst_exact) + ", fd routes " + fmt(worst_fd);
  return (worst_exact <= 1e-7 && worst_fd <= 1e-5) ? pass("route-equivalence", detail)
                                                   : fail("route-equivalence", detail);
}

PropertyResult check_theta_independence(const Context& ctx, Rng& rng) {
  double worst = 0.0;
  for (int t = 0; t < std::max(1, ctx.trials / 4); ++t) {
    const DensityMatrix rho = random_density_mixed_rank(ctx.dim, rng);
    const HermitianGenerator gen = sample_hermitian(ctx.dim, rng);
    const double theta = 6.283185307179586 * rng.uniform();
    const DensityMatrix rotated = PhaseEncoding(gen, theta).evolve(rho);
    worst = std::max(worst, std::abs(subqfi_closed(rotated, gen) - subqfi_closed(rho, gen)));
  }
  const std::string detail = "max |value(rho_theta) - value(rho)| = " + fmt(worst);
  return worst <= 1e-9 ? pass("theta-independence", detail) : fail("theta-independence", detail);
}

PropertyResult check_faithfulness(const Context& ctx, Rng& rng) {
  double worst_zero = 0.0;
  double min_nonzero = 1e300;
  for (int t = 0; t < std::max(1, ctx.trials / 4); ++t) {
    const auto [rho_c, gen_c] = random_commuting_pair(ctx.dim, rng);
    worst_zero = std::max({worst_zero, subqfi_closed(rho_c, gen_c),
                           qfi_spectral(rho_c, gen_c).value});
    const DensityMatrix rho = random_density_mixed_rank(ctx.dim, rng);
    const HermitianGenerator gen = sample_hermitian(ctx.dim, rng);
    const ComplexMatrix comm = rho.matrix() * gen.matrix() - gen.matrix() * rho.matrix();
    if (max_abs(comm) > 1e-6)
      min_nonzero = std::min({min_nonzero, subqfi_closed(rho, gen), qfi_spectral(rho, gen).value});
  }
  const std::string detail = "commuting max " + fmt(worst_zero) + ", non-commuting min " +
                             fmt(min_nonzero);
  return (worst_zero <= 1e-10 && min_nonzero > 0.0) ? pass("faithfulness-zero-set", detail)
                                                    : fail("faithfulness-zero-set", detail);
}

PropertyResult check_convexity(const Context& ctx, Rng& rng) {
  double worst = -1.0;
  for (int t = 0; t < std::max(1, ctx.trials / 4); ++t) {
    const HermitianGenerator gen = sample_hermitian(ctx.dim, rng);
    double w[3] = {rng.uniform(), rng.uniform(), rng.uniform()};
    const double sum = w[0] + w[1] + w[2];
    ComplexMatrix mix = ComplexMatrix::Zero(ctx.dim, ctx.dim);
    double rhs = 0.0;
    for (double& wk : w) {
      wk /= sum;
      const DensityMatrix rho = random_density_mixed_rank(ctx.dim, rng);
      mix += wk * rho.matrix();
      rhs += wk * subqfi_closed(rho, gen);
    }
    worst = std::max(worst, subqfi_closed(DensityMatrix::validated(mix), gen) - rhs);
  }
  const std::string detail = "max value(mix) - sum w_k value_k = " + fmt(worst);
  return worst <= 1e-9 ? pass("convexity", detail) : fail("convexity", detail);
}

PropertyResult check_modified_additivity(const Context& ctx, Rng& rng) {
  double worst = 0.0;
  for (int t = 0; t < std::max(1, ctx.trials / 4); ++t) {
    const DensityMatrix a = random_density_mixed_rank(2, rng);
    const DensityMatrix b = random_density_mixed_rank(2, rng);
    const HermitianGenerator ha = sample_hermitian(2, rng);
    const HermitianGenerator hb = sample_hermitian(2, rng);
    const ComplexMatrix eye = ComplexMatrix::Identity(2, 2);
    const HermitianGenerator joint =
        HermitianGenerator::validated(kron(ha.matrix(), eye) + kron(eye, hb.matrix()));
    const DensityMatrix product = DensityMatrix::validated(kron(a.matrix(), b.matrix()));
    const double lhs = subqfi_closed(product, joint);
    const double rhs = purity(a) * subqfi_closed(b, hb) + purity(b) * subqfi_closed(a, ha);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  const std::string detail = "max additivity defect " + fmt(worst);
  return worst <= 1e-8 ? pass("modified-additivity", detail) : fail("modified-additivity", detail);
}

PropertyResult check_partial_trace_monotonicity(const Context& ctx, Rng& rng) {
  double worst = -1.0;
  for (int t = 0; t < std::max(1, ctx.trials / 4); ++t) {
    const DensityMatrix rho = random_density_mixed_rank(4, rng);
    const HermitianGenerator ha = sample_hermitian(2, rng);
    const HermitianGenerator joint = HermitianGenerator::validated(
        kron(ha.matrix(), ComplexMatrix::Identity(2, 2)));
    const DensityMatrix reduced = partial_trace(rho, 2, 2, Subsystem::A);
    worst = std::max(worst, subqfi_closed(reduced, ha) / 2.0 - subqfi_closed(rho, joint));
  }
  const std::string detail = "max value_A(rho_A)/d_B - value(rho) = " + fmt(worst);
  return worst <= 1e-9 ? pass("partial-trace-monotonicity", detail)
                       : fail("partial-trace-monotonicity", detail);
}

PropertyResult check_qubit_coincidence(const Context& ctx, Rng& rng) {
  double worst = 0.0;
  for (int t = 0; t < ctx.trials; ++t) {
    const DensityMatrix rho = sample_density(2, 2, rng);
    const HermitianGenerator gen = sample_hermitian(2, rng);
    worst = std::max(worst, std::abs(qfi_spectral(rho, gen).value - subqfi_closed(rho, gen)));
  }
  const std::string detail = "max |QFI - subQFI| at d=2: " + fmt(worst);
  return worst <= 1e-8 ? pass("qubit-coincidence", detail) : fail("qubit-coincidence", detail);
}

PropertyResult check_pure_saturation(const Context& ctx, Rng& rng) {
  double worst = 0.0;
  for (int t = 0; t < ctx.trials; ++t) {
    const DensityMatrix rho = sample_density(ctx.dim, 1, rng);
    const HermitianGenerator gen = sample_hermitian(ctx.dim, rng);
    const double qfi = qfi_spectral(rho, gen).value;
    const double sub = subqfi_closed(rho, gen);
    const ComplexMatrix& h = gen.matrix();
    const Complex mean = (rho.matrix() * h).trace();
    const Complex square = (rho.matrix() * h * h).trace();
    const double variance = square.real() - mean.real() * mean.real();
    worst = std::max({worst, std::abs(qfi - sub), std::abs(qfi - 4.0 * variance)});
  }
  const std::string detail = "max pure-state defect " + fmt(worst);
  return worst <= 1e-8 ? pass("pure-state-saturation", detail)
                       : fail("pure-state-saturation", detail);
}

PropertyResult check_nsld_zero_mean(const Context& ctx, Rng& rng) {
  double worst = 0.0;
  for (int t = 0; t < std::max(1, ctx.trials / 4); ++t) {
    const DensityMatrix rho = sample_density(ctx.dim, ctx.dim, rng);
    const HermitianGenerator gen = sample_hermitian(ctx.dim, rng);
    const NsldResult nsld = subqfi_nsld(rho, gen);
    worst = std::max(worst, std::abs((nsld.lambda * rho.matrix()).trace()));
  }
  const std::string detail = "max |Tr[Lambda rho]| = " + fmt(worst);
  return worst <= 1e-8 ? pass("nsld-zero-mean", detail) : fail("nsld-zero-mean", detail);
}

PropertyResult check_bound_chain(const Context& ctx, Rng& rng) {
  double tight_ratio = 1e300;  // diagnostic: min of 8 I_WY / subQFI
  for (int t = 0; t < ctx.trials; ++t) {
    const DensityMatrix rho = random_density_mixed_rank(ctx.dim, rng);
    const HermitianGenerator gen = sample_hermitian(ctx.dim, rng);
    const FisherReport report = bound_report(rho, gen);
    if (!report.bound_chain_ok)
      return fail("bound-chain",
                  "violated at trial " + std::to_string(t) + ": I=" + fmt(report.qfi) +
                      " I_WY=" + fmt(report.skew_info) + " sub=" + fmt(report.sub_qfi));
    if (report.sub_qfi > 1e-9)
      tight_ratio = std::min(tight_ratio, 8.0 * report.skew_info / report.sub_qfi);
  }
  return pass("bound-chain",
              "I >= I_WY >= sub/8 on all instances; min 8*I_WY/sub = " + fmt(tight_ratio) +
                  " (diagnostic)");
}

PropertyResult check_sld_equation(const Context& ctx, Rng& rng) {
  double worst = 0.0;
  for (int t = 0; t < std::max(1, ctx.trials / 4); ++t) {
    const DensityMatrix rho = random_density_mixed_rank(ctx.dim, rng);
    const HermitianGenerator gen = sample_hermitian(ctx.dim, rng);
    const QfiResult qfi = qfi_spectral(rho, gen);
    const ComplexMatrix& m = rho.matrix();
    const ComplexMatrix drho = Complex(0.0, 1.0) * (m * gen.matrix() - gen.matrix() * m);
    worst = std::max(worst, max_abs(drho - 0.5 * (qfi.sld * m + m * qfi.sld)));
  }
  const std::string detail = "max SLD-equation residual " + fmt(worst);
  return worst <= 1e-8 ? pass("sld-equation", detail) : fail("sld-equation", detail);
}

// ---------------------------------------------------------------------------
// optimal

PropertyResult check_optimal_attainment(const Context& ctx, Rng& rng) {
  double worst_attain = 0.0;
  double worst_spec = 0.0;
  for (int t = 0; t < std::max(1, ctx.trials / 4); ++t) {
    const HermitianGenerator gen = sample_hermitian(ctx.dim, rng);
    const RealVector lambda = random_spectrum(ctx.dim, rng);
    const OptimalStateResult opt = optimal_state(lambda, gen);
    worst_attain =
        std::max(worst_attain, std::abs(subqfi_closed(opt.rho_star, gen) - opt.max_subqfi));
    worst_spec = std::max(worst_spec, (opt.rho_star.eigenvalues() - lambda).cwiseAbs().maxCoeff());
  }
  const std::string detail =
      "max attainment defect " + fmt(worst_attain) + ", spectrum defect " + fmt(worst_spec);
  return (worst_attain <= 1e-9 && worst_spec <= 1e-9) ? pass("optimal-attainment", detail)
                                                      : fail("optimal-attainment", detail);
}

PropertyResult check_haar_ceiling(const Context& ctx, Rng& rng) {
  const HermitianGenerator gen = sample_hermitian(ctx.dim, rng);
  const DensityMatrix rho = random_density_mixed_rank(ctx.dim, rng);
  const double ceiling = max_subqfi_closed(rho.eigenvalues(), gen);
  double worst = -1e300;
  for (int t = 0; t < ctx.trials; ++t) {
    const ComplexMatrix u = sample_unitary(ctx.dim, rng);
    const DensityMatrix rotated =
        DensityMatrix::from_spectrum(rho.eigenvalues(), u * rho.eigenvectors());
    worst = std::max(worst, subqfi_closed(rotated, gen) - ceiling);
  }
  const std::string detail = "max sampled - ceiling = " + fmt(worst);
  return worst <= 1e-9 ? pass("haar-ceiling", detail) : fail("haar-ceiling", detail);
}

PropertyResult check_chi_invariance(const Context& ctx, Rng& rng) {
  double worst = 0.0;
  for (int t = 0; t < std::max(1, ctx.trials / 8); ++t) {
    const HermitianGenerator gen = sample_hermitian(ctx.dim, rng);
    const RealVector lambda = random_spectrum(ctx.dim, rng);
    const double base = subqfi_closed(optimal_state(lambda, gen, 0.0).rho_star, gen);
    for (double chi : {1.0471975511965976, 3.141592653589793}) {
      const double v = subqfi_closed(optimal_state(lambda, gen, chi).rho_star, gen);
      worst = std::max(worst, std::abs(v - base));
    }
  }
  const std::string detail = "max |value(chi) - value(0)| = " + fmt(worst);
  return worst <= 1e-9 ? pass("chi-invariance", detail) : fail("chi-invariance", detail);
}

PropertyResult check_bloomfield_watson(const Context& ctx, Rng& rng) {
  const HermitianGenerator gen = sample_hermitian(ctx.dim, rng);
  const RealVector& h = gen.eigenvalues();
  const int d = ctx.dim;
  auto bound = [&](int k) {
    const int m = std::min(k, d - k);
    double sum = 0.0;
    for (int i = 0; i < m; ++i) {
      const double gap = h(i) - h(d - i - 1);
      sum += gap * gap;
    }
    return 0.25 * sum;
  };
  double worst = -1e300;
  for (int t = 0; t < ctx.trials; ++t) {
    const ComplexMatrix basis = sample_unitary(d, rng);
    for (int k = 1; k <= d - 1; ++k)
      worst = std::max(worst, offdiag_block_norm(gen, basis, k) - bound(k));
  }
  double worst_saturation = 0.0;
  const OptimalBasis opt = optimal_basis(gen);
  for (int k = 1; k <= d - 1; ++k)
    worst_saturation =
        std::max(worst_saturation, std::abs(offdiag_block_norm(gen, opt.vectors, k) - bound(k)));
  const std::string detail = "max block-norm excess " + fmt(worst) + ", optimal-basis saturation defect " +
                             fmt(worst_saturation);
  return (worst <= 1e-9 && worst_saturation <= 1e-9) ? pass("bloomfield-watson", detail)
                                                     : fail("bloomfield-watson", detail);
}

// ---------------------------------------------------------------------------
// optimize + sampling

PropertyResult check_optimizer(const Context& ctx, Rng& rng) {
  const DensityMatrix rho = sample_density(ctx.dim, ctx.dim, rng);
  const HermitianGenerator gen = sample_hermitian(ctx.dim, rng);
  MaximizeConfig config;
  config.restarts = 2;
  config.max_iters = 400;
  const Rng seed_rng(ctx.seed + 17);
  const OptimizationTrace first = maximize_subqfi(rho, gen, config, seed_rng);
  const OptimizationTrace second = maximize_subqfi(rho, gen, config, seed_rng);

  bool identical = first.iterations.size() == second.iterations.size() &&
                   first.best_value == second.best_value;
  if (identical)
    for (std::size_t i = 0; i < first.iterations.size(); ++i)
      if (first.iterations[i].objective != second.iterations[i].objective) {
        identical = false;
        break;
      }

  bool monotone = true;
  for (std::size_t i = 1; i < first.iterations.size(); ++i)
    if (first.iterations[i].restart == first.iterations[i - 1].restart &&
        first.iterations[i].objective < first.iterations[i - 1].objective)
      monotone = false;

  const double excess = first.best_value - max_subqfi_closed(rho.eigenvalues(), gen);
  const std::string detail = "deterministic=" + std::string(identical ? "yes" : "no") +
                             ", monotone=" + std::string(monotone ? "yes" : "no") +
                             ", best - ceiling = " + fmt(excess);
  return (identical && monotone && excess <= 1e-8) ? pass("optimizer-ascent-determinism", detail)
                                                   : fail("optimizer-ascent-determinism", detail);
}

PropertyResult check_estimator_unbiasedness(const Context& ctx, Rng& rng) {
  const DensityMatrix rho = random_density_mixed_rank(ctx.dim, rng);
  const DensityMatrix sigma = random_density_mixed_rank(ctx.dim, rng);
  const double target = overlap(rho, sigma);
  const int seeds = std::min(10 * ctx.trials, 10000);
  const std::int64_t shots = 100;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int s = 0; s < seeds; ++s) {
    Rng local = rng.split(static_cast<std::uint64_t>(s) + 1000);
    const double v = simulate_overlap(rho, sigma, shots, local).value;
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / seeds;
  const double var = std::max(0.0, sum_sq / seeds - mean * mean);
  const double grand_se = std::sqrt(var / seeds);
  const double z = std::abs(mean - target) / std::max(grand_se, 1e-300);
  const std::string detail = "grand mean dev " + fmt(mean - target) + " (z = " + fmt(z) + ")";
  return z <= 4.0 ? pass("estimator-unbiasedness", detail) : fail("estimator-unbiasedness", detail);
}

PropertyResult check_variance_scaling(const Context& ctx, Rng& rng) {
  const DensityMatrix rho = random_density_mixed_rank(ctx.dim, rng);
  const DensityMatrix sigma = random_density_mixed_rank(ctx.dim, rng);
  const int reps = 200;
  double scaled[3] = {0.0, 0.0, 0.0};
  const std::int64_t shot_counts[3] = {100, 10000, 1000000};
  for (int c = 0; c < 3; ++c) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int r = 0; r < reps; ++r) {
      Rng local = rng.split(static_cast<std::uint64_t>(c) * 1000 + r);
      const double v = simulate_overlap(rho, sigma, shot_counts[c], local).value;
      sum += v;
      sum_sq += v * v;
    }
    const double mean = sum / reps;
    const double std_dev = std::sqrt(std::max(0.0, sum_sq / reps - mean * mean));
    scaled[c] = std_dev * std::sqrt(static_cast<double>(shot_counts[c]));
  }
  double worst = 0.0;
  for (int c = 1; c < 3; ++c)
    worst = std::max(worst, std::abs(scaled[c] / scaled[0] - 1.0));
  const std::string detail = "max deviation of std*sqrt(nu) ratios from 1: " + fmt(worst);
  return worst <= 0.10 ? pass("variance-scaling", detail) : fail("variance-scaling", detail);
}

PropertyResult check_noiseless_reduction(const Context& ctx, Rng& rng) {
  double worst = 0.0;
  for (int t = 0; t < std::max(1, ctx.trials / 10); ++t) {
    const DensityMatrix rho = random_density_mixed_rank(ctx.dim, rng);
    const HermitianGenerator gen = sample_hermitian(ctx.dim, rng);
    const double delta = 0.01 + 0.09 * rng.uniform();
    const DensityMatrix shifted = PhaseEncoding(gen, delta).evolve(rho);
    const double via_traces =
        subqfi_finite_delta(overlap(rho, shifted), purity(rho), purity(shifted), delta);
    worst = std::max(worst, std::abs(via_traces - subqfi_fd(rho, gen, delta, false)));
  }
  const std::string detail = "max |trace-fed - fd| = " + fmt(worst);
  return worst == 0.0 ? pass("noiseless-reduction", detail) : fail("noiseless-reduction", detail);
}

}  // namespace

std::vector<PropertyResult> run_property_suite(int dim, int trials, std::uint64_t seed) {
  if (dim < 2) raise(Errc::bad_input, "verification requires dim >= 2");
  if (trials < 1) raise(Errc::bad_input, "need at least one trial");

  const Context ctx{dim, trials, seed};
  const std::pair<const char*, Check> checks[] = {
      {"eigendecomposition-reconstruction", check_reconstruction},
      {"partial-trace", check_partial_trace},
      {"psd-sqrt-recovery", check_psd_sqrt},
      {"haar-moment", check_haar_moment},
      {"superfidelity-bound", check_superfidelity_bound},
      {"qubit-saturation", check_qubit_saturation},
      {"fidelity-symmetry", check_fidelity_symmetry},
      {"unitary-invariance", check_unitary_invariance},
      {"route-equivalence", check_route_equivalence},
      {"theta-independence", check_theta_independence},
      {"faithfulness-zero-set", check_faithfulness},
      {"convexity", check_convexity},
      {"modified-additivity", check_modified_additivity},
      {"partial-trace-monotonicity", check_partial_trace_monotonicity},
      {"qubit-coincidence", check_qubit_coincidence},
      {"pure-state-saturation", check_pure_saturation},
      {"nsld-zero-mean", check_nsld_zero_mean},
      {"bound-chain", check_bound_chain},
      {"sld-equation", check_sld_equation},
      {"optimal-attainment", check_optimal_attainment},
      {"haar-ceiling", check_haar_ceiling},
      {"chi-invariance", check_chi_invariance},
      {"bloomfield-watson", check_bloomfield_watson},
      {"optimizer-ascent-determinism", check_optimizer},
      {"estimator-unbiasedness", check_estimator_unbiasedness},
      {"variance-scaling", check_variance_scaling},
      {"noiseless-reduction", check_noiseless_reduction},
  };

  std::vector<PropertyResult> results;
  results.reserve(std::size(checks));
  std::uint64_t stream = 0;
  const Rng base(seed);
  for (const auto& [name, check] : checks) {
    Rng rng = base.split(stream++);
    try {
      results.push_back(check(ctx, rng));
    } catch (const Error& e) {
      results.push_back({name, false, std::string("error: ") + e.what()});
    }
  }
  return results;
}

}  // namespace subqfi::verify
