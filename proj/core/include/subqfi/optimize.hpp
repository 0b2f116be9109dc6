#pragma once

#include <optional>
#include <vector>

#include "subqfi/rng.hpp"
#include "subqfi/states.hpp"

namespace subqfi {

/// Real parameterization of a Hermitian matrix A: d diagonal entries, then the
/// d(d-1)/2 real parts and d(d-1)/2 imaginary parts of the upper triangle.
/// U(p) = exp(-i A(p)) reaches every unitary (up to global phase), so the
/// global optimum over state preparations is inside the search space.
struct AnsatzParams {
  int dim = 0;
  RealVector values;  // size dim^2

  static AnsatzParams zero(int dim);
  static int param_count(int dim) { return dim * dim; }
};

/// Hermitian matrix A(p).
ComplexMatrix ansatz_hermitian(const AnsatzParams& params);

/// Unitary exp(-i A(p)) via eigendecomposition of A.
ComplexMatrix ansatz_unitary(const AnsatzParams& params);

struct Objective {
  double value = 0.0;
  RealVector gradient;
};

/// Sub-QFI of U(p) rho U(p)^dag together with its central finite-difference
/// gradient (step fd_step per coordinate).
Objective objective(const DensityMatrix& rho, const HermitianGenerator& gen,
                    const AnsatzParams& params, double fd_step = 1e-5);

/// Analytic gradient of the same objective (matrix-function chain rule);
/// matches the finite-difference gradient to ~1e-6 and is what the optimizer
/// iterates on.
RealVector objective_gradient(const DensityMatrix& rho, const HermitianGenerator& gen,
                              const AnsatzParams& params);

enum class StepRule {
  gradient,   // plain steepest ascent
  conjugate,  // Polak-Ribiere+ directions; far faster on ill-conditioned tops
};

struct MaximizeConfig {
  int restarts = 8;       // random starts in addition to the p = 0 start
  int max_iters = 2000;   // per start
  double grad_tol = 1e-6;
  double target_tol = 1e-8;  // early stop when within this of the closed-form max
  StepRule step_rule = StepRule::conjugate;
  double armijo = 1e-4;
  double shrink = 0.5;
  double init_step = 1.0;
  double init_scale = 1.0;  // std dev of random start coordinates
};

struct TraceEntry {
  int step = 0;
  double objective = 0.0;
  double grad_norm = 0.0;
  int restart = 0;
};

struct OptimizationTrace {
  std::vector<TraceEntry> iterations;
  AnsatzParams best_params;
  double best_value = 0.0;
  int best_restart = 0;
  int restarts_used = 0;
  bool converged = false;
  double closed_form_max = 0.0;
};

/// Gradient ascent with backtracking (Armijo) line search from restarts+1
/// starts (restart 0 is p = 0). Restarts run in parallel on split rng streams
/// and are merged deterministically (best value, ties to the lowest index).
/// Accepted steps never decrease the objective.
OptimizationTrace maximize_subqfi(const DensityMatrix& rho, const HermitianGenerator& gen,
                                  const MaximizeConfig& config, const Rng& rng);

}  // namespace subqfi
