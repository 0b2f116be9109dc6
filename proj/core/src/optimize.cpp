#include "subqfi/optimize.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <future>
#include <string>

#include "subqfi/fisher.hpp"
#include "subqfi/optimal.hpp"

namespace subqfi {

namespace {

void check_params(const AnsatzParams& p) {
  if (p.dim < 1 || p.values.size() != AnsatzParams::param_count(p.dim))
    raise(Errc::bad_input, "expected " + std::to_string(AnsatzParams::param_count(p.dim)) +
                               " parameters for dim " + std::to_string(p.dim));
}

// Parameter layout: [0, d) diagonal, then upper-triangle (i < j) real parts,
// then upper-triangle imaginary parts, both in row-major (i, j) order.
int offdiag_index(int dim, int i, int j) {
  return dim + (i * (2 * dim - i - 1)) / 2 + (j - i - 1);
}

struct AnsatzEig {
  ComplexMatrix q;       // eigenvectors of A
  RealVector a;          // eigenvalues of A
  ComplexMatrix unitary; // exp(-i A)
};

AnsatzEig decompose(const AnsatzParams& p) {
  const ComplexMatrix a = ansatz_hermitian(p);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
  if (solver.info() != Eigen::Success) raise(Errc::bad_input, "ansatz eigensolve failed");
  AnsatzEig out;
  out.q = solver.eigenvectors();
  out.a = solver.eigenvalues();
  ComplexVector phases(out.a.size());
  for (Eigen::Index k = 0; k < out.a.size(); ++k) phases(k) = std::polar(1.0, -out.a(k));
  out.unitary = out.q * phases.asDiagonal() * out.q.adjoint();
  return out;
}

// -2 Tr[[sigma, H]^2] on plain matrices, without the validated-state wrapper.
double subqfi_of(const ComplexMatrix& sigma, const ComplexMatrix& h) {
  const ComplexMatrix c = sigma * h - h * sigma;
  return -2.0 * real_part_checked((c * c).trace());
}

double value_at(const ComplexMatrix& rho, const ComplexMatrix& h, const AnsatzParams& p) {
  const ComplexMatrix u = ansatz_unitary(p);
  return subqfi_of(u * rho * u.adjoint(), h);
}

// First divided difference of exp(-i x), stable near coincident eigenvalues:
// (e^{-ix} - e^{-iy})/(x - y) = -i e^{-i(x+y)/2} sinc((x-y)/2).
Complex exp_divided_difference(double x, double y) {
  const double half = 0.5 * (x - y);
  double sinc = 1.0;
  if (std::abs(half) > 1e-8) {
    sinc = std::sin(half) / half;
  } else {
    sinc = 1.0 - half * half / 6.0;
  }
  return Complex(0.0, -1.0) * std::polar(1.0, -0.5 * (x + y)) * sinc;
}

struct RestartOutcome {
  std::vector<TraceEntry> trace;
  AnsatzParams params;
  double value = 0.0;
  bool converged = false;
};

}  // namespace

AnsatzParams AnsatzParams::zero(int dim) {
  return AnsatzParams{dim, RealVector::Zero(param_count(dim))};
}

ComplexMatrix ansatz_hermitian(const AnsatzParams& p) {
  check_params(p);
  const int d = p.dim;
  const int offdiag = d * (d - 1) / 2;
  ComplexMatrix a(d, d);
  for (int i = 0; i < d; ++i) a(i, i) = p.values(i);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const int idx = offdiag_index(d, i, j);
      const Complex entry(p.values(idx), p.values(idx + offdiag));
      a(i, j) = entry;
      a(j, i) = std::conj(entry);
    }
  return a;
}

ComplexMatrix ansatz_unitary(const AnsatzParams& p) { return decompose(p).unitary; }

Objective objective(const DensityMatrix& rho, const HermitianGenerator& gen,
                    const AnsatzParams& params, double fd_step) {
  check_params(params);
  if (rho.dim() != params.dim || gen.dim() != params.dim)
    raise(Errc::dimension_mismatch, "ansatz dim does not match state/generator");
  const ComplexMatrix& m = rho.matrix();
  const ComplexMatrix& h = gen.matrix();

  Objective result;
  result.value = value_at(m, h, params);
  result.gradient.resize(params.values.size());
  AnsatzParams probe = params;
  for (Eigen::Index k = 0; k < params.values.size(); ++k) {
    probe.values(k) = params.values(k) + fd_step;
    const double up = value_at(m, h, probe);
    probe.values(k) = params.values(k) - fd_step;
    const double down = value_at(m, h, probe);
    probe.values(k) = params.values(k);
    result.gradient(k) = (up - down) / (2.0 * fd_step);
  }
  return result;
}

RealVector objective_gradient(const DensityMatrix& rho, const HermitianGenerator& gen,
                              const AnsatzParams& params) {
  check_params(params);
  if (rho.dim() != params.dim || gen.dim() != params.dim)
    raise(Errc::dimension_mismatch, "ansatz dim does not match state/generator");
  const int d = params.dim;
  const AnsatzEig eig = decompose(params);
  const ComplexMatrix& u = eig.unitary;
  const ComplexMatrix sigma = u * rho.matrix() * u.adjoint();
  const ComplexMatrix& h = gen.matrix();

  // df = Tr[M dsigma] with M = 4 [[sigma, H], H].
  const ComplexMatrix c = sigma * h - h * sigma;
  const ComplexMatrix m_mat = 4.0 * (c * h - h * c);
  const ComplexMatrix x = rho.matrix() * u.adjoint() * m_mat;

  // Push X through the derivative of exp(-i A) in A's eigenbasis.
  const ComplexMatrix y = eig.q.adjoint() * x * eig.q;
  ComplexMatrix z(d, d);
  for (int l = 0; l < d; ++l)
    for (int k = 0; k < d; ++k)
      z(l, k) = exp_divided_difference(eig.a(k), eig.a(l)) * y(l, k);
  const ComplexMatrix g = eig.q * z * eig.q.adjoint();

  const int offdiag = d * (d - 1) / 2;
  RealVector grad(params.values.size());
  for (int i = 0; i < d; ++i) grad(i) = 2.0 * g(i, i).real();
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const int idx = offdiag_index(d, i, j);
      grad(idx) = 2.0 * (g(j, i) + g(i, j)).real();
      grad(idx + offdiag) = -2.0 * (g(j, i) - g(i, j)).imag();
    }
  return grad;
}

OptimizationTrace maximize_subqfi(const DensityMatrix& rho, const HermitianGenerator& gen,
                                  const MaximizeConfig& config, const Rng& rng) {
  if (rho.dim() != gen.dim()) raise(Errc::dimension_mismatch, "state/generator dims differ");
  if (config.restarts < 1) raise(Errc::bad_input, "need at least one restart");
  const int d = rho.dim();
  const ComplexMatrix& m = rho.matrix();
  const ComplexMatrix& h = gen.matrix();
  const double target = max_subqfi_closed(rho.eigenvalues(), gen);

  auto run_start = [&](int restart) {
    AnsatzParams p = AnsatzParams::zero(d);
    if (restart > 0) {
      Rng local = rng.split(static_cast<std::uint64_t>(restart));
      for (Eigen::Index k = 0; k < p.values.size(); ++k)
        p.values(k) = config.init_scale * local.normal();
    }

    RestartOutcome out;
    double f = value_at(m, h, p);
    // Warm-started trial step: flat directions need steps far beyond 1, and a
    // fixed unit trial stalls there (contraction 1 - step * curvature).
    double trial_step = config.init_step;
    RealVector grad_prev;
    RealVector direction;
    for (int iter = 0; iter < config.max_iters; ++iter) {
      const RealVector grad = objective_gradient(rho, gen, p);
      const double gnorm = grad.norm();
      out.trace.push_back({iter, f, gnorm, restart});
      if (gnorm <= config.grad_tol || f >= target - config.target_tol) {
        out.converged = true;
        break;
      }

      if (config.step_rule == StepRule::conjugate && iter > 0) {
        // Polak-Ribiere+ with automatic reset to steepest ascent.
        const double denom = grad_prev.squaredNorm();
        const double beta = std::max(0.0, grad.dot(grad - grad_prev) / std::max(denom, 1e-300));
        direction = grad + beta * direction;
        if (direction.dot(grad) <= 0.0) direction = grad;
      } else {
        direction = grad;
      }
      grad_prev = grad;
      const double slope = direction.dot(grad);

      // Backtracking line search (ascent Armijo).
      double step = trial_step;
      bool accepted = false;
      while (step > 1e-18) {
        AnsatzParams trial = p;
        trial.values += step * direction;
        const double f_trial = value_at(m, h, trial);
        if (f_trial >= f + config.armijo * step * slope) {
          p = std::move(trial);
          f = f_trial;
          accepted = true;
          break;
        }
        step *= config.shrink;
      }
      if (!accepted) break;  // no ascent left at working precision
      trial_step = std::min(2.0 * step, 1e6);
    }
    out.params = std::move(p);
    out.value = f;
    return out;
  };

  std::vector<std::future<RestartOutcome>> futures;
  futures.reserve(config.restarts + 1);
  for (int r = 0; r <= config.restarts; ++r)
    futures.push_back(std::async(std::launch::async, run_start, r));

  OptimizationTrace trace;
  trace.best_value = -1.0;
  trace.restarts_used = config.restarts;
  trace.closed_form_max = target;
  for (int r = 0; r <= config.restarts; ++r) {
    RestartOutcome out = futures[static_cast<std::size_t>(r)].get();
    trace.iterations.insert(trace.iterations.end(), out.trace.begin(), out.trace.end());
    if (out.value > trace.best_value) {
      trace.best_value = out.value;
      trace.best_params = std::move(out.params);
      trace.best_restart = r;
      trace.converged = out.converged;
    }
  }
  if (trace.best_value >= target - config.target_tol) trace.converged = true;
  return trace;
}

}  // namespace subqfi
