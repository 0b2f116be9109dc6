#include "subqfi/optimal.hpp"

#include <cmath>
#include <future>
#include <string>
#include <vector>

#include "subqfi/fisher.hpp"
#include "subqfi/sample.hpp"

namespace subqfi {

namespace {

void check_spectrum(const RealVector& lambda) {
  if (lambda.size() < 1) raise(Errc::bad_spectrum, "empty spectrum");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) < -1e-12) raise(Errc::bad_spectrum, "negative weight " + std::to_string(lambda(i)));
    if (i + 1 < lambda.size() && lambda(i) < lambda(i + 1) - 1e-12)
      raise(Errc::bad_spectrum, "spectrum must be sorted descending");
    sum += lambda(i);
  }
  if (std::abs(sum - 1.0) > tol::unit_trace)
    raise(Errc::bad_spectrum, "spectrum sums to " + std::to_string(sum));
}

}  // namespace

OptimalBasis optimal_basis(const HermitianGenerator& gen, double chi) {
  const int d = gen.dim();
  const ComplexMatrix& h_vecs = gen.eigenvectors();
  const Complex phase = std::polar(1.0, chi);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  // The phase on the mirror component must be conjugated in the minus branch,
  // otherwise paired columns are not orthogonal for complex phases.
  ComplexMatrix vectors(d, d);
  for (int j = 1; j <= d; ++j) {
    const int mirror = d - j + 1;
    if (2 * j < d + 1) {
      vectors.col(j - 1) = inv_sqrt2 * (h_vecs.col(j - 1) + phase * h_vecs.col(mirror - 1));
    } else if (2 * j == d + 1) {
      vectors.col(j - 1) = h_vecs.col(j - 1);
    } else {
      vectors.col(j - 1) =
          inv_sqrt2 * (h_vecs.col(j - 1) - std::conj(phase) * h_vecs.col(mirror - 1));
    }
  }

  const double ortho =
      max_abs(vectors.adjoint() * vectors - ComplexMatrix::Identity(d, d));
  if (ortho > tol::orthonormal)
    raise(Errc::basis_not_orthonormal, "Gram deviation " + std::to_string(ortho));
  return OptimalBasis{std::move(vectors), chi};
}

OptimalStateResult optimal_state(const RealVector& spectrum_descending,
                                 const HermitianGenerator& gen, double chi) {
  check_spectrum(spectrum_descending);
  if (spectrum_descending.size() != gen.dim())
    raise(Errc::dimension_mismatch, "spectrum size does not match generator dimension");
  const OptimalBasis basis = optimal_basis(gen, chi);
  return OptimalStateResult{
      DensityMatrix::from_spectrum(spectrum_descending, basis.vectors),
      max_subqfi_closed(spectrum_descending, gen)};
}

double max_subqfi_closed(const RealVector& spectrum_descending, const HermitianGenerator& gen) {
  check_spectrum(spectrum_descending);
  const int d = gen.dim();
  if (spectrum_descending.size() != d)
    raise(Errc::dimension_mismatch, "spectrum size does not match generator dimension");
  const RealVector& h = gen.eigenvalues();
  double sum = 0.0;
  for (int k = 0; k < d; ++k) {
    const double dl = spectrum_descending(k) - spectrum_descending(d - k - 1);
    const double dh = h(k) - h(d - k - 1);
    sum += dl * dl * dh * dh;
  }
  return 0.5 * sum;
}

double offdiag_block_norm(const HermitianGenerator& gen, const ComplexMatrix& basis, int k) {
  const int d = gen.dim();
  if (basis.rows() != d || basis.cols() != d)
    raise(Errc::dimension_mismatch, "basis must be " + std::to_string(d) + " square");
  if (k < 1 || k > d - 1)
    raise(Errc::bad_input, "block split k must lie in [1, " + std::to_string(d - 1) + "]");
  const double ortho = max_abs(basis.adjoint() * basis - ComplexMatrix::Identity(d, d));
  if (ortho > tol::orthonormal)
    raise(Errc::basis_not_orthonormal, "Gram deviation " + std::to_string(ortho));

  const ComplexMatrix ht = basis.adjoint() * gen.matrix() * basis;
  double sum = 0.0;
  for (int i = 0; i < k; ++i)
    for (int j = k; j < d; ++j) sum += std::norm(ht(i, j));
  return sum;
}

SampledMaxima sample_unitary_maxima(const DensityMatrix& rho, const HermitianGenerator& gen,
                              int trials, const Rng& rng) {
  if (trials < 1) raise(Errc::bad_input, "need at least one trial");
  if (rho.dim() != gen.dim()) raise(Errc::dimension_mismatch, "state/generator dims differ");

  struct ChunkBest {
    double subqfi = -1.0;
    double qfi = -1.0;
    ComplexMatrix subqfi_vecs;
    ComplexMatrix qfi_vecs;
  };

  // Fixed chunk count so the drawn sample set does not depend on the machine.
  const int chunks = std::min(16, trials);
  const int per_chunk = trials / chunks;
  const int leftover = trials % chunks;

  auto run_chunk = [&](int chunk) {
    Rng local = rng.split(static_cast<std::uint64_t>(chunk));
    const int count = per_chunk + (chunk < leftover ? 1 : 0);
    ChunkBest best;
    for (int t = 0; t < count; ++t) {
      const ComplexMatrix u = sample_unitary(rho.dim(), local);
      const DensityMatrix rotated =
          DensityMatrix::from_spectrum(rho.eigenvalues(), u * rho.eigenvectors());
      const double s = subqfi_closed(rotated, gen);
      const double q = qfi_spectral(rotated, gen).value;
      if (s > best.subqfi) {
        best.subqfi = s;
        best.subqfi_vecs = rotated.eigenvectors();
      }
      if (q > best.qfi) {
        best.qfi = q;
        best.qfi_vecs = rotated.eigenvectors();
      }
    }
    return best;
  };

  std::vector<std::future<ChunkBest>> futures;
  futures.reserve(chunks);
  for (int c = 0; c < chunks; ++c)
    futures.push_back(std::async(std::launch::async, run_chunk, c));

  // The unrotated input is always a candidate, so a search seeded at an
  // optimal state reports the attained maximum even for a single trial.
  ChunkBest best;
  best.subqfi = subqfi_closed(rho, gen);
  best.qfi = qfi_spectral(rho, gen).value;
  best.subqfi_vecs = rho.eigenvectors();
  best.qfi_vecs = rho.eigenvectors();
  for (auto& f : futures) {
    const ChunkBest local = f.get();  // merged in chunk order: deterministic
    if (local.subqfi > best.subqfi) {
      best.subqfi = local.subqfi;
      best.subqfi_vecs = local.subqfi_vecs;
    }
    if (local.qfi > best.qfi) {
      best.qfi = local.qfi;
      best.qfi_vecs = local.qfi_vecs;
    }
  }

  const DensityMatrix subqfi_state = DensityMatrix::from_spectrum(rho.eigenvalues(), best.subqfi_vecs);
  const DensityMatrix qfi_state = DensityMatrix::from_spectrum(rho.eigenvalues(), best.qfi_vecs);
  return SampledMaxima{best.subqfi, best.qfi,
                       max_abs(subqfi_state.matrix() - qfi_state.matrix()), subqfi_state,
                       qfi_state};
}

}  // namespace subqfi
