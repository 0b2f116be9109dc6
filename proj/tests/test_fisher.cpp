#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "subqfi/fidelity.hpp"
#include "subqfi/fisher.hpp"
#include "subqfi/rng.hpp"
#include "subqfi/sample.hpp"

using namespace subqfi;
using fixtures::commuting_generator;
using fixtures::commuting_state;
using fixtures::maximally_mixed;
using fixtures::plus_state;
using fixtures::qutrit_hopping;
using fixtures::qutrit_state;
using fixtures::sigma_z_generator;
using fixtures::x_basis_mixed;

TEST_CASE("commutator form on the named fixtures") {
  // Pure |+> with sigma_z: 4 Var(H) = 4.
  CHECK(subqfi_closed(plus_state(), sigma_z_generator()) == doctest::Approx(4.0).epsilon(1e-12));
  // Simultaneously diagonal pair: exactly zero.
  CHECK(subqfi_closed(commuting_state(), commuting_generator()) == 0.0);
  // Tridiagonal qutrit fixture, frozen from the brute-force eigenbasis sum.
  const double brute = oracles::subqfi_brute_force(qutrit_state(), qutrit_hopping());
  CHECK(brute == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(subqfi_closed(qutrit_state(), qutrit_hopping()) == doctest::Approx(brute).epsilon(1e-10));
}

TEST_CASE("spectral form matches the commutator form on the fixtures") {
  CHECK(subqfi_spectral(plus_state(), sigma_z_generator()) == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(subqfi_spectral(qutrit_state(), qutrit_hopping()) == doctest::Approx(0.2).epsilon(1e-10));
  CHECK(subqfi_spectral(commuting_state(), commuting_generator()) <= 1e-12);
  Rng rng(3);
  CHECK(subqfi_spectral(maximally_mixed(4), sample_hermitian(4, rng)) <= 1e-12);
  CHECK(subqfi_spectral(x_basis_mixed(), sigma_z_generator()) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("finite-delta quotient converges with Richardson") {
  CHECK(std::abs(subqfi_fd(plus_state(), sigma_z_generator(), 1e-3, true) - 4.0) <= 1e-6);
  CHECK(std::abs(subqfi_fd(qutrit_state(), qutrit_hopping(), 1e-3, true) - 0.2) <= 1e-6);
  for (double delta : {1e-3, 1e-2, 0.1})
    CHECK(std::abs(subqfi_fd(commuting_state(), commuting_generator(), delta, true)) <= 1e-10);
  CHECK_THROWS_AS(static_cast<void>(subqfi_fd(plus_state(), sigma_z_generator(), 0.2, true)),
                  Error);
  CHECK_THROWS_AS(static_cast<void>(subqfi_fd(plus_state(), sigma_z_generator(), 0.0, true)),
                  Error);
}

TEST_CASE("nsld route") {
  const NsldResult res = subqfi_nsld(x_basis_mixed(), sigma_z_generator());
  CHECK(res.value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs((res.lambda * x_basis_mixed().matrix()).trace()) <= 1e-8);

  const NsldResult trivial = subqfi_nsld(maximally_mixed(2), sigma_z_generator());
  CHECK(trivial.value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(max_abs(trivial.lambda) <= 1e-12);

  try {
    static_cast<void>(subqfi_nsld(plus_state(), sigma_z_generator()));
    FAIL("expected NotFullRank");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_full_rank);
  }
}

TEST_CASE("hs curvature fixtures") {
  CHECK(std::abs(hs_curvature(plus_state(), sigma_z_generator(), 1e-3) - 4.0) <= 1e-5);
  CHECK(std::abs(hs_curvature(qutrit_state(), qutrit_hopping(), 1e-3) - 0.2) <= 1e-5);
  CHECK(std::abs(hs_curvature(commuting_state(), commuting_generator(), 1e-2)) <= 1e-10);
}

TEST_CASE("hs curvature error falls off quadratically") {
  // Acceptance-style order check on the qutrit fixture.
  const double exact = subqfi_closed(qutrit_state(), qutrit_hopping());
  double previous_error = 0.0;
  int halvings = 0;
  for (double delta : {1e-2, 5e-3, 2.5e-3}) {
    const double error = std::abs(hs_curvature(qutrit_state(), qutrit_hopping(), delta) - exact);
    if (halvings > 0) CHECK(std::log2(previous_error / error) >= 1.9);
    previous_error = error;
    ++halvings;
  }
}

TEST_CASE("qfi spectral fixtures and SLD equation") {
  CHECK(qfi_spectral(plus_state(), sigma_z_generator()).value == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(qfi_spectral(x_basis_mixed(), sigma_z_generator()).value ==
        doctest::Approx(1.0).epsilon(1e-10));

  const double brute = oracles::qfi_brute_force(qutrit_state(), qutrit_hopping());
  CHECK(brute == doctest::Approx(0.28).epsilon(1e-12));
  CHECK(qfi_spectral(qutrit_state(), qutrit_hopping()).value ==
        doctest::Approx(brute).epsilon(1e-10));

  Rng rng(31);
  for (int t = 0; t < 30; ++t) {
    const int d = 2 + static_cast<int>(rng.next_u64() % 3);
    const int rank = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(d));
    const DensityMatrix rho = sample_density(d, rank, rng);
    const HermitianGenerator gen = sample_hermitian(d, rng);
    const QfiResult qfi = qfi_spectral(rho, gen);
    const ComplexMatrix& m = rho.matrix();
    const ComplexMatrix drho = Complex(0, 1) * (m * gen.matrix() - gen.matrix() * m);
    CHECK(max_abs(drho - 0.5 * (qfi.sld * m + m * qfi.sld)) <= 1e-8);
    // Tr[L^2 rho] recovers the value.
    CHECK(std::abs((qfi.sld * qfi.sld * m).trace().real() - qfi.value) <= 1e-8);
  }
}

TEST_CASE("qfi finite-difference route") {
  CHECK(std::abs(qfi_fd(x_basis_mixed(), sigma_z_generator(), 1e-3, 0.0) - 1.0) <= 1e-4);
  CHECK(std::abs(qfi_fd(maximally_mixed(2), sigma_z_generator(), 1e-3, 0.0)) <= 1e-10);
  // Rank-deficient states need the explicit regularization knob; the epsilon
  // mixing biases the value at O(epsilon/delta^2) here.
  CHECK(std::abs(qfi_fd(plus_state(), sigma_z_generator(), 1e-3, 1e-6) - 4.0) <= 1e-2);
  CHECK_THROWS_AS(static_cast<void>(qfi_fd(plus_state(), sigma_z_generator(), 1e-3, 1e-3)), Error);
}

TEST_CASE("skew information fixtures") {
  CHECK(skew_information(plus_state(), sigma_z_generator()) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(skew_information(commuting_state(), commuting_generator()) == 0.0);

  // Frozen from the brute-force spectral sum: 1 - sqrt(3)/2.
  const double brute = oracles::skew_brute_force(x_basis_mixed(), sigma_z_generator());
  CHECK(brute == doctest::Approx(0.1339745962155614).epsilon(1e-12));
  CHECK(skew_information(x_basis_mixed(), sigma_z_generator()) ==
        doctest::Approx(brute).epsilon(1e-10));
}

TEST_CASE("bound report fixtures") {
  const FisherReport pure = bound_report(plus_state(), sigma_z_generator());
  CHECK(pure.qfi == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(pure.sub_qfi == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(pure.skew_info == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(pure.bound_chain_ok);

  const FisherReport flat = bound_report(commuting_state(), commuting_generator(), true);
  CHECK(flat.qfi == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(flat.sub_qfi == 0.0);
  CHECK(flat.skew_info == 0.0);
  CHECK(flat.bound_chain_ok);
  CHECK(flat.method_values.count("spectral") == 1);
  CHECK(flat.method_values.count("nsld") == 1);

  Rng rng(37);
  for (int t = 0; t < 1000; ++t) {
    const int rank = 1 + static_cast<int>(rng.next_u64() % 8);
    CHECK(bound_report(sample_density(8, rank, rng), sample_hermitian(8, rng)).bound_chain_ok);
  }
}

TEST_CASE("cramer-rao conversion") {
  CHECK(cramer_rao(4.0, 1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(cramer_rao(4.0, 100) == doctest::Approx(0.0025).epsilon(1e-15));
  try {
    static_cast<void>(cramer_rao(0.0, 10));
    FAIL("expected ZeroInformation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::zero_information);
  }
}

TEST_CASE("purity loss fixtures") {
  // Fixed point orbit: no purity is lost.
  const PurityLossResult flat = purity_loss(commuting_state(), commuting_generator(), 0.3);
  CHECK(flat.delta_gamma <= 1e-12);
  CHECK(std::abs(flat.rho_ave.matrix().trace().real() - 1.0) <= 1e-9);

  // Sharp-noise regime on the pure qubit: delta_gamma ~ 2e-4, and the
  // quadrature value matches the closed-form Gaussian average exactly.
  const PurityLossResult sharp = purity_loss(plus_state(), sigma_z_generator(), 0.01);
  CHECK(std::abs(sharp.delta_gamma - 2e-4) / 2e-4 <= 0.01);
  CHECK(sharp.delta_gamma ==
        doctest::Approx(oracles::pure_qubit_purity_loss(0.01)).epsilon(1e-9));

  // Broad noise: the ratio visibly departs from the sharp-regime value 4.
  const PurityLossResult broad = purity_loss(plus_state(), sigma_z_generator(), 0.5);
  CHECK(broad.delta_gamma ==
        doctest::Approx(oracles::pure_qubit_purity_loss(0.5)).epsilon(1e-9));
  CHECK(broad.ratio < 3.0);

  CHECK_THROWS_AS(static_cast<void>(purity_loss(plus_state(), sigma_z_generator(), 0.01, 5)),
                  Error);
  CHECK_THROWS_AS(static_cast<void>(purity_loss(plus_state(), sigma_z_generator(), -0.1)), Error);
}

TEST_CASE("purity loss relation") {
  const PurityLossRelation pure = purity_loss_relation_check(plus_state(), sigma_z_generator(), 0.01);
  CHECK(pure.rel_err <= 1e-3);

  const PurityLossRelation qutrit =
      purity_loss_relation_check(qutrit_state(), qutrit_hopping(), 0.01);
  CHECK(qutrit.rel_err <= 1e-3);

  // Fixed-point orbit: both sides vanish (the relative error degenerates to
  // 0/0 there, so the substance is asserted directly).
  const PurityLossRelation flat =
      purity_loss_relation_check(commuting_state(), commuting_generator(), 0.01);
  CHECK(flat.lhs == 0.0);
  CHECK(std::abs(flat.rhs) <= 1e-9);

  CHECK_THROWS_AS(
      static_cast<void>(purity_loss_relation_check(plus_state(), sigma_z_generator(), 0.2)),
      Error);
}

TEST_CASE("commutator and trace closed forms agree") {
  Rng rng(59);
  for (int t = 0; t < 50; ++t) {
    const int d = 2 + static_cast<int>(rng.next_u64() % 7);
    const int rank = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(d));
    const DensityMatrix rho = sample_density(d, rank, rng);
    const HermitianGenerator gen = sample_hermitian(d, rng);
    CHECK(std::abs(subqfi_closed(rho, gen) - oracles::subqfi_trace_form(rho, gen)) <= 1e-10);
  }
}

TEST_CASE("degenerate spectra are handled basis-independently") {
  // (0.4, 0.4, 0.2): any orthonormal completion of the degenerate subspace
  // must give the same values.
  Rng rng(61);
  RealVector lambda(3);
  lambda << 0.4, 0.4, 0.2;
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix rho = DensityMatrix::from_spectrum(lambda, sample_unitary(3, rng));
    const HermitianGenerator gen = sample_hermitian(3, rng);
    const double closed = subqfi_closed(rho, gen);
    const double scale = std::max(closed, 1e-12);
    CHECK(std::abs(subqfi_spectral(rho, gen) - closed) / scale <= 1e-7);
    CHECK(std::abs(subqfi_nsld(rho, gen).value - closed) / scale <= 1e-7);
    CHECK(std::abs(subqfi_fd(rho, gen, 1e-3, true) - closed) / scale <= 1e-5);
  }
}

TEST_CASE("route equivalence on random full-rank instances") {
  Rng rng(41);
  for (int d : {2, 3, 4, 8}) {
    for (int t = 0; t < 50; ++t) {
      const DensityMatrix rho = sample_density(d, d, rng);
      const HermitianGenerator gen = sample_hermitian(d, rng);
      const double closed = subqfi_closed(rho, gen);
      const double scale = std::max(closed, 1e-12);
      CHECK(std::abs(subqfi_spectral(rho, gen) - closed) / scale <= 1e-7);
      CHECK(std::abs(subqfi_nsld(rho, gen).value - closed) / scale <= 1e-7);
      CHECK(std::abs(subqfi_fd(rho, gen, 1e-3, true) - closed) / scale <= 1e-5);
      CHECK(std::abs(hs_curvature(rho, gen, 1e-3) - closed) / scale <= 1e-5);
    }
  }
}

TEST_CASE("theta independence and convexity") {
  Rng rng(43);
  for (int t = 0; t < 30; ++t) {
    const DensityMatrix rho = sample_density(3, 3, rng);
    const HermitianGenerator gen = sample_hermitian(3, rng);
    const double theta = 6.283185307179586 * rng.uniform();
    CHECK(std::abs(subqfi_closed(PhaseEncoding(gen, theta).evolve(rho), gen) -
                   subqfi_closed(rho, gen)) <= 1e-9);
  }

  for (int t = 0; t < 30; ++t) {
    const HermitianGenerator gen = sample_hermitian(3, rng);
    double w0 = rng.uniform(), w1 = rng.uniform(), w2 = rng.uniform();
    const double total = w0 + w1 + w2;
    w0 /= total;
    w1 /= total;
    w2 /= total;
    const DensityMatrix r0 = sample_density(3, 3, rng);
    const DensityMatrix r1 = sample_density(3, 2, rng);
    const DensityMatrix r2 = sample_density(3, 1, rng);
    const DensityMatrix mix = DensityMatrix::validated(
        w0 * r0.matrix() + w1 * r1.matrix() + w2 * r2.matrix());
    const double rhs = w0 * subqfi_closed(r0, gen) + w1 * subqfi_closed(r1, gen) +
                       w2 * subqfi_closed(r2, gen);
    CHECK(subqfi_closed(mix, gen) <= rhs + 1e-9);
  }
}

TEST_CASE("bipartite identities") {
  Rng rng(47);
  const ComplexMatrix eye = ComplexMatrix::Identity(2, 2);
  for (int t = 0; t < 50; ++t) {
    const DensityMatrix a = sample_density(2, 1 + static_cast<int>(rng.next_u64() % 2), rng);
    const DensityMatrix b = sample_density(2, 1 + static_cast<int>(rng.next_u64() % 2), rng);
    const HermitianGenerator ha = sample_hermitian(2, rng);
    const HermitianGenerator hb = sample_hermitian(2, rng);

    const HermitianGenerator joint =
        HermitianGenerator::validated(kron(ha.matrix(), eye) + kron(eye, hb.matrix()));
    const DensityMatrix product = DensityMatrix::validated(kron(a.matrix(), b.matrix()));
    const double split =
        purity(a) * subqfi_closed(b, hb) + purity(b) * subqfi_closed(a, ha);
    CHECK(std::abs(subqfi_closed(product, joint) - split) <= 1e-8);

    const DensityMatrix joint_state = sample_density(4, 1 + static_cast<int>(rng.next_u64() % 4), rng);
    const HermitianGenerator h_local = HermitianGenerator::validated(kron(ha.matrix(), eye));
    const DensityMatrix reduced = partial_trace(joint_state, 2, 2, Subsystem::A);
    CHECK(subqfi_closed(joint_state, h_local) >= subqfi_closed(reduced, ha) / 2.0 - 1e-9);
  }
}

TEST_CASE("pure-state saturation and qubit coincidence") {
  Rng rng(53);
  for (int t = 0; t < 100; ++t) {
    const int d = 2 + static_cast<int>(rng.next_u64() % 7);
    const DensityMatrix pure = sample_density(d, 1, rng);
    const HermitianGenerator gen = sample_hermitian(d, rng);
    CHECK(std::abs(qfi_spectral(pure, gen).value - subqfi_closed(pure, gen)) <= 1e-8);
  }
  for (int t = 0; t < 100; ++t) {
    const DensityMatrix rho = sample_density(2, 2, rng);
    const HermitianGenerator gen = sample_hermitian(2, rng);
    CHECK(std::abs(qfi_spectral(rho, gen).value - subqfi_closed(rho, gen)) <= 1e-8);
  }
}
