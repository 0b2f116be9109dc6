#pragma once

// Shared hand-built fixtures. Values asserted against these are either exact
// or frozen from the independent oracles in oracles.hpp.

#include "subqfi/states.hpp"

namespace fixtures {

using subqfi::Complex;
using subqfi::ComplexMatrix;
using subqfi::DensityMatrix;
using subqfi::HermitianGenerator;

inline ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline DensityMatrix plus_state() {
  ComplexMatrix m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  return DensityMatrix::validated(m);
}

inline DensityMatrix ket0_state() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  return DensityMatrix::validated(m);
}

inline DensityMatrix ket1_state() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(1, 1) = 1.0;
  return DensityMatrix::validated(m);
}

inline DensityMatrix maximally_mixed(int d) {
  return DensityMatrix::validated(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

// 0.75 |+><+| + 0.25 |-><-|, i.e. diag(0.75, 0.25) in the sigma_x eigenbasis.
inline DensityMatrix x_basis_mixed() {
  ComplexMatrix m(2, 2);
  m << 0.5, 0.25, 0.25, 0.5;
  return DensityMatrix::validated(m);
}

// diag(0.5, 0.3, 0.2) with the tridiagonal hopping generator.
inline DensityMatrix qutrit_state() {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = 0.5;
  m(1, 1) = 0.3;
  m(2, 2) = 0.2;
  return DensityMatrix::validated(m);
}

inline HermitianGenerator qutrit_hopping() {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 1) = m(1, 0) = m(1, 2) = m(2, 1) = 1.0;
  return HermitianGenerator::validated(m);
}

// Simultaneously diagonal pair: the orbit is a fixed point.
inline DensityMatrix commuting_state() {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = 0.6;
  m(1, 1) = 0.3;
  m(2, 2) = 0.1;
  return DensityMatrix::validated(m);
}

inline HermitianGenerator commuting_generator() {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 0.5;
  m(2, 2) = -1.0;
  return HermitianGenerator::validated(m);
}

inline HermitianGenerator sigma_z_generator() {
  return HermitianGenerator::validated(pauli_z());
}

inline HermitianGenerator qutrit_diag_generator() {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = 1.0;
  m(2, 2) = -1.0;
  return HermitianGenerator::validated(m);
}

// Two-qubit Bell state (|00> + |11>)/sqrt(2).
inline DensityMatrix bell_state() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
  return DensityMatrix::validated(m);
}

}  // namespace fixtures
