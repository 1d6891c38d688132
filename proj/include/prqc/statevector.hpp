// Copyright 2026 The prqc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "prqc/pauli.hpp"

namespace prqc {

using cplx = std::complex<double>;

/// Hard ceiling on register width for dense simulation (16 GiB of
/// amplitudes at 26 qubits would already be prohibitive; 24 is the default
/// working limit and callers may lower it per run).
inline constexpr int max_statevector_qubits = 24;

/// A 2x2 unitary in row-major order: u[0]=u00, u[1]=u01, u[2]=u10, u[3]=u11.
struct SingleQubitGate {
  std::array<cplx, 4> u;

  cplx operator()(int row, int col) const { return u[2 * row + col]; }
  /// Matrix product this * other (this applied after other).
  SingleQubitGate compose(const SingleQubitGate& other) const;
  SingleQubitGate adjoint() const;
  bool is_unitary(double tol = 1e-12) const;
};

/// Dense n-qubit state. Amplitude index bit q (little-endian) is the
/// computational-basis value of qubit q, so |0...0> is index 0.
struct StateVector {
  int n = 0;
  std::vector<cplx> amps;

  static StateVector zero_state(int n);

  std::size_t dim() const { return amps.size(); }
  double norm_sq() const;
  /// Throws if the norm deviates from 1 by more than tol.
  void check_normalized(double tol = 1e-9) const;
};

/// In-place single-qubit gate on qubit q.
void apply_single_qubit_gate(StateVector& psi, const SingleQubitGate& g,
                             int qubit);

/// In-place controlled-Z on the (unordered) qubit pair.
void apply_cz(StateVector& psi, int qubit_a, int qubit_b);

/// Applies one CZ per topology edge (all commute).
void apply_cz_layer(StateVector& psi, const Topology& topology);

/// |<a|b>|^2.
double fidelity(const StateVector& a, const StateVector& b);

/// <psi| P |psi> for a phase-free Pauli word; the result is real.
double pauli_expectation(const StateVector& psi, const PauliString& p);

/// Bloch vector (<X>, <Y>, <Z>) of qubit q.
std::array<double, 3> bloch_vector(const StateVector& psi, int qubit);

}  // namespace prqc
