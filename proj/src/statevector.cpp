// Copyright 2026 The prqc Authors
// SPDX-License-Identifier: Apache-2.0
#include "prqc/statevector.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "prqc/errors.hpp"

namespace prqc {

SingleQubitGate SingleQubitGate::compose(const SingleQubitGate& other) const {
  const auto& a = u;
  const auto& b = other.u;
  return {{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
           a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]}};
}

SingleQubitGate SingleQubitGate::adjoint() const {
  return {{std::conj(u[0]), std::conj(u[2]), std::conj(u[1]),
           std::conj(u[3])}};
}

bool SingleQubitGate::is_unitary(double tol) const {
  SingleQubitGate p = adjoint().compose(*this);
  return std::abs(p.u[0] - 1.0) <= tol && std::abs(p.u[1]) <= tol &&
         std::abs(p.u[2]) <= tol && std::abs(p.u[3] - 1.0) <= tol;
}

StateVector StateVector::zero_state(int n) {
  if (n < 1) throw std::invalid_argument("zero_state: need at least 1 qubit");
  if (n > max_statevector_qubits) {
    throw CapacityError("zero_state: " + std::to_string(n) +
                        " qubits exceeds the dense limit of " +
                        std::to_string(max_statevector_qubits));
  }
  StateVector psi;
  psi.n = n;
  psi.amps.assign(std::size_t{1} << n, cplx(0.0, 0.0));
  psi.amps[0] = cplx(1.0, 0.0);
  return psi;
}

double StateVector::norm_sq() const {
  double s = 0.0;
  for (const cplx& a : amps) s += std::norm(a);
  return s;
}

void StateVector::check_normalized(double tol) const {
  double d = std::abs(norm_sq() - 1.0);
  if (d > tol) {
    throw std::runtime_error("state norm drifted by " + std::to_string(d));
  }
}

namespace {

void check_qubit(const StateVector& psi, int qubit) {
  if (qubit < 0 || qubit >= psi.n) {
    throw std::out_of_range("qubit index " + std::to_string(qubit) +
                            " out of range for " + std::to_string(psi.n) +
                            " qubits");
  }
}

}  // namespace

void apply_single_qubit_gate(StateVector& psi, const SingleQubitGate& g,
                             int qubit) {
  check_qubit(psi, qubit);
  const std::size_t stride = std::size_t{1} << qubit;
  const std::size_t dim = psi.amps.size();
  const cplx u00 = g.u[0], u01 = g.u[1], u10 = g.u[2], u11 = g.u[3];
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t offset = 0; offset < stride; ++offset) {
      const std::size_t i0 = base + offset;
      const std::size_t i1 = i0 + stride;
      const cplx a0 = psi.amps[i0];
      const cplx a1 = psi.amps[i1];
      psi.amps[i0] = u00 * a0 + u01 * a1;
      psi.amps[i1] = u10 * a0 + u11 * a1;
    }
  }
}

void apply_cz(StateVector& psi, int qubit_a, int qubit_b) {
  check_qubit(psi, qubit_a);
  check_qubit(psi, qubit_b);
  if (qubit_a == qubit_b) {
    throw std::invalid_argument("apply_cz: qubits must be distinct");
  }
  const std::size_t mask =
      (std::size_t{1} << qubit_a) | (std::size_t{1} << qubit_b);
  const std::size_t dim = psi.amps.size();
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & mask) == mask) psi.amps[i] = -psi.amps[i];
  }
}

void apply_cz_layer(StateVector& psi, const Topology& topology) {
  if (topology.n != psi.n) {
    throw std::invalid_argument(
        "apply_cz_layer: topology size does not match register");
  }
  for (const auto& [a, b] : topology.edges) apply_cz(psi, a, b);
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.n != b.n) {
    throw std::invalid_argument("fidelity: qubit counts differ");
  }
  cplx overlap(0.0, 0.0);
  for (std::size_t i = 0; i < a.amps.size(); ++i) {
    overlap += std::conj(a.amps[i]) * b.amps[i];
  }
  return std::norm(overlap);
}

double pauli_expectation(const StateVector& psi, const PauliString& p) {
  if (p.n() != psi.n) {
    throw std::invalid_argument(
        "pauli_expectation: word length does not match register");
  }
  // P|i> = phase * |i ^ flip_mask>; accumulate <psi|P|psi> directly.
  std::size_t flip_mask = 0;
  std::size_t z_mask = 0;   // sites contributing (-1)^bit
  std::size_t y_mask = 0;   // sites contributing the extra i / -i
  for (int q = 0; q < p.n(); ++q) {
    switch (p.labels[q]) {
      case PauliLabel::identity: break;
      case PauliLabel::x: flip_mask |= std::size_t{1} << q; break;
      case PauliLabel::y:
        flip_mask |= std::size_t{1} << q;
        y_mask |= std::size_t{1} << q;
        break;
      case PauliLabel::z: z_mask |= std::size_t{1} << q; break;
    }
  }
  const int y_count = static_cast<int>(std::popcount(y_mask));
  // Y|0> = i|1>, Y|1> = -i|0>. For basis state |i>, acting with the word
  // gives phase i^{y_count} * (-1)^{popcount(i & (z_mask | y_mask))} on
  // |i ^ flip_mask>.
  static const cplx i_pow[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0),
                                cplx(0, -1)};
  const cplx base_phase = i_pow[y_count % 4];
  const std::size_t sign_mask = z_mask | y_mask;
  cplx acc(0.0, 0.0);
  for (std::size_t i = 0; i < psi.amps.size(); ++i) {
    const cplx a = psi.amps[i];
    if (a == cplx(0.0, 0.0)) continue;
    const std::size_t j = i ^ flip_mask;
    const int sign = std::popcount(i & sign_mask) & 1 ? -1 : 1;
    acc += std::conj(psi.amps[j]) * (base_phase * (sign > 0 ? a : -a));
  }
  return acc.real();
}

std::array<double, 3> bloch_vector(const StateVector& psi, int qubit) {
  check_qubit(psi, qubit);
  const std::size_t stride = std::size_t{1} << qubit;
  const std::size_t dim = psi.amps.size();
  double x = 0.0, y = 0.0, z = 0.0;
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t offset = 0; offset < stride; ++offset) {
      const std::size_t i0 = base + offset;
      const std::size_t i1 = i0 + stride;
      const cplx a0 = psi.amps[i0];
      const cplx a1 = psi.amps[i1];
      const cplx cross = std::conj(a0) * a1;
      x += 2.0 * cross.real();
      y += 2.0 * cross.imag();
      z += std::norm(a0) - std::norm(a1);
    }
  }
  return {x, y, z};
}

}  // namespace prqc
