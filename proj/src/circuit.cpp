// Copyright 2026 The prqc Authors
// SPDX-License-Identifier: Apache-2.0
#include "prqc/circuit.hpp"

#include <stdexcept>
#include <string>

#include "prqc/errors.hpp"

namespace prqc {

void CircuitConfig::validate() const {
  if (n < 1) throw std::invalid_argument("circuit needs at least 1 qubit");
  if (iterations < 0) {
    throw std::invalid_argument("iteration count must be non-negative");
  }
  if (topology.n != n) {
    throw std::invalid_argument(
        "topology size does not match qubit count");
  }
  if (n > max_statevector_qubits) {
    throw CapacityError("circuit width " + std::to_string(n) +
                        " exceeds the dense limit of " +
                        std::to_string(max_statevector_qubits));
  }
}

void pr_iteration(StateVector& psi, const CircuitConfig& config, Rng& rng) {
  if (psi.n != config.n) {
    throw std::invalid_argument("state width does not match configuration");
  }
  if (config.cz_first) apply_cz_layer(psi, config.topology);
  for (int q = 0; q < config.n; ++q) {
    apply_single_qubit_gate(psi, sample_from_ensemble(config.ensemble, rng),
                            q);
  }
  if (!config.cz_first) apply_cz_layer(psi, config.topology);
}

void run_pr_circuit(
    const CircuitConfig& config, Rng& rng,
    const std::function<void(int, const StateVector&)>& on_snapshot) {
  config.validate();
  StateVector psi = StateVector::zero_state(config.n);
  if (on_snapshot) on_snapshot(0, psi);
  for (int l = 1; l <= config.iterations; ++l) {
    pr_iteration(psi, config, rng);
    if (on_snapshot) on_snapshot(l, psi);
  }
}

StateVector run_pr_circuit(const CircuitConfig& config, Rng& rng) {
  StateVector out = StateVector::zero_state(config.n);
  run_pr_circuit(config, rng, [&out](int, const StateVector& psi) {
    out = psi;
  });
  return out;
}

std::vector<double> pauli_sq_coefficients(const StateVector& psi) {
  if (psi.n > max_pauli_coefficient_qubits) {
    throw CapacityError(
        "pauli_sq_coefficients: " + std::to_string(psi.n) +
        " qubits exceeds the 4^n sweep limit of " +
        std::to_string(max_pauli_coefficient_qubits));
  }
  const std::uint64_t count = std::uint64_t{1} << (2 * psi.n);
  const double inv_dim = 1.0 / static_cast<double>(psi.dim());
  std::vector<double> out(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    const double e = pauli_expectation(psi, pauli_from_index(psi.n, idx));
    out[idx] = e * e * inv_dim;
  }
  return out;
}

}  // namespace prqc
