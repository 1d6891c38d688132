// Copyright 2026 The prqc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "prqc/ensembles.hpp"
#include "prqc/pauli.hpp"
#include "prqc/statevector.hpp"

namespace prqc {

/// One pseudo-random-state circuit realization: starting from |0...0>,
/// every iteration draws an independent gate per qubit from the ensemble,
/// applies the single-qubit layer, then one CZ per topology edge.
struct CircuitConfig {
  int n = 1;
  int iterations = 0;
  GateEnsemble ensemble = GateEnsemble::haar();
  Topology topology;
  /// When true the CZ layer precedes the single-qubit layer each iteration.
  bool cz_first = false;

  void validate() const;
};

/// Advances psi by one iteration, drawing n gates from rng (qubit 0 first).
void pr_iteration(StateVector& psi, const CircuitConfig& config, Rng& rng);

/// Runs the full circuit, invoking on_snapshot(l, state) for l = 0 (the
/// initial state) through config.iterations.
void run_pr_circuit(const CircuitConfig& config, Rng& rng,
                    const std::function<void(int, const StateVector&)>& on_snapshot);

/// Convenience wrapper returning the final state only.
StateVector run_pr_circuit(const CircuitConfig& config, Rng& rng);

/// Limit for the 4^n sweep below.
inline constexpr int max_pauli_coefficient_qubits = 8;

/// All 4^n squared, normalized Pauli amplitudes of a pure state:
/// entry at pauli_index(P) is <psi|P|psi>^2 / 2^n. The entries sum to 1 and
/// the identity entry is exactly 1/2^n.
std::vector<double> pauli_sq_coefficients(const StateVector& psi);

}  // namespace prqc
