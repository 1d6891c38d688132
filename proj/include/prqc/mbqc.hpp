// Copyright 2026 The prqc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "prqc/ensembles.hpp"
#include "prqc/pauli.hpp"
#include "prqc/rng.hpp"
#include "prqc/statevector.hpp"

namespace prqc {

/// Cluster wiring styles.
///   standard: 3 measured columns per iteration; vertical CZ edges only at
///             the junction columns 3k, so each iteration teleports one
///             arbitrary single-qubit gate HZ(alpha) X(beta) Z(gamma) per
///             row followed by one CZ layer.
///   enhanced: every measured column is an iteration; vertical edges at
///             every column past the first, realizing HZ(theta) per row
///             plus a CZ layer per column.
enum class PatternMode { standard, enhanced };

/// When a column's vertical CZ edges act during streaming execution.
///   on_arrival:         as soon as the column is attached (default; the
///                       compiled circuit then applies single-qubit layers
///                       before each CZ layer, matching the circuit model).
///   before_measurement: right before the column is measured; edges of the
///                       final (output) column are applied to the output
///                       register at the end.
/// The two choices coincide for standard-mode patterns.
enum class VerticalTiming { on_arrival, before_measurement };

/// Measurement outcome handling.
///   sampled:     Born-rule outcomes from the execution seed;
///   forced_zero: every outcome projected to 0 (and renormalized), so the
///                realized gates carry the pattern angles themselves.
enum class OutcomePolicy { sampled, forced_zero };

/// How build_pattern draws random measurement angles.
///   haar_wire:    per iteration and row, Euler angles distributed so the
///                 teleported gate HZ(alpha) X(beta) Z(gamma) is Haar
///                 (standard mode only). Independently uniform angles would
///                 NOT give Haar gates: they average to a second-moment
///                 z-survival of 1/4 instead of 1/3.
///   uniform_site: every measured site gets an independent uniform angle
///                 in [0, 2 pi).
enum class AngleSource { haar_wire, uniform_site };

/// A rows x columns cluster layout with per-site measurement angles.
/// Column j is measured for j < columns - 1; the last column is the output
/// register. Horizontal edges (row wires) are implicit; vertical edges are
/// listed per column.
struct ClusterPattern {
  int rows = 1;
  int columns = 1;
  PatternMode mode = PatternMode::standard;
  VerticalTiming timing = VerticalTiming::on_arrival;
  /// vertical_edges[j] = intra-column CZ edges of column j, canonical order.
  std::vector<std::vector<std::pair<int, int>>> vertical_edges;
  /// angles[j][r] = measurement angle of site (row r, column j), for
  /// j < columns - 1.
  std::vector<std::vector<double>> angles;

  void validate() const;
  int iterations() const;
  bool operator==(const ClusterPattern&) const = default;
};

/// Random-angle pattern for `iterations` PR iterations on `rows` wires.
/// Standard mode: 3*iterations + 1 columns, junction-column edges, and
/// haar_wire angles by default. Enhanced mode: iterations + 1 columns,
/// edges at every column past the first, uniform_site angles (haar_wire is
/// rejected: enhanced sites teleport a single HZ, which cannot be Haar).
/// Vertical edges connect rows per `row_topology`.
ClusterPattern build_pattern(int rows, int iterations, PatternMode mode,
                             AngleSource source, Rng& rng,
                             const Topology& row_topology);
/// Default angle source for the mode (haar_wire / uniform_site).
ClusterPattern build_pattern(int rows, int iterations, PatternMode mode,
                             Rng& rng, const Topology& row_topology);

/// Standard-mode pattern with fixed gates: euler_triples[k][r] is the gate
/// HZ(alpha) X(beta) Z(gamma) teleported on row r in iteration k.
ClusterPattern build_pattern_standard_fixed(
    int rows, const std::vector<std::vector<EulerAngles>>& euler_triples,
    const Topology& row_topology);

/// Enhanced-mode pattern with fixed per-column angles:
/// column_angles[j][r] is the angle of site (r, j), one inner vector per
/// measured column.
ClusterPattern build_pattern_enhanced_fixed(
    int rows, const std::vector<std::vector<double>>& column_angles,
    const Topology& row_topology);

/// Per-site measurement outcomes of one execution (outcomes[j][r] in
/// {0, 1} for measured columns j).
struct MeasurementRecord {
  OutcomePolicy policy = OutcomePolicy::sampled;
  std::vector<std::vector<std::uint8_t>> outcomes;
};

struct ExecutionResult {
  StateVector state;
  MeasurementRecord record;
  /// Largest simultaneously simulated register: rows when the pattern has a
  /// single column, 2 * rows otherwise (never the full rows * columns).
  int peak_register_qubits = 0;
};

/// Streams the pattern column by column: attach the next column of |+>
/// sites, apply horizontal CZs (and vertical CZs per the timing), measure
/// the old column top row down in the bases
/// {(|0> + (-1)^m e^{i theta}|1>)/sqrt(2)}, renormalizing after each
/// projection. on_column(columns_used, state), when given, observes the
/// current column's n-qubit state for columns_used = 1 (the initial
/// column) through pattern.columns.
ExecutionResult execute_pattern(
    const ClusterPattern& pattern, OutcomePolicy policy, Rng& rng,
    const std::function<void(int, const StateVector&)>& on_column = {});
ExecutionResult execute_pattern(
    const ClusterPattern& pattern, OutcomePolicy policy, std::uint64_t seed,
    const std::function<void(int, const StateVector&)>& on_column = {});

/// One layer of the compiled circuit: either a CZ layer over edges or one
/// single-qubit gate per row.
struct CompiledLayer {
  bool is_cz = false;
  std::vector<SingleQubitGate> gates;         // per row; empty for CZ layers
  std::vector<std::pair<int, int>> edges;     // empty for gate layers
};

/// The circuit-model equivalent of an executed pattern: per measured column
/// the teleported gates HZ(theta + m pi), with vertical CZ layers placed
/// per the pattern timing, adjacent single-qubit layers merged. Applying
/// the result to |0...0> reproduces execute_pattern's output state exactly
/// (up to global phase).
std::vector<CompiledLayer> compile_to_circuit(const ClusterPattern& pattern,
                                              const MeasurementRecord& record);

/// Applies compiled layers to |0...0> on `rows` qubits.
StateVector run_compiled(const std::vector<CompiledLayer>& layers, int rows);

/// Plain-text round-trippable encoding (rows, columns, mode, timing,
/// per-column vertical edges, per-site angles with full precision).
std::string serialize_pattern(const ClusterPattern& pattern);
ClusterPattern parse_pattern(const std::string& text);

}  // namespace prqc
