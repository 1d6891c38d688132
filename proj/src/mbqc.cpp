// Copyright 2026 The prqc Authors
// SPDX-License-Identifier: Apache-2.0
#include "prqc/mbqc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "prqc/errors.hpp"

namespace prqc {

namespace {

constexpr double kSqrtHalf = 0.70710678118654752440;

void check_edges(int rows, int columns,
                 const std::vector<std::vector<std::pair<int, int>>>& edges) {
  if (static_cast<int>(edges.size()) != columns) {
    throw std::invalid_argument(
        "pattern: vertical_edges must have one entry per column");
  }
  for (const auto& column : edges) {
    std::pair<int, int> prev{-1, -1};
    for (const auto& e : column) {
      if (e.first < 0 || e.second >= rows || e.first >= e.second) {
        throw std::invalid_argument(
            "pattern: vertical edge out of range or not canonical");
      }
      if (!(prev < e)) {
        throw std::invalid_argument(
            "pattern: vertical edges must be sorted and unique");
      }
      prev = e;
    }
  }
}

}  // namespace

void ClusterPattern::validate() const {
  if (rows < 1) throw std::invalid_argument("pattern: rows must be >= 1");
  if (columns < 1) throw std::invalid_argument("pattern: columns must be >= 1");
  if (2 * rows > max_statevector_qubits && columns > 1) {
    throw CapacityError("pattern: streaming register 2*" +
                        std::to_string(rows) + " exceeds the dense limit of " +
                        std::to_string(max_statevector_qubits));
  }
  check_edges(rows, columns, vertical_edges);
  if (static_cast<int>(angles.size()) != columns - 1) {
    throw std::invalid_argument(
        "pattern: need one angle row per measured column");
  }
  for (const auto& column : angles) {
    if (static_cast<int>(column.size()) != rows) {
      throw std::invalid_argument(
          "pattern: each measured column needs one angle per row");
    }
    for (double a : column) {
      if (!std::isfinite(a)) {
        throw std::invalid_argument("pattern: non-finite angle");
      }
    }
  }
}

int ClusterPattern::iterations() const {
  if (mode == PatternMode::standard) {
    if ((columns - 1) % 3 != 0) {
      throw std::logic_error("standard pattern has a partial block");
    }
    return (columns - 1) / 3;
  }
  return columns - 1;
}

namespace {

ClusterPattern pattern_skeleton(int rows, int iterations, PatternMode mode,
                                const Topology& row_topology) {
  if (rows < 1) throw std::invalid_argument("build_pattern: rows must be >= 1");
  if (iterations < 0) {
    throw std::invalid_argument("build_pattern: iterations must be >= 0");
  }
  if (row_topology.n != rows) {
    throw std::invalid_argument(
        "build_pattern: row topology size does not match rows");
  }
  ClusterPattern p;
  p.rows = rows;
  p.mode = mode;
  p.columns =
      mode == PatternMode::standard ? 3 * iterations + 1 : iterations + 1;
  p.vertical_edges.assign(p.columns, {});
  if (mode == PatternMode::standard) {
    for (int k = 1; k <= iterations; ++k) {
      p.vertical_edges[3 * k] = row_topology.edges;
    }
  } else {
    for (int j = 1; j < p.columns; ++j) {
      p.vertical_edges[j] = row_topology.edges;
    }
  }
  p.angles.assign(p.columns - 1, std::vector<double>(rows, 0.0));
  return p;
}

}  // namespace

ClusterPattern build_pattern(int rows, int iterations, PatternMode mode,
                             AngleSource source, Rng& rng,
                             const Topology& row_topology) {
  ClusterPattern p = pattern_skeleton(rows, iterations, mode, row_topology);
  if (mode == PatternMode::standard) {
    for (int k = 0; k < iterations; ++k) {
      for (int r = 0; r < rows; ++r) {
        EulerAngles e;
        if (source == AngleSource::haar_wire) {
          e = haar_euler_angles(rng);
        } else {
          e.gamma = uniform_angle(rng);
          e.beta = uniform_angle(rng);
          e.alpha = uniform_angle(rng);
        }
        // Teleportation realizes HZ(theta_last) ... HZ(theta_first) =
        // HZ(alpha) X(beta) Z(gamma) when the block's columns carry
        // (gamma, beta, alpha) in measurement order.
        p.angles[3 * k][r] = e.gamma;
        p.angles[3 * k + 1][r] = e.beta;
        p.angles[3 * k + 2][r] = e.alpha;
      }
    }
  } else {
    if (source == AngleSource::haar_wire) {
      throw std::invalid_argument(
          "build_pattern: haar_wire angles require standard mode");
    }
    for (int j = 0; j < p.columns - 1; ++j) {
      for (int r = 0; r < rows; ++r) p.angles[j][r] = uniform_angle(rng);
    }
  }
  p.validate();
  return p;
}

ClusterPattern build_pattern(int rows, int iterations, PatternMode mode,
                             Rng& rng, const Topology& row_topology) {
  return build_pattern(rows, iterations, mode,
                       mode == PatternMode::standard ? AngleSource::haar_wire
                                                     : AngleSource::uniform_site,
                       rng, row_topology);
}

ClusterPattern build_pattern_standard_fixed(
    int rows, const std::vector<std::vector<EulerAngles>>& euler_triples,
    const Topology& row_topology) {
  const int iterations = static_cast<int>(euler_triples.size());
  ClusterPattern p =
      pattern_skeleton(rows, iterations, PatternMode::standard, row_topology);
  for (int k = 0; k < iterations; ++k) {
    if (static_cast<int>(euler_triples[k].size()) != rows) {
      throw std::invalid_argument(
          "build_pattern_standard_fixed: one gate per row required");
    }
    for (int r = 0; r < rows; ++r) {
      const EulerAngles& e = euler_triples[k][r];
      p.angles[3 * k][r] = e.gamma;
      p.angles[3 * k + 1][r] = e.beta;
      p.angles[3 * k + 2][r] = e.alpha;
    }
  }
  p.validate();
  return p;
}

ClusterPattern build_pattern_enhanced_fixed(
    int rows, const std::vector<std::vector<double>>& column_angles,
    const Topology& row_topology) {
  const int iterations = static_cast<int>(column_angles.size());
  ClusterPattern p =
      pattern_skeleton(rows, iterations, PatternMode::enhanced, row_topology);
  for (int j = 0; j < iterations; ++j) {
    if (static_cast<int>(column_angles[j].size()) != rows) {
      throw std::invalid_argument(
          "build_pattern_enhanced_fixed: one angle per row required");
    }
    p.angles[j] = column_angles[j];
  }
  p.validate();
  return p;
}

namespace {

/// Outcome-0 probability of measuring the highest-order qubit in the basis
/// {(|0> + (-1)^m e^{i theta}|1>)/sqrt(2)}, without modifying the state.
double top_qubit_prob0(const std::vector<cplx>& amps, double theta) {
  const std::size_t half = amps.size() / 2;
  const cplx phase = std::polar(1.0, -theta);
  double prob = 0.0;
  for (std::size_t i = 0; i < half; ++i) {
    prob += std::norm((amps[i] + phase * amps[half + i]) * kSqrtHalf);
  }
  return prob;
}

/// Projects the highest-order qubit onto outcome m of the same basis,
/// returning the outcome probability and halving the vector. The caller
/// renormalizes.
double project_top_qubit(std::vector<cplx>& amps, double theta, int m) {
  const std::size_t half = amps.size() / 2;
  const cplx phase = std::polar(1.0, -theta) * (m == 0 ? 1.0 : -1.0);
  double prob = 0.0;
  for (std::size_t i = 0; i < half; ++i) {
    const cplx v = (amps[i] + phase * amps[half + i]) * kSqrtHalf;
    amps[i] = v;
    prob += std::norm(v);
  }
  amps.resize(half);
  return prob;
}

void apply_cz_edges(StateVector& psi,
                    const std::vector<std::pair<int, int>>& edges,
                    int offset) {
  for (const auto& [a, b] : edges) apply_cz(psi, a + offset, b + offset);
}

}  // namespace

ExecutionResult execute_pattern(
    const ClusterPattern& pattern, OutcomePolicy policy, Rng& rng,
    const std::function<void(int, const StateVector&)>& on_column) {
  pattern.validate();
  const int rows = pattern.rows;
  ExecutionResult result;
  result.record.policy = policy;
  result.record.outcomes.assign(pattern.columns - 1,
                                std::vector<std::uint8_t>(rows, 0));
  result.peak_register_qubits = pattern.columns > 1 ? 2 * rows : rows;

  StateVector psi = StateVector::zero_state(rows);
  if (pattern.timing == VerticalTiming::on_arrival || pattern.columns == 1) {
    apply_cz_edges(psi, pattern.vertical_edges[0], 0);
  }
  if (on_column) on_column(1, psi);

  const std::size_t new_dim = std::size_t{1} << rows;
  const double amp_scale = 1.0 / std::sqrt(static_cast<double>(new_dim));
  for (int c = 0; c + 1 < pattern.columns; ++c) {
    // Attach column c+1 in |+>^rows: new column occupies the low bits, the
    // current column moves to the high bits.
    StateVector joint;
    joint.n = 2 * rows;
    joint.amps.assign(new_dim * new_dim, cplx(0.0, 0.0));
    for (std::size_t o = 0; o < new_dim; ++o) {
      const cplx v = psi.amps[o] * amp_scale;
      const std::size_t base = o << rows;
      for (std::size_t p = 0; p < new_dim; ++p) joint.amps[base + p] = v;
    }
    // Horizontal CZ per row: old wire rows + r with new wire r.
    for (int r = 0; r < rows; ++r) apply_cz(joint, rows + r, r);
    if (pattern.timing == VerticalTiming::on_arrival) {
      apply_cz_edges(joint, pattern.vertical_edges[c + 1], 0);
    } else {
      apply_cz_edges(joint, pattern.vertical_edges[c], rows);
    }
    // Measure the old column top row down; the measured wire is always the
    // highest remaining qubit.
    for (int r = rows - 1; r >= 0; --r) {
      const double theta = pattern.angles[c][r];
      int outcome = 0;
      if (policy == OutcomePolicy::sampled) {
        const double p0 = top_qubit_prob0(joint.amps, theta);
        outcome = bernoulli(rng, 1.0 - p0) ? 1 : 0;
      }
      const double prob = project_top_qubit(joint.amps, theta, outcome);
      if (prob < 1e-12) {
        throw std::runtime_error(
            "execute_pattern: vanishing outcome probability at column " +
            std::to_string(c) + ", row " + std::to_string(r));
      }
      const double inv = 1.0 / std::sqrt(prob);
      for (cplx& a : joint.amps) a *= inv;
      joint.n -= 1;
      result.record.outcomes[c][r] = static_cast<std::uint8_t>(outcome);
    }
    psi = std::move(joint);
    const bool is_last = c + 2 == pattern.columns;
    if (is_last && pattern.timing == VerticalTiming::before_measurement) {
      apply_cz_edges(psi, pattern.vertical_edges[pattern.columns - 1], 0);
    }
    if (on_column) on_column(c + 2, psi);
  }
  psi.check_normalized(1e-6);
  result.state = std::move(psi);
  return result;
}

ExecutionResult execute_pattern(
    const ClusterPattern& pattern, OutcomePolicy policy, std::uint64_t seed,
    const std::function<void(int, const StateVector&)>& on_column) {
  Rng rng = make_rng(seed);
  return execute_pattern(pattern, policy, rng, on_column);
}

std::vector<CompiledLayer> compile_to_circuit(
    const ClusterPattern& pattern, const MeasurementRecord& record) {
  pattern.validate();
  if (static_cast<int>(record.outcomes.size()) != pattern.columns - 1) {
    throw std::invalid_argument(
        "compile_to_circuit: record does not match the pattern");
  }
  const int rows = pattern.rows;
  std::vector<CompiledLayer> layers;
  auto push_cz = [&layers](const std::vector<std::pair<int, int>>& edges) {
    if (edges.empty()) return;
    CompiledLayer l;
    l.is_cz = true;
    l.edges = edges;
    layers.push_back(std::move(l));
  };
  auto push_gates = [&layers, rows](const std::vector<SingleQubitGate>& gs) {
    if (!layers.empty() && !layers.back().is_cz) {
      for (int r = 0; r < rows; ++r) {
        layers.back().gates[r] = gs[r].compose(layers.back().gates[r]);
      }
      return;
    }
    CompiledLayer l;
    l.gates = gs;
    layers.push_back(std::move(l));
  };

  const bool arrival = pattern.timing == VerticalTiming::on_arrival;
  if (arrival) push_cz(pattern.vertical_edges[0]);
  for (int c = 0; c + 1 < pattern.columns; ++c) {
    if (static_cast<int>(record.outcomes[c].size()) != rows) {
      throw std::invalid_argument(
          "compile_to_circuit: record does not match the pattern");
    }
    if (!arrival) push_cz(pattern.vertical_edges[c]);
    std::vector<SingleQubitGate> gs;
    gs.reserve(rows);
    for (int r = 0; r < rows; ++r) {
      const double realized =
          pattern.angles[c][r] +
          (record.outcomes[c][r] ? std::numbers::pi : 0.0);
      gs.push_back(make_hz(realized));
    }
    push_gates(gs);
    if (arrival) push_cz(pattern.vertical_edges[c + 1]);
  }
  if (!arrival) push_cz(pattern.vertical_edges[pattern.columns - 1]);
  return layers;
}

StateVector run_compiled(const std::vector<CompiledLayer>& layers, int rows) {
  StateVector psi = StateVector::zero_state(rows);
  for (const CompiledLayer& layer : layers) {
    if (layer.is_cz) {
      for (const auto& [a, b] : layer.edges) apply_cz(psi, a, b);
    } else {
      if (static_cast<int>(layer.gates.size()) != rows) {
        throw std::invalid_argument(
            "run_compiled: gate layer width does not match register");
      }
      for (int r = 0; r < rows; ++r) {
        apply_single_qubit_gate(psi, layer.gates[r], r);
      }
    }
  }
  return psi;
}

std::string serialize_pattern(const ClusterPattern& pattern) {
  pattern.validate();
  std::ostringstream out;
  out << "cluster-pattern v1\n";
  out << "rows " << pattern.rows << "\n";
  out << "columns " << pattern.columns << "\n";
  out << "mode "
      << (pattern.mode == PatternMode::standard ? "standard" : "enhanced")
      << "\n";
  out << "timing "
      << (pattern.timing == VerticalTiming::on_arrival ? "arrival"
                                                       : "before-measure")
      << "\n";
  for (int j = 0; j < pattern.columns; ++j) {
    if (pattern.vertical_edges[j].empty()) continue;
    out << "edges " << j;
    for (const auto& [a, b] : pattern.vertical_edges[j]) {
      out << " " << a << "-" << b;
    }
    out << "\n";
  }
  char buf[64];
  for (int j = 0; j + 1 < pattern.columns; ++j) {
    out << "angles " << j;
    for (int r = 0; r < pattern.rows; ++r) {
      std::snprintf(buf, sizeof buf, " %.17g", pattern.angles[j][r]);
      out << buf;
    }
    out << "\n";
  }
  out << "end\n";
  return out.str();
}

ClusterPattern parse_pattern(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "cluster-pattern v1") {
    throw std::invalid_argument("parse_pattern: missing header");
  }
  ClusterPattern p;
  p.rows = -1;
  p.columns = -1;
  bool saw_mode = false, saw_end = false, dims_ready = false;
  auto require_dims = [&] {
    if (dims_ready) return;
    if (p.rows < 1 || p.columns < 1) {
      throw std::invalid_argument(
          "parse_pattern: rows/columns must precede edges and angles");
    }
    p.vertical_edges.assign(p.columns, {});
    p.angles.assign(p.columns - 1, std::vector<double>(p.rows, 0.0));
    dims_ready = true;
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "rows") {
      ls >> p.rows;
    } else if (key == "columns") {
      ls >> p.columns;
    } else if (key == "mode") {
      std::string m;
      ls >> m;
      if (m == "standard") {
        p.mode = PatternMode::standard;
      } else if (m == "enhanced") {
        p.mode = PatternMode::enhanced;
      } else {
        throw std::invalid_argument("parse_pattern: unknown mode '" + m + "'");
      }
      saw_mode = true;
    } else if (key == "timing") {
      std::string t;
      ls >> t;
      if (t == "arrival") {
        p.timing = VerticalTiming::on_arrival;
      } else if (t == "before-measure") {
        p.timing = VerticalTiming::before_measurement;
      } else {
        throw std::invalid_argument("parse_pattern: unknown timing '" + t +
                                    "'");
      }
    } else if (key == "edges") {
      require_dims();
      int j = -1;
      ls >> j;
      if (j < 0 || j >= p.columns) {
        throw std::invalid_argument("parse_pattern: edge column out of range");
      }
      std::string pair_text;
      while (ls >> pair_text) {
        const auto dash = pair_text.find('-');
        if (dash == std::string::npos) {
          throw std::invalid_argument("parse_pattern: malformed edge '" +
                                      pair_text + "'");
        }
        p.vertical_edges[j].emplace_back(
            std::stoi(pair_text.substr(0, dash)),
            std::stoi(pair_text.substr(dash + 1)));
      }
      ls.clear();  // the pair loop always ends by exhausting the line
    } else if (key == "angles") {
      require_dims();
      int j = -1;
      ls >> j;
      if (j < 0 || j + 1 >= p.columns) {
        throw std::invalid_argument(
            "parse_pattern: angle column out of range");
      }
      for (int r = 0; r < p.rows; ++r) {
        if (!(ls >> p.angles[j][r])) {
          throw std::invalid_argument(
              "parse_pattern: missing angle in column " + std::to_string(j));
        }
      }
    } else if (key == "end") {
      saw_end = true;
      break;
    } else {
      throw std::invalid_argument("parse_pattern: unknown key '" + key + "'");
    }
    if (ls.fail()) {
      throw std::invalid_argument("parse_pattern: malformed line '" + line +
                                  "'");
    }
  }
  if (!saw_mode || !saw_end) {
    throw std::invalid_argument("parse_pattern: incomplete pattern text");
  }
  require_dims();
  p.validate();
  return p;
}

}  // namespace prqc
