// Copyright 2026 The prqc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace prqc {

/// Single-site Pauli label. Numeric values define the base-4 digit used by
/// string indexing, with qubit 0 as the least significant digit.
enum class PauliLabel : std::uint8_t { identity = 0, x = 1, y = 2, z = 3 };

/// Single-site label of the lumped 3-letter alphabet {identity, z, xy},
/// where xy stands for "x or y". Numeric values define the base-3 digit.
enum class ReducedLabel : std::uint8_t { identity = 0, z = 1, xy = 2 };

char to_char(PauliLabel l);
char to_char(ReducedLabel l);
PauliLabel pauli_label_from_char(char ch);
ReducedLabel reduced_label_from_char(char ch);

/// An n-site Pauli word (phase-free: conjugation by CZ and the averaged
/// second-moment dynamics never need the sign).
struct PauliString {
  std::vector<PauliLabel> labels;

  int n() const { return static_cast<int>(labels.size()); }
  bool operator==(const PauliString&) const = default;
};

/// An n-site word over the lumped alphabet.
struct ReducedString {
  std::vector<ReducedLabel> labels;

  int n() const { return static_cast<int>(labels.size()); }
  bool operator==(const ReducedString&) const = default;
};

/// Little-endian base-4 index of a Pauli word: site 0 is the least
/// significant digit. Index 0 is the all-identity word.
std::uint64_t pauli_index(const PauliString& s);
PauliString pauli_from_index(int n, std::uint64_t index);

/// Little-endian base-3 index of a reduced word.
std::uint64_t reduced_index(const ReducedString& s);
ReducedString reduced_from_index(int n, std::uint64_t index);

std::string to_string(const PauliString& s);
std::string to_string(const ReducedString& s);

/// Nearest-neighbour coupling graph of the qubit register.
struct Topology {
  enum class Kind { open_chain, closed_chain, explicit_edges };

  Kind kind = Kind::open_chain;
  int n = 0;
  /// Edges in canonical order: each pair (a, b) with a < b, list sorted.
  std::vector<std::pair<int, int>> edges;

  bool operator==(const Topology&) const = default;
};

/// Linear chain 0-1, 1-2, ..., (n-2)-(n-1). n = 1 has no edges.
Topology open_chain(int n);
/// Ring: the open chain plus the edge (0, n-1). Requires n >= 3.
Topology closed_chain(int n);
/// Arbitrary edge list. Validates indices, rejects self-loops and
/// duplicates, and canonicalizes the order.
Topology explicit_topology(int n, std::vector<std::pair<int, int>> edges);

std::string to_string(Topology::Kind kind);

/// Conjugation of a two-site Pauli pair by CZ (phase dropped):
///   - both labels in {identity, z}: unchanged;
///   - exactly one label in {x, y}: that label is kept, the partner is
///     toggled identity <-> z;
///   - both labels in {x, y}: both toggle x <-> y.
std::pair<PauliLabel, PauliLabel> cz_conjugate_pair(PauliLabel a,
                                                    PauliLabel b);

/// The same map on the lumped alphabet (well-defined because the full map
/// respects the {x, y} lump):
///   - both in {identity, z}: unchanged;
///   - exactly one xy: partner toggles identity <-> z;
///   - both xy: unchanged.
std::pair<ReducedLabel, ReducedLabel> cz_conjugate_pair_reduced(
    ReducedLabel a, ReducedLabel b);

/// Applies cz_conjugate_pair across every edge of the topology. All CZs
/// commute, so edge order does not matter; edges are processed in canonical
/// order for determinism.
PauliString apply_cz_layer(const PauliString& s, const Topology& topology);
ReducedString apply_cz_layer_reduced(const ReducedString& s,
                                     const Topology& topology);

/// Collapses x and y onto the xy letter.
ReducedString reduce(const PauliString& s);

/// All 2^(#xy) full words in the class of a reduced word, in increasing
/// index order.
std::vector<PauliString> lift_class(const ReducedString& s);

/// Class size 2^(#xy).
std::uint64_t multiplicity(const ReducedString& s);

}  // namespace prqc
