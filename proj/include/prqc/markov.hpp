// Copyright 2026 The prqc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prqc/ensembles.hpp"
#include "prqc/pauli.hpp"
#include "prqc/rng.hpp"

namespace prqc {

/// Column-stochastic single-site second-moment map: entry (to, from) is the
/// average over the gate ensemble of the squared Bloch transfer
/// (1/2) tr(sigma_to U sigma_from U^dagger) ... squared, plus the trivial
/// identity row/column. size = 4 on the full alphabet {identity, x, y, z},
/// size = 3 on the lumped alphabet {identity, z, xy}.
struct AveragedRotation {
  int size = 4;
  std::array<double, 16> m{};  // row-major size x size block in use

  double at(int to, int from) const { return m[to * size + from]; }
  double& at(int to, int from) { return m[to * size + from]; }
  bool reduced() const { return size == 3; }

  /// Throws unless every column sums to 1 within tol and entries are
  /// non-negative within tol.
  void check_stochastic(double tol = 1e-12) const;
};

/// How a full averaged rotation is obtained.
enum class MomentMethod { analytic, monte_carlo };

/// The exact 4x4 second-moment map of a gate ensemble.
///   haar:        every non-identity letter goes to each of x, y, z with
///                probability 1/3;
///   hz:          z -> x; x and y -> y or z with probability 1/2 each;
///   z_rotation:  z -> z; x and y -> x or y with probability 1/2 each;
///   mixture(c):  c * z_rotation + (1 - c) * hz.
AveragedRotation averaged_rotation(const GateEnsemble& ensemble);

/// Monte Carlo estimate of the same map from `samples` gate draws. Also
/// estimates the cross moments E[M_ab M_cd] for (a,b) != (c,d) row pairs
/// that must vanish; if their magnitude exceeds cross_term_tol a
/// CrossTermError is thrown.
AveragedRotation averaged_rotation_monte_carlo(const GateEnsemble& ensemble,
                                               std::uint64_t samples, Rng& rng,
                                               double cross_term_tol = 1e-2);

/// The lumped 3x3 map with z-survival c:
///   identity -> identity;
///   z  -> z with probability c, else xy;
///   xy -> z with probability (1 - c)/2, else xy.
AveragedRotation reduced_rotation(double c);

/// Collapses a full 4x4 map onto the lumped alphabet. Requires the x and y
/// columns to agree row-wise within tol (LumpabilityError otherwise).
AveragedRotation reduce_rotation(const AveragedRotation& full,
                                 double tol = 1e-9);

enum class ChainSpace { full, reduced };

std::string to_string(ChainSpace space);

/// Upper bound for explicitly stored chains (3^9 = 19683 full columns).
inline constexpr std::uint64_t max_dense_chain_dim = 20000;

/// Explicit sparse transition matrix (compressed sparse column) of one PR
/// iteration on Pauli words: M = P_CZ * (A tensor ... tensor A), acting on
/// column vectors of class masses, indexed little-endian base 4 (full) or
/// base 3 (reduced). Column-stochastic. With remove_identity the
/// all-identity word (index 0) is dropped; the remaining block is still
/// column-stochastic because identity is absorbing-from-nowhere: no
/// non-identity word ever maps into it.
struct TransitionMatrix {
  int n = 1;
  ChainSpace space = ChainSpace::reduced;
  bool identity_removed = false;
  Topology topology;
  /// z-survival parameter of the single-site map when known (reduced
  /// chains and lumpable full chains).
  std::optional<double> c;
  std::uint64_t dim = 0;
  std::vector<std::uint64_t> col_ptr;
  std::vector<std::uint32_t> row_idx;
  std::vector<double> values;

  std::uint64_t nnz() const { return values.size(); }
  /// y = M x.
  void apply(const std::vector<double>& x, std::vector<double>& y) const;
};

/// Builds the explicit chain. Throws CapacityError when the state count
/// exceeds max_dense_chain_dim.
TransitionMatrix build_chain(int n, const AveragedRotation& rotation,
                             const Topology& topology,
                             bool remove_identity = false);

/// Matrix-free application of the same chain, usable far beyond the
/// explicit limit: one single-site contraction per site followed by the CZ
/// permutation gather.
class ChainOperator {
 public:
  ChainOperator(int n, const AveragedRotation& rotation,
                const Topology& topology, bool remove_identity = false);

  std::uint64_t dim() const { return dim_; }
  int n() const { return n_; }
  ChainSpace space() const { return space_; }
  bool identity_removed() const { return identity_removed_; }

  /// y = M x (x is the embedding-ordered vector; with identity removed,
  /// index i corresponds to word index i + 1).
  void apply(const std::vector<double>& x, std::vector<double>& y) const;

 private:
  int n_;
  ChainSpace space_;
  bool identity_removed_;
  AveragedRotation rotation_;
  std::uint64_t full_dim_;  // includes the identity word
  std::uint64_t dim_;
  std::vector<std::uint32_t> cz_perm_;  // word index -> image word index
  mutable std::vector<double> scratch_a_, scratch_b_;
};

/// Mass vector over chain states, always summing to 1. Reduced-space
/// entries carry class-total mass (the summed full-space mass of all
/// 2^(#xy) class members).
struct ChainDistribution {
  int n = 1;
  ChainSpace space = ChainSpace::reduced;
  bool identity_removed = false;
  std::vector<double> p;
};

/// Second-moment mass of |0...0>: uniform over the 2^n words with letters
/// in {identity, z} ({0, z}^n), zero elsewhere. With remove_identity the
/// all-identity entry is dropped and the rest renormalized to sum 1, which
/// preserves the direction of the difference from stationarity.
ChainDistribution initial_distribution(int n, ChainSpace space,
                                       bool remove_identity = false);

/// The Haar fixed point: uniform over non-identity full words; on the
/// reduced alphabet each class carries multiplicity(s) / (4^n - 1). With
/// identity retained the identity keeps its conserved mass 2^-n and the
/// remainder 1 - 2^-n is spread the same way.
ChainDistribution stationary_distribution(int n, ChainSpace space,
                                          bool remove_identity = false);

/// steps + 1 iterates d, M d, ..., M^steps d. After every multiply the
/// total mass is checked: drift beyond 1e-9 from 1 raises MassDriftError
/// (mass is never silently renormalized).
std::vector<ChainDistribution> evolve_distribution(const TransitionMatrix& m,
                                                   const ChainDistribution& d,
                                                   int steps);
std::vector<ChainDistribution> evolve_distribution(const ChainOperator& m,
                                                   const ChainDistribution& d,
                                                   int steps);

enum class GapMethod { dense, iterative };

std::string to_string(GapMethod method);

/// Spectral data of the identity-removed reduced chain.
struct SpectralReport {
  int n = 1;
  double c = 0.0;
  /// Largest eigenvalue modulus (1 for these stochastic blocks).
  double lambda1 = 1.0;
  /// Largest eigenvalue modulus among modes with non-negligible overlap
  /// with the initial difference d0 - pi.
  double lambda2 = 0.0;
  double gap = 0.0;        // lambda1 - lambda2
  double rate = 0.0;       // -ln(1 - gap) = -ln(lambda2) when lambda1 = 1
  GapMethod method = GapMethod::dense;
  int iterations = 0;      // iterative method only
  std::string note;
};

struct SpectralOptions {
  GapMethod method = GapMethod::dense;
  /// Modes are relevant when |w . (d0 - pi)| / (|w| |d0 - pi|) exceeds
  /// this (dense method).
  double overlap_tol = 1e-8;
  /// Iterative method: successive rate-ratio estimates must agree to this
  /// relative tolerance...
  double ratio_tol = 1e-8;
  /// ...for this many consecutive iterations (guards against slow beating
  /// between nearly degenerate modes).
  int stable_window = 5;
  std::uint64_t max_iterations = 100000;
};

/// Convergence rate of the Pauli-mass chain toward stationarity for the
/// mixture-family chain with z-survival c on the given topology, measured
/// on the identity-removed reduced space.
///
/// The dense method takes lambda2 over the eigenmodes that overlap the
/// initial difference d0 - pi. The iterative method power-iterates that
/// difference directly; since d0 and pi are invariant under every site
/// relabeling that maps the coupling graph onto itself, each iterate is
/// re-projected onto that invariant sector, which keeps rounding noise
/// from re-exciting excluded modes whose moduli can exceed the physical
/// decay rate.
SpectralReport spectral_gap(int n, double c, const Topology& topology,
                            const SpectralOptions& options = {});

struct GapScanRow {
  int n = 1;
  double c = 0.0;
  double gap = 0.0;
  double rate = 0.0;
};

struct GapScan {
  std::vector<GapScanRow> rows;
  double argmax_c = 0.0;
  double max_gap = 0.0;
  /// Gamma(0) / Gamma(c~1/3) when the grid contains c = 0 and a point
  /// within 0.005 of 1/3; the second field is the grid point used.
  std::optional<double> gamma_ratio;
  std::optional<double> gamma_ratio_c;
};

/// Runs spectral_gap over a c grid (rows are computed concurrently).
GapScan gap_scan(int n, const std::vector<double>& c_grid,
                 const Topology& topology, const SpectralOptions& options = {});

/// Plain-text export: one header line
///   n <n> c <c|nan> space <full|reduced> topology <open|closed|explicit>
///   identity <kept|removed>
/// (explicit topologies add an "edges a-b ..." line), followed by one
/// "row col value" triplet per nonzero (column-major, %.17g) — exact
/// round-trip through import_chain.
std::string export_chain(const TransitionMatrix& m);
TransitionMatrix import_chain(const std::string& text);

}  // namespace prqc
