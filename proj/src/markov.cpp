// Copyright 2026 The prqc Authors
// SPDX-License-Identifier: Apache-2.0
#include "prqc/markov.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "prqc/errors.hpp"
#include "prqc/parallel.hpp"

namespace prqc {

void AveragedRotation::check_stochastic(double tol) const {
  if (size != 3 && size != 4) {
    throw std::invalid_argument("AveragedRotation: size must be 3 or 4");
  }
  for (int col = 0; col < size; ++col) {
    double sum = 0.0;
    for (int row = 0; row < size; ++row) {
      const double v = at(row, col);
      if (v < -tol) {
        throw std::invalid_argument(
            "AveragedRotation: negative entry " + std::to_string(v));
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol) {
      throw std::invalid_argument(
          "AveragedRotation: column " + std::to_string(col) +
          " sums to " + std::to_string(sum));
    }
  }
}

AveragedRotation averaged_rotation(const GateEnsemble& ensemble) {
  AveragedRotation a;
  a.size = 4;
  a.m.fill(0.0);
  a.at(0, 0) = 1.0;
  auto fill_hz = [](AveragedRotation& r, double weight) {
    // H Z(alpha), alpha uniform: z -> x; x, y -> (y or z) equally.
    r.at(1, 3) += weight;
    r.at(2, 1) += weight * 0.5;
    r.at(3, 1) += weight * 0.5;
    r.at(2, 2) += weight * 0.5;
    r.at(3, 2) += weight * 0.5;
  };
  auto fill_zrot = [](AveragedRotation& r, double weight) {
    // Z(alpha), alpha uniform: z -> z; x, y -> (x or y) equally.
    r.at(3, 3) += weight;
    r.at(1, 1) += weight * 0.5;
    r.at(2, 1) += weight * 0.5;
    r.at(1, 2) += weight * 0.5;
    r.at(2, 2) += weight * 0.5;
  };
  switch (ensemble.kind) {
    case GateEnsemble::Kind::haar:
      for (int to = 1; to < 4; ++to) {
        for (int from = 1; from < 4; ++from) a.at(to, from) = 1.0 / 3.0;
      }
      break;
    case GateEnsemble::Kind::hz:
      fill_hz(a, 1.0);
      break;
    case GateEnsemble::Kind::z_rotation:
      fill_zrot(a, 1.0);
      break;
    case GateEnsemble::Kind::mixture:
      fill_zrot(a, ensemble.c);
      fill_hz(a, 1.0 - ensemble.c);
      break;
  }
  a.check_stochastic();
  return a;
}

AveragedRotation averaged_rotation_monte_carlo(const GateEnsemble& ensemble,
                                               std::uint64_t samples, Rng& rng,
                                               double cross_term_tol) {
  if (samples == 0) {
    throw std::invalid_argument("averaged_rotation_monte_carlo: no samples");
  }
  // Bloch transfer entries b[t][f] = (1/2) tr(sigma_t U sigma_f U^dagger);
  // the second moment is E[b^2] entrywise and the cross moments
  // E[b[t][f] b[t'][f]] (same source letter f) must vanish for t != t'.
  double sq[3][3] = {};
  double cross[3][3] = {};  // pairs (t, t') = (0,1), (0,2), (1,2) per f
  for (std::uint64_t s = 0; s < samples; ++s) {
    const SingleQubitGate u = sample_from_ensemble(ensemble, rng);
    // Columns of the Bloch transfer: images of sigma_x, sigma_y, sigma_z.
    double b[3][3];
    const cplx u00 = u.u[0], u01 = u.u[1], u10 = u.u[2], u11 = u.u[3];
    // U sigma U^dagger expressed through matrix entries.
    for (int f = 0; f < 3; ++f) {
      // sigma_f columns applied to (u00 u01; u10 u11).
      cplx m00, m01, m10, m11;  // U sigma_f
      if (f == 0) {
        m00 = u01; m01 = u00; m10 = u11; m11 = u10;
      } else if (f == 1) {
        m00 = cplx(0, 1) * u01; m01 = cplx(0, -1) * u00;
        m10 = cplx(0, 1) * u11; m11 = cplx(0, -1) * u10;
      } else {
        m00 = u00; m01 = -u01; m10 = u10; m11 = -u11;
      }
      // v = (U sigma_f) U^dagger.
      const cplx v00 = m00 * std::conj(u00) + m01 * std::conj(u01);
      const cplx v01 = m00 * std::conj(u10) + m01 * std::conj(u11);
      const cplx v10 = m10 * std::conj(u00) + m11 * std::conj(u01);
      // tr(sigma_x v) = v01 + v10; tr(sigma_y v) = i(v01 - v10);
      // tr(sigma_z v) = v00 - v11 = 2 v00 (traceless).
      b[0][f] = 0.5 * (v01 + v10).real();
      b[1][f] = 0.5 * (cplx(0, 1) * (v01 - v10)).real();
      b[2][f] = v00.real();
    }
    for (int f = 0; f < 3; ++f) {
      for (int t = 0; t < 3; ++t) sq[t][f] += b[t][f] * b[t][f];
      cross[0][f] += b[0][f] * b[1][f];
      cross[1][f] += b[0][f] * b[2][f];
      cross[2][f] += b[1][f] * b[2][f];
    }
  }
  const double inv = 1.0 / static_cast<double>(samples);
  double worst_cross = 0.0;
  for (int f = 0; f < 3; ++f) {
    for (int pair = 0; pair < 3; ++pair) {
      worst_cross = std::max(worst_cross, std::abs(cross[pair][f] * inv));
    }
  }
  if (worst_cross > cross_term_tol) {
    throw CrossTermError(
        "averaged gate moments retain cross terms of magnitude " +
        std::to_string(worst_cross) + " after " + std::to_string(samples) +
        " samples (tolerance " + std::to_string(cross_term_tol) + ")");
  }
  AveragedRotation a;
  a.size = 4;
  a.m.fill(0.0);
  a.at(0, 0) = 1.0;
  for (int f = 0; f < 3; ++f) {
    double col = 0.0;
    for (int t = 0; t < 3; ++t) {
      a.at(t + 1, f + 1) = sq[t][f] * inv;
      col += sq[t][f] * inv;
    }
    // Columns of a Monte Carlo estimate sum to 1 exactly up to rounding
    // because |b column|^2 = 1 for every unitary; renormalize the tiny
    // rounding residue so downstream stochasticity checks stay exact.
    for (int t = 0; t < 3; ++t) a.at(t + 1, f + 1) /= col;
  }
  a.check_stochastic(1e-9);
  return a;
}

AveragedRotation reduced_rotation(double c) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw std::invalid_argument("reduced_rotation: c must lie in [0, 1]");
  }
  AveragedRotation a;
  a.size = 3;
  a.m.fill(0.0);
  a.at(0, 0) = 1.0;
  a.at(1, 1) = c;
  a.at(2, 1) = 1.0 - c;
  a.at(1, 2) = (1.0 - c) / 2.0;
  a.at(2, 2) = (1.0 + c) / 2.0;
  a.check_stochastic();
  return a;
}

AveragedRotation reduce_rotation(const AveragedRotation& full, double tol) {
  if (full.size != 4) {
    throw std::invalid_argument("reduce_rotation: expected a 4x4 map");
  }
  full.check_stochastic(1e-9);
  // Lumpability of {x, y}: the x and y columns must agree row-wise, and
  // with identity preserved the identity row is zero off the identity
  // column.
  for (int to = 0; to < 4; ++to) {
    if (std::abs(full.at(to, 1) - full.at(to, 2)) > tol) {
      throw LumpabilityError(
          "reduce_rotation: x and y columns differ in row " +
          std::to_string(to) + " by " +
          std::to_string(std::abs(full.at(to, 1) - full.at(to, 2))));
    }
  }
  AveragedRotation r;
  r.size = 3;
  r.m.fill(0.0);
  r.at(0, 0) = 1.0;
  r.at(1, 1) = full.at(3, 3);
  r.at(2, 1) = full.at(1, 3) + full.at(2, 3);
  r.at(1, 2) = full.at(3, 1);
  r.at(2, 2) = full.at(1, 1) + full.at(2, 1);
  r.check_stochastic(1e-9);
  return r;
}

namespace {

std::uint64_t int_pow(std::uint64_t base, int exp) {
  std::uint64_t v = 1;
  for (int i = 0; i < exp; ++i) v *= base;
  return v;
}

std::uint64_t chain_dim(int n, ChainSpace space) {
  if (n < 1) throw std::invalid_argument("chain: n must be >= 1");
  const std::uint64_t radix = space == ChainSpace::full ? 4 : 3;
  if (n > (space == ChainSpace::full ? 31 : 40)) {
    throw CapacityError("chain: n too large for 64-bit indexing");
  }
  return int_pow(radix, n);
}

/// Word-index permutation of the CZ layer (an involution on letters, hence
/// a permutation of words).
std::vector<std::uint32_t> cz_permutation(int n, ChainSpace space,
                                          const Topology& topology) {
  const std::uint64_t dim = chain_dim(n, space);
  if (dim > (std::uint64_t{1} << 32)) {
    throw CapacityError("chain: dimension exceeds 32-bit state indices");
  }
  std::vector<std::uint32_t> perm(dim);
  if (space == ChainSpace::full) {
    for (std::uint64_t i = 0; i < dim; ++i) {
      perm[i] = static_cast<std::uint32_t>(
          pauli_index(apply_cz_layer(pauli_from_index(n, i), topology)));
    }
  } else {
    for (std::uint64_t i = 0; i < dim; ++i) {
      perm[i] = static_cast<std::uint32_t>(reduced_index(
          apply_cz_layer_reduced(reduced_from_index(n, i), topology)));
    }
  }
  return perm;
}

}  // namespace

TransitionMatrix build_chain(int n, const AveragedRotation& rotation,
                             const Topology& topology, bool remove_identity) {
  const ChainSpace space =
      rotation.size == 4 ? ChainSpace::full : ChainSpace::reduced;
  rotation.check_stochastic(1e-9);
  if (topology.n != n) {
    throw std::invalid_argument("chain: topology size does not match n");
  }
  const std::uint64_t full_dim = chain_dim(n, space);
  if (full_dim > max_dense_chain_dim) {
    throw CapacityError("build_chain: " + std::to_string(full_dim) +
                        " states exceed the explicit limit of " +
                        std::to_string(max_dense_chain_dim) +
                        "; use ChainOperator instead");
  }
  const std::vector<std::uint32_t> perm = cz_permutation(n, space, topology);
  const int radix = space == ChainSpace::full ? 4 : 3;

  TransitionMatrix m;
  m.n = n;
  m.space = space;
  m.identity_removed = remove_identity;
  m.topology = topology;
  if (space == ChainSpace::reduced) {
    m.c = rotation.at(1, 1);
  } else {
    // Record c for lumpable full maps; leave empty otherwise.
    try {
      m.c = reduce_rotation(rotation).at(1, 1);
    } catch (const LumpabilityError&) {
      m.c.reset();
    }
  }
  m.dim = remove_identity ? full_dim - 1 : full_dim;

  // Column `from` of M: expand the product of per-site columns (sparse
  // outer product), then route each target word through the CZ permutation.
  // The identity word maps only to itself, and no other word reaches it,
  // so removal just drops row/column 0.
  const std::uint64_t first = remove_identity ? 1 : 0;
  m.col_ptr.assign(m.dim + 1, 0);
  std::vector<std::pair<std::uint32_t, double>> column;
  std::vector<std::pair<std::uint64_t, double>> frontier, next;
  for (std::uint64_t from = first; from < full_dim; ++from) {
    column.clear();
    frontier.assign(1, {0, 1.0});
    std::uint64_t digits = from;
    std::uint64_t place = 1;
    for (int site = 0; site < n; ++site) {
      const int letter = static_cast<int>(digits % radix);
      digits /= radix;
      next.clear();
      for (int to = 0; to < radix; ++to) {
        const double w = rotation.at(to, letter);
        if (w == 0.0) continue;
        for (const auto& [word, mass] : frontier) {
          next.emplace_back(word + place * to, mass * w);
        }
      }
      frontier.swap(next);
      place *= radix;
    }
    for (const auto& [word, mass] : frontier) {
      const std::uint32_t target = perm[word];
      column.emplace_back(remove_identity ? target - 1 : target, mass);
    }
    std::sort(column.begin(), column.end());
    // Merge duplicates (distinct local targets can land on one word only
    // through the permutation of distinct words, so none arise; keep the
    // merge for safety).
    const std::uint64_t col_index = from - first;
    for (std::size_t i = 0; i < column.size(); ++i) {
      if (i > 0 && column[i].first == column[i - 1].first) {
        m.values.back() += column[i].second;
      } else {
        m.row_idx.push_back(column[i].first);
        m.values.push_back(column[i].second);
      }
    }
    m.col_ptr[col_index + 1] = m.row_idx.size();
  }
  return m;
}

void TransitionMatrix::apply(const std::vector<double>& x,
                             std::vector<double>& y) const {
  if (x.size() != dim) {
    throw std::invalid_argument("TransitionMatrix::apply: dimension mismatch");
  }
  y.assign(dim, 0.0);
  for (std::uint64_t col = 0; col < dim; ++col) {
    const double xv = x[col];
    if (xv == 0.0) continue;
    for (std::uint64_t k = col_ptr[col]; k < col_ptr[col + 1]; ++k) {
      y[row_idx[k]] += values[k] * xv;
    }
  }
}

ChainOperator::ChainOperator(int n, const AveragedRotation& rotation,
                             const Topology& topology, bool remove_identity)
    : n_(n),
      space_(rotation.size == 4 ? ChainSpace::full : ChainSpace::reduced),
      identity_removed_(remove_identity),
      rotation_(rotation) {
  rotation_.check_stochastic(1e-9);
  if (topology.n != n) {
    throw std::invalid_argument("chain: topology size does not match n");
  }
  full_dim_ = chain_dim(n, space_);
  dim_ = remove_identity ? full_dim_ - 1 : full_dim_;
  cz_perm_ = cz_permutation(n, space_, topology);
}

void ChainOperator::apply(const std::vector<double>& x,
                          std::vector<double>& y) const {
  if (x.size() != dim_) {
    throw std::invalid_argument("ChainOperator::apply: dimension mismatch");
  }
  const int radix = space_ == ChainSpace::full ? 4 : 3;
  // Embed into the full index space (identity slot 0 stays empty when
  // removed: nothing flows into or out of it).
  scratch_a_.assign(full_dim_, 0.0);
  if (identity_removed_) {
    std::copy(x.begin(), x.end(), scratch_a_.begin() + 1);
  } else {
    std::copy(x.begin(), x.end(), scratch_a_.begin());
  }
  // Local map: contract each site index with the rotation.
  scratch_b_.assign(full_dim_, 0.0);
  std::uint64_t stride = 1;
  for (int site = 0; site < n_; ++site) {
    const std::uint64_t block = stride * radix;
    for (std::uint64_t base = 0; base < full_dim_; base += block) {
      for (std::uint64_t offset = 0; offset < stride; ++offset) {
        double in[4];
        for (int l = 0; l < radix; ++l) {
          in[l] = scratch_a_[base + offset + stride * l];
        }
        for (int to = 0; to < radix; ++to) {
          double acc = 0.0;
          for (int from = 0; from < radix; ++from) {
            acc += rotation_.at(to, from) * in[from];
          }
          scratch_b_[base + offset + stride * to] = acc;
        }
      }
    }
    scratch_a_.swap(scratch_b_);
    stride = block;
  }
  // CZ permutation gather.
  scratch_b_.assign(full_dim_, 0.0);
  for (std::uint64_t i = 0; i < full_dim_; ++i) {
    scratch_b_[cz_perm_[i]] += scratch_a_[i];
  }
  y.resize(dim_);
  if (identity_removed_) {
    std::copy(scratch_b_.begin() + 1, scratch_b_.end(), y.begin());
  } else {
    std::copy(scratch_b_.begin(), scratch_b_.end(), y.begin());
  }
}

ChainDistribution initial_distribution(int n, ChainSpace space,
                                       bool remove_identity) {
  const std::uint64_t full_dim = chain_dim(n, space);
  ChainDistribution d;
  d.n = n;
  d.space = space;
  d.identity_removed = remove_identity;
  d.p.assign(remove_identity ? full_dim - 1 : full_dim, 0.0);
  const std::uint64_t support = std::uint64_t{1} << n;  // {identity, z}^n
  const double mass = remove_identity
                          ? 1.0 / static_cast<double>(support - 1)
                          : 1.0 / static_cast<double>(support);
  // Words over {identity, z} have digits {0, radix - 1}... but z is digit
  // 3 (full) or 1 (reduced); build indices by binary expansion.
  const std::uint64_t radix = space == ChainSpace::full ? 4 : 3;
  const std::uint64_t z_digit = space == ChainSpace::full ? 3 : 1;
  for (std::uint64_t bits = remove_identity ? 1 : 0; bits < support; ++bits) {
    std::uint64_t index = 0;
    std::uint64_t place = 1;
    for (int site = 0; site < n; ++site) {
      if ((bits >> site) & 1) index += place * z_digit;
      place *= radix;
    }
    d.p[remove_identity ? index - 1 : index] = mass;
  }
  return d;
}

ChainDistribution stationary_distribution(int n, ChainSpace space,
                                          bool remove_identity) {
  const std::uint64_t full_dim = chain_dim(n, space);
  ChainDistribution d;
  d.n = n;
  d.space = space;
  d.identity_removed = remove_identity;
  d.p.assign(remove_identity ? full_dim - 1 : full_dim, 0.0);
  const double non_identity = static_cast<double>(int_pow(4, n) - 1);
  const double identity_mass =
      remove_identity ? 0.0 : 1.0 / static_cast<double>(int_pow(2, n));
  const double bulk = remove_identity ? 1.0 : 1.0 - identity_mass;
  if (space == ChainSpace::full) {
    const double mass = bulk / non_identity;
    for (std::uint64_t i = 1; i < full_dim; ++i) {
      d.p[remove_identity ? i - 1 : i] = mass;
    }
    if (!remove_identity) d.p[0] = identity_mass;
  } else {
    for (std::uint64_t i = 1; i < full_dim; ++i) {
      const double mult = static_cast<double>(
          multiplicity(reduced_from_index(n, i)));
      d.p[remove_identity ? i - 1 : i] = bulk * mult / non_identity;
    }
    if (!remove_identity) d.p[0] = identity_mass;
  }
  return d;
}

namespace {

template <typename Op>
std::vector<ChainDistribution> evolve_impl(const Op& m, int n,
                                           ChainSpace space,
                                           bool identity_removed,
                                           const ChainDistribution& d,
                                           int steps) {
  if (steps < 0) throw std::invalid_argument("evolve: steps must be >= 0");
  if (d.n != n || d.space != space ||
      d.identity_removed != identity_removed) {
    throw std::invalid_argument(
        "evolve: distribution does not match the chain");
  }
  std::vector<ChainDistribution> out;
  out.reserve(steps + 1);
  out.push_back(d);
  std::vector<double> next;
  for (int s = 1; s <= steps; ++s) {
    m.apply(out.back().p, next);
    double sum = 0.0;
    for (double v : next) sum += v;
    if (std::abs(sum - 1.0) > 1e-9) {
      throw MassDriftError("evolve: mass drifted to " + std::to_string(sum) +
                           " at step " + std::to_string(s));
    }
    ChainDistribution dist = d;
    dist.p = next;
    out.push_back(std::move(dist));
  }
  return out;
}

}  // namespace

std::vector<ChainDistribution> evolve_distribution(const TransitionMatrix& m,
                                                   const ChainDistribution& d,
                                                   int steps) {
  return evolve_impl(m, m.n, m.space, m.identity_removed, d, steps);
}

std::vector<ChainDistribution> evolve_distribution(const ChainOperator& m,
                                                   const ChainDistribution& d,
                                                   int steps) {
  return evolve_impl(m, m.n(), m.space(), m.identity_removed(), d, steps);
}

std::string to_string(ChainSpace space) {
  return space == ChainSpace::full ? "full" : "reduced";
}

std::string to_string(GapMethod method) {
  return method == GapMethod::dense ? "dense" : "iterative";
}

namespace {

SpectralReport spectral_gap_dense(int n, double c, const Topology& topology,
                                  const SpectralOptions& options) {
  const TransitionMatrix m =
      build_chain(n, reduced_rotation(c), topology, /*remove_identity=*/true);
  const Eigen::Index dim = static_cast<Eigen::Index>(m.dim);
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(dim, dim);
  for (std::uint64_t col = 0; col < m.dim; ++col) {
    for (std::uint64_t k = m.col_ptr[col]; k < m.col_ptr[col + 1]; ++k) {
      dense(static_cast<Eigen::Index>(m.row_idx[k]),
            static_cast<Eigen::Index>(col)) = m.values[k];
    }
  }
  // Left eigenvectors of M = right eigenvectors of M^T. A left mode w
  // contributes to the decay of d0 - pi iff w . (d0 - pi) != 0.
  Eigen::EigenSolver<Eigen::MatrixXd> solver(dense.transpose());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("spectral_gap: dense eigensolver failed");
  }
  const ChainDistribution d0 = initial_distribution(n, ChainSpace::reduced,
                                                    /*remove_identity=*/true);
  const ChainDistribution pi = stationary_distribution(
      n, ChainSpace::reduced, /*remove_identity=*/true);
  Eigen::VectorXd diff(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    diff(i) = d0.p[static_cast<std::size_t>(i)] -
              pi.p[static_cast<std::size_t>(i)];
  }
  const double diff_norm = diff.norm();
  const auto& eigenvalues = solver.eigenvalues();
  const auto& eigenvectors = solver.eigenvectors();
  double lambda1 = 0.0;
  for (Eigen::Index k = 0; k < dim; ++k) {
    lambda1 = std::max(lambda1, std::abs(eigenvalues(k)));
  }
  double lambda2 = 0.0;
  int relevant = 0;
  for (Eigen::Index k = 0; k < dim; ++k) {
    const Eigen::VectorXcd w = eigenvectors.col(k);
    const double overlap =
        std::abs(w.dot(diff.cast<std::complex<double>>())) /
        (w.norm() * diff_norm);
    if (overlap <= options.overlap_tol) continue;
    ++relevant;
    lambda2 = std::max(lambda2, std::abs(eigenvalues(k)));
  }
  SpectralReport report;
  report.n = n;
  report.c = c;
  report.method = GapMethod::dense;
  report.lambda1 = lambda1;
  report.lambda2 = lambda2;
  report.gap = lambda1 - lambda2;
  report.rate = -std::log1p(-report.gap);
  std::ostringstream note;
  note << dim << " states, " << relevant << " of " << dim
       << " modes overlap the initial difference (tol "
       << options.overlap_tol << ")";
  if (std::abs(lambda1 - 1.0) > 1e-9) {
    note << "; warning: leading eigenvalue " << lambda1 << " deviates from 1";
  }
  report.note = note.str();
  return report;
}

/// Site relabelings (other than the identity) that map the coupling graph
/// onto itself, drawn from the dihedral candidates i -> (i + k) mod n and
/// i -> (k - i) mod n. The survivors form a group: the intersection of the
/// dihedral group with the graph's automorphism group.
std::vector<std::vector<int>> graph_symmetries(const Topology& topology) {
  const int n = topology.n;
  auto preserved = [&](const std::vector<int>& p) {
    std::vector<std::pair<int, int>> mapped;
    mapped.reserve(topology.edges.size());
    for (const auto& [a, b] : topology.edges) {
      const int x = p[static_cast<std::size_t>(a)];
      const int y = p[static_cast<std::size_t>(b)];
      mapped.emplace_back(std::min(x, y), std::max(x, y));
    }
    std::sort(mapped.begin(), mapped.end());
    return mapped == topology.edges;  // edges are canonical (sorted) already
  };
  std::vector<int> identity(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) identity[static_cast<std::size_t>(i)] = i;
  std::vector<std::vector<int>> group;
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int reflect = 0; reflect < 2; ++reflect) {
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        const int image = reflect ? k - i : i + k;
        perm[static_cast<std::size_t>(i)] = ((image % n) + n) % n;
      }
      if (perm != identity && preserved(perm)) group.push_back(perm);
    }
  }
  return group;
}

/// Index tables of the identity-removed reduced space under each symmetry:
/// entry i holds the index of the word obtained by relabeling sites.
std::vector<std::vector<std::uint32_t>> symmetry_tables(
    int n, std::uint64_t dim, const Topology& topology) {
  std::vector<std::vector<std::uint32_t>> tables;
  for (const auto& p : graph_symmetries(topology)) {
    std::vector<std::uint32_t> table(dim);
    ReducedString moved;
    moved.labels.assign(static_cast<std::size_t>(n), ReducedLabel::identity);
    for (std::uint64_t i = 0; i < dim; ++i) {
      const ReducedString w = reduced_from_index(n, i + 1);
      for (int site = 0; site < n; ++site) {
        moved.labels[static_cast<std::size_t>(p[static_cast<std::size_t>(
            site)])] = w.labels[static_cast<std::size_t>(site)];
      }
      table[i] = static_cast<std::uint32_t>(reduced_index(moved) - 1);
    }
    tables.push_back(std::move(table));
  }
  return tables;
}

SpectralReport spectral_gap_iterative(int n, double c,
                                      const Topology& topology,
                                      const SpectralOptions& options) {
  const ChainOperator op(n, reduced_rotation(c), topology,
                         /*remove_identity=*/true);
  const ChainDistribution d0 = initial_distribution(n, ChainSpace::reduced,
                                                    /*remove_identity=*/true);
  const ChainDistribution pi = stationary_distribution(
      n, ChainSpace::reduced, /*remove_identity=*/true);
  const std::uint64_t dim = op.dim();
  std::vector<double> v(dim), next;
  for (std::uint64_t i = 0; i < dim; ++i) v[i] = d0.p[i] - pi.p[i];
  auto norm = [](const std::vector<double>& x) {
    double s = 0.0;
    for (double e : x) s += e * e;
    return std::sqrt(s);
  };
  auto project_out_stationary = [&pi](std::vector<double>& x) {
    // The Perron mode of the removed block has left eigenvector 1 (column
    // sums are 1), so subtracting sum(x) * pi removes its component.
    double s = 0.0;
    for (double e : x) s += e;
    if (s == 0.0) return;
    for (std::uint64_t i = 0; i < x.size(); ++i) x[i] -= s * pi.p[i];
  };
  // d0 and pi are invariant under every site relabeling that preserves the
  // coupling graph, and the chain commutes with those relabelings, so the
  // exact evolution of v never leaves the invariant sector. Rounding noise
  // does leak out, and modes outside the sector can decay more slowly than
  // the physical difference, so the leak eventually dominates the iteration
  // if left in place. Averaging each iterate over the symmetry group removes
  // it.
  const std::vector<std::vector<std::uint32_t>> tables =
      symmetry_tables(n, dim, topology);
  std::vector<double> sym;
  auto symmetrize = [&](std::vector<double>& x) {
    if (tables.empty()) return;
    sym.assign(x.begin(), x.end());
    for (const auto& table : tables) {
      for (std::uint64_t i = 0; i < dim; ++i) sym[i] += x[table[i]];
    }
    const double inv = 1.0 / static_cast<double>(1 + tables.size());
    for (std::uint64_t i = 0; i < dim; ++i) x[i] = sym[i] * inv;
  };
  project_out_stationary(v);
  symmetrize(v);
  double v_norm = norm(v);
  if (v_norm == 0.0) {
    throw std::runtime_error(
        "spectral_gap: initial difference vanishes; nothing to estimate");
  }
  for (double& e : v) e /= v_norm;

  SpectralReport report;
  report.n = n;
  report.c = c;
  report.method = GapMethod::iterative;
  double prev_ratio = -1.0;
  int stable = 0;
  for (std::uint64_t it = 1; it <= options.max_iterations; ++it) {
    op.apply(v, next);
    project_out_stationary(next);
    symmetrize(next);
    const double ratio = norm(next);
    if (ratio < 1e-14) {
      // The difference died in finite steps: no surviving excited mode.
      report.lambda2 = 0.0;
      report.gap = 1.0;
      report.rate = std::numeric_limits<double>::infinity();
      report.iterations = static_cast<int>(it);
      report.note = "difference vector vanished after " + std::to_string(it) +
                    " iterations";
      return report;
    }
    for (std::uint64_t i = 0; i < dim; ++i) v[i] = next[i] / ratio;
    if (prev_ratio > 0.0 &&
        std::abs(ratio - prev_ratio) <= options.ratio_tol * ratio) {
      if (++stable >= options.stable_window) {
        report.lambda2 = ratio;
        report.gap = 1.0 - ratio;
        report.rate = -std::log(ratio);
        report.iterations = static_cast<int>(it);
        report.note = "power iteration converged (" +
                      std::to_string(options.stable_window) +
                      " consecutive ratios within relative " +
                      std::to_string(options.ratio_tol) + ")";
        if (!tables.empty()) {
          report.note += "; iterates averaged over " +
                         std::to_string(tables.size()) + " graph symmetries";
        }
        return report;
      }
    } else {
      stable = 0;
    }
    prev_ratio = ratio;
  }
  throw ConvergenceError(
      "spectral_gap: power iteration did not settle within " +
          std::to_string(options.max_iterations) +
          " iterations (last ratio " + std::to_string(prev_ratio) + ")",
      1.0 - prev_ratio);
}

}  // namespace

SpectralReport spectral_gap(int n, double c, const Topology& topology,
                            const SpectralOptions& options) {
  if (topology.n != n) {
    throw std::invalid_argument("spectral_gap: topology size mismatch");
  }
  if (options.method == GapMethod::dense) {
    return spectral_gap_dense(n, c, topology, options);
  }
  return spectral_gap_iterative(n, c, topology, options);
}

GapScan gap_scan(int n, const std::vector<double>& c_grid,
                 const Topology& topology, const SpectralOptions& options) {
  if (c_grid.empty()) throw std::invalid_argument("gap_scan: empty grid");
  GapScan scan;
  scan.rows.resize(c_grid.size());
  std::vector<SpectralReport> reports(c_grid.size());
  parallel_for(c_grid.size(), [&](std::size_t i) {
    reports[i] = spectral_gap(n, c_grid[i], topology, options);
  });
  for (std::size_t i = 0; i < c_grid.size(); ++i) {
    scan.rows[i] = {n, c_grid[i], reports[i].gap, reports[i].rate};
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < scan.rows.size(); ++i) {
    if (scan.rows[i].gap > scan.rows[best].gap) best = i;
  }
  scan.argmax_c = scan.rows[best].c;
  scan.max_gap = scan.rows[best].gap;
  // Rate ratio Gamma(0) / Gamma(c ~ 1/3) when both operating points are in
  // the grid.
  std::optional<std::size_t> zero_row, third_row;
  for (std::size_t i = 0; i < scan.rows.size(); ++i) {
    if (scan.rows[i].c == 0.0) zero_row = i;
  }
  double best_third = 0.005;
  for (std::size_t i = 0; i < scan.rows.size(); ++i) {
    const double d = std::abs(scan.rows[i].c - 1.0 / 3.0);
    if (d <= best_third) {
      best_third = d;
      third_row = i;
    }
  }
  if (zero_row && third_row && scan.rows[*third_row].rate > 0.0) {
    scan.gamma_ratio =
        scan.rows[*zero_row].rate / scan.rows[*third_row].rate;
    scan.gamma_ratio_c = scan.rows[*third_row].c;
  }
  return scan;
}

std::string export_chain(const TransitionMatrix& m) {
  std::ostringstream out;
  char buf[64];
  out << "n " << m.n << " c ";
  if (m.c) {
    std::snprintf(buf, sizeof buf, "%.17g", *m.c);
    out << buf;
  } else {
    out << "nan";
  }
  out << " space " << to_string(m.space) << " topology "
      << to_string(m.topology.kind) << " identity "
      << (m.identity_removed ? "removed" : "kept") << "\n";
  if (m.topology.kind == Topology::Kind::explicit_edges) {
    out << "edges";
    for (const auto& [a, b] : m.topology.edges) out << " " << a << "-" << b;
    out << "\n";
  }
  for (std::uint64_t col = 0; col < m.dim; ++col) {
    for (std::uint64_t k = m.col_ptr[col]; k < m.col_ptr[col + 1]; ++k) {
      std::snprintf(buf, sizeof buf, "%u %llu %.17g", m.row_idx[k],
                    static_cast<unsigned long long>(col), m.values[k]);
      out << buf << "\n";
    }
  }
  return out.str();
}

TransitionMatrix import_chain(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  // Skip leading comment lines (the CLI prepends a '#' manifest).
  do {
    if (!std::getline(in, line)) {
      throw std::invalid_argument("import_chain: empty input");
    }
  } while (!line.empty() && line[0] == '#');
  std::istringstream header(line);
  std::string key;
  TransitionMatrix m;
  std::string c_text, space_text, topology_text, identity_text;
  header >> key;
  if (key != "n") throw std::invalid_argument("import_chain: bad header");
  header >> m.n;
  header >> key >> c_text;
  if (key != "c") throw std::invalid_argument("import_chain: bad header");
  header >> key >> space_text;
  if (key != "space") throw std::invalid_argument("import_chain: bad header");
  header >> key >> topology_text;
  if (key != "topology") {
    throw std::invalid_argument("import_chain: bad header");
  }
  header >> key >> identity_text;
  if (key != "identity" || header.fail()) {
    throw std::invalid_argument("import_chain: bad header");
  }
  if (c_text != "nan") m.c = std::stod(c_text);
  if (space_text == "full") {
    m.space = ChainSpace::full;
  } else if (space_text == "reduced") {
    m.space = ChainSpace::reduced;
  } else {
    throw std::invalid_argument("import_chain: unknown space");
  }
  if (identity_text == "removed") {
    m.identity_removed = true;
  } else if (identity_text == "kept") {
    m.identity_removed = false;
  } else {
    throw std::invalid_argument("import_chain: unknown identity flag");
  }
  std::vector<std::pair<int, int>> explicit_edges;
  std::streampos before_triplets = in.tellg();
  if (topology_text == "explicit") {
    if (!std::getline(in, line) || line.rfind("edges", 0) != 0) {
      throw std::invalid_argument("import_chain: missing edges line");
    }
    std::istringstream es(line);
    std::string tag, pair_text;
    es >> tag;
    while (es >> pair_text) {
      const auto dash = pair_text.find('-');
      if (dash == std::string::npos) {
        throw std::invalid_argument("import_chain: malformed edge");
      }
      explicit_edges.emplace_back(std::stoi(pair_text.substr(0, dash)),
                                  std::stoi(pair_text.substr(dash + 1)));
    }
    before_triplets = in.tellg();
  }
  if (topology_text == "open") {
    m.topology = open_chain(m.n);
  } else if (topology_text == "closed") {
    m.topology = closed_chain(m.n);
  } else if (topology_text == "explicit") {
    m.topology = explicit_topology(m.n, explicit_edges);
  } else {
    throw std::invalid_argument("import_chain: unknown topology");
  }
  const std::uint64_t full_dim = chain_dim(m.n, m.space);
  m.dim = m.identity_removed ? full_dim - 1 : full_dim;
  in.seekg(before_triplets);
  std::map<std::uint64_t, std::vector<std::pair<std::uint32_t, double>>> cols;
  std::uint64_t nnz = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ts(line);
    std::uint64_t row = 0, col = 0;
    double value = 0.0;
    if (!(ts >> row >> col >> value)) {
      throw std::invalid_argument("import_chain: malformed triplet '" + line +
                                  "'");
    }
    if (row >= m.dim || col >= m.dim) {
      throw std::invalid_argument("import_chain: triplet index out of range");
    }
    cols[col].emplace_back(static_cast<std::uint32_t>(row), value);
    ++nnz;
  }
  m.col_ptr.assign(m.dim + 1, 0);
  m.row_idx.reserve(nnz);
  m.values.reserve(nnz);
  for (std::uint64_t col = 0; col < m.dim; ++col) {
    auto it = cols.find(col);
    if (it != cols.end()) {
      std::sort(it->second.begin(), it->second.end());
      for (const auto& [row, value] : it->second) {
        m.row_idx.push_back(row);
        m.values.push_back(value);
      }
    }
    m.col_ptr[col + 1] = m.row_idx.size();
  }
  return m;
}

}  // namespace prqc
