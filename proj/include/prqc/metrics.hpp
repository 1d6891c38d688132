// Copyright 2026 The prqc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "prqc/rng.hpp"
#include "prqc/statevector.hpp"

namespace prqc {

/// Binning for rescaled probability weights y = 2^n |<i|psi>|^2.
struct HistogramSpec {
  double y_min = 0.0;
  double y_max = 10.0;
  int bins = 100;

  void validate() const;
  double bin_width() const { return (y_max - y_min) / bins; }
};

/// Normalized histogram of rescaled squared components pooled over a set of
/// states. masses sum to 1; samples counts pooled values. Values outside
/// [y_min, y_max) are clipped into the nearest edge bin, so no mass is lost.
struct ComponentHistogram {
  HistogramSpec spec;
  std::vector<double> masses;
  std::uint64_t samples = 0;
};

/// Bin index for a rescaled component value; out-of-range values are
/// clipped into the nearest edge bin so no mass is lost.
int histogram_bin(const HistogramSpec& spec, double y);

ComponentHistogram component_histogram(const std::vector<StateVector>& states,
                                       const HistogramSpec& spec = {});

/// Histogram of raw y samples (used for synthetic controls).
ComponentHistogram sample_histogram(const std::vector<double>& y_values,
                                    const HistogramSpec& spec = {});

/// L2 distance between the binned empirical density and the exponential
/// density e^{-y} evaluated at bin midpoints:
/// sqrt( sum_b (density_b - e^{-y_mid,b})^2 * bin_width ). Zero only in the
/// infinite-sample, infinitely-fine-bin limit; finite samples leave a
/// noise floor.
double porter_thomas_distance(const ComponentHistogram& histogram);
double porter_thomas_distance(const std::vector<StateVector>& states,
                              const HistogramSpec& spec = {});

/// Exponential samples with unit mean, for calibrating the sampling noise
/// floor of porter_thomas_distance at a given pooled-sample count.
std::vector<double> exponential_control_samples(std::uint64_t count,
                                                Rng& rng);

/// Meyer-Wallach entanglement measure:
/// Q = 1 - (1/n) sum_q (<X_q>^2 + <Y_q>^2 + <Z_q>^2)
///   = 2 (1 - average single-qubit purity).
/// 0 on product states, 1 when every single-qubit marginal is maximally
/// mixed.
double meyer_wallach_q(const StateVector& psi);

/// Haar-average of Q for n qubits: (2^n - 2) / (2^n + 1).
double q_random_expectation(int n);

/// Total-variation distance (1/2) sum_i |p_i - q_i| between two
/// distributions of equal dimension, each summing to 1 within 1e-9.
///
/// Distributions over the lumped 3-letter alphabet carry class-total mass
/// (the full-space mass of the whole class), so this plain half-L1 equals
/// the full-space total variation of the class-symmetric extensions; no
/// extra multiplicity weights are needed.
double tv_distance(const std::vector<double>& p, const std::vector<double>& q);

/// A fitted exponential decay v(t) ~ exp(intercept - rate * t).
struct DecayFit {
  double rate = 0.0;
  double intercept = 0.0;
  /// RMS residual of log(v) around the fitted line.
  double residual = 0.0;
  int points_used = 0;
};

/// Unweighted least squares of log(v) against t over series entries with
/// index >= burn_in. Requires at least two usable points, all strictly
/// positive.
DecayFit fit_exponential_decay(
    const std::vector<std::pair<double, double>>& series, int burn_in = 0);

/// Result of plateau/cutoff detection on a decaying series.
struct CutoffReport {
  /// t value of the last point in the maximal initial run that stays
  /// within threshold of the first point's value.
  double tau = 0.0;
  double plateau_value = 0.0;
  double threshold = 0.0;
  int plateau_points = 0;
  /// Fit of the tail after the plateau, when it has >= 2 positive points.
  std::optional<DecayFit> post_plateau;
};

/// Detects an initial plateau: the first point defines the plateau value;
/// the plateau extends while |v - plateau_value| <= threshold. A strictly
/// decaying series therefore reports tau at its first point.
CutoffReport detect_cutoff(const std::vector<std::pair<double, double>>& series,
                           double threshold);

}  // namespace prqc
