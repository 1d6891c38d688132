// Copyright 2026 The prqc Authors
// SPDX-License-Identifier: Apache-2.0
#include "prqc/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace prqc {

void HistogramSpec::validate() const {
  if (bins < 1) throw std::invalid_argument("histogram needs >= 1 bin");
  if (!(y_max > y_min)) {
    throw std::invalid_argument("histogram range must be non-empty");
  }
}

int histogram_bin(const HistogramSpec& spec, double y) {
  // Clamp before the int cast: casting an out-of-int-range double is UB.
  double b = std::floor((y - spec.y_min) / spec.bin_width());
  if (!(b > 0.0)) return 0;  // also catches NaN
  if (b >= spec.bins) return spec.bins - 1;
  return static_cast<int>(b);
}

namespace {

void add_value(ComponentHistogram& h, double y, double weight) {
  h.masses[histogram_bin(h.spec, y)] += weight;
  ++h.samples;
}

}  // namespace

ComponentHistogram component_histogram(const std::vector<StateVector>& states,
                                       const HistogramSpec& spec) {
  spec.validate();
  if (states.empty()) {
    throw std::invalid_argument("component_histogram: no states");
  }
  ComponentHistogram h{spec, std::vector<double>(spec.bins, 0.0), 0};
  std::uint64_t total = 0;
  for (const StateVector& psi : states) total += psi.dim();
  const double weight = 1.0 / static_cast<double>(total);
  for (const StateVector& psi : states) {
    const double dim = static_cast<double>(psi.dim());
    for (const cplx& a : psi.amps) add_value(h, dim * std::norm(a), weight);
  }
  return h;
}

ComponentHistogram sample_histogram(const std::vector<double>& y_values,
                                    const HistogramSpec& spec) {
  spec.validate();
  if (y_values.empty()) {
    throw std::invalid_argument("sample_histogram: no samples");
  }
  ComponentHistogram h{spec, std::vector<double>(spec.bins, 0.0), 0};
  const double weight = 1.0 / static_cast<double>(y_values.size());
  for (double y : y_values) add_value(h, y, weight);
  return h;
}

double porter_thomas_distance(const ComponentHistogram& histogram) {
  const double width = histogram.spec.bin_width();
  double sum = 0.0;
  for (int b = 0; b < histogram.spec.bins; ++b) {
    const double y_mid = histogram.spec.y_min + (b + 0.5) * width;
    const double density = histogram.masses[b] / width;
    const double diff = density - std::exp(-y_mid);
    sum += diff * diff * width;
  }
  return std::sqrt(sum);
}

double porter_thomas_distance(const std::vector<StateVector>& states,
                              const HistogramSpec& spec) {
  return porter_thomas_distance(component_histogram(states, spec));
}

std::vector<double> exponential_control_samples(std::uint64_t count,
                                                Rng& rng) {
  std::exponential_distribution<double> dist(1.0);
  std::vector<double> out(count);
  for (auto& y : out) y = dist(rng);
  return out;
}

double meyer_wallach_q(const StateVector& psi) {
  double bloch_sq_sum = 0.0;
  for (int q = 0; q < psi.n; ++q) {
    const auto [x, y, z] = bloch_vector(psi, q);
    bloch_sq_sum += x * x + y * y + z * z;
  }
  return 1.0 - bloch_sq_sum / psi.n;
}

double q_random_expectation(int n) {
  if (n < 1) throw std::invalid_argument("q_random_expectation: n >= 1");
  if (n > 62) throw std::invalid_argument("q_random_expectation: n too large");
  const double dim = static_cast<double>(std::uint64_t{1} << n);
  return (dim - 2.0) / (dim + 1.0);
}

double tv_distance(const std::vector<double>& p,
                   const std::vector<double>& q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("tv_distance: dimension mismatch");
  }
  double sp = 0.0, sq = 0.0, acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    sp += p[i];
    sq += q[i];
    acc += std::abs(p[i] - q[i]);
  }
  constexpr double tol = 1e-9;
  if (std::abs(sp - 1.0) > tol || std::abs(sq - 1.0) > tol) {
    throw std::invalid_argument(
        "tv_distance: inputs must each sum to 1 (got " + std::to_string(sp) +
        " and " + std::to_string(sq) + ")");
  }
  return 0.5 * acc;
}

DecayFit fit_exponential_decay(
    const std::vector<std::pair<double, double>>& series, int burn_in) {
  if (burn_in < 0) throw std::invalid_argument("burn_in must be >= 0");
  double st = 0.0, sl = 0.0, stt = 0.0, stl = 0.0;
  int m = 0;
  for (std::size_t i = static_cast<std::size_t>(burn_in); i < series.size();
       ++i) {
    const auto [t, v] = series[i];
    if (!(v > 0.0)) {
      throw std::invalid_argument(
          "fit_exponential_decay: non-positive value at t = " +
          std::to_string(t));
    }
    const double l = std::log(v);
    st += t;
    sl += l;
    stt += t * t;
    stl += t * l;
    ++m;
  }
  if (m < 2) {
    throw std::invalid_argument(
        "fit_exponential_decay: need at least two points after burn-in");
  }
  const double det = m * stt - st * st;
  if (std::abs(det) < 1e-300) {
    throw std::invalid_argument(
        "fit_exponential_decay: degenerate abscissae");
  }
  const double slope = (m * stl - st * sl) / det;
  const double intercept = (sl - slope * st) / m;
  double rss = 0.0;
  for (std::size_t i = static_cast<std::size_t>(burn_in); i < series.size();
       ++i) {
    const auto [t, v] = series[i];
    const double r = std::log(v) - (intercept + slope * t);
    rss += r * r;
  }
  DecayFit fit;
  fit.rate = -slope;
  fit.intercept = intercept;
  fit.residual = std::sqrt(rss / m);
  fit.points_used = m;
  return fit;
}

CutoffReport detect_cutoff(
    const std::vector<std::pair<double, double>>& series, double threshold) {
  if (series.empty()) {
    throw std::invalid_argument("detect_cutoff: empty series");
  }
  if (!(threshold >= 0.0)) {
    throw std::invalid_argument("detect_cutoff: threshold must be >= 0");
  }
  CutoffReport report;
  report.plateau_value = series.front().second;
  report.threshold = threshold;
  std::size_t last_in_run = 0;
  while (last_in_run + 1 < series.size() &&
         std::abs(series[last_in_run + 1].second - report.plateau_value) <=
             threshold) {
    ++last_in_run;
  }
  report.tau = series[last_in_run].first;
  report.plateau_points = static_cast<int>(last_in_run) + 1;
  std::vector<std::pair<double, double>> tail(
      series.begin() + static_cast<std::ptrdiff_t>(last_in_run) + 1,
      series.end());
  bool tail_positive = tail.size() >= 2;
  for (const auto& [t, v] : tail) {
    if (!(v > 0.0)) tail_positive = false;
  }
  if (tail_positive) report.post_plateau = fit_exponential_decay(tail, 0);
  return report;
}

}  // namespace prqc
