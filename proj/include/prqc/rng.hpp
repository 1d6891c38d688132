// Copyright 2026 The prqc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <numbers>
#include <random>

namespace prqc {

using Rng = std::mt19937_64;

namespace detail {

/// SplitMix64 step: advances `state` and returns one well-mixed word.
/// Used only to derive seeds, never as the sampling generator itself.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Deterministic generator for a master seed.
inline Rng make_rng(std::uint64_t seed) {
  std::uint64_t s = seed;
  std::seed_seq seq{detail::splitmix64(s), detail::splitmix64(s),
                    detail::splitmix64(s), detail::splitmix64(s)};
  return Rng(seq);
}

/// Independent substream `index` of a master seed. Realization k of an
/// ensemble uses derive_rng(seed, k), so results do not depend on the order
/// in which realizations are executed (including across worker threads).
inline Rng derive_rng(std::uint64_t master_seed, std::uint64_t index) {
  std::uint64_t s = master_seed;
  std::uint64_t base = detail::splitmix64(s);
  std::uint64_t t = base ^ (index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
  std::seed_seq seq{detail::splitmix64(t), detail::splitmix64(t),
                    detail::splitmix64(t), detail::splitmix64(t)};
  return Rng(seq);
}

/// Uniform angle in [0, 2*pi).
inline double uniform_angle(Rng& rng) {
  std::uniform_real_distribution<double> dist(0.0, 2.0 * std::numbers::pi);
  return dist(rng);
}

/// Standard normal variate.
inline double standard_normal(Rng& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  return dist(rng);
}

/// Bernoulli draw with success probability p.
inline bool bernoulli(Rng& rng, double p) {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  return dist(rng) < p;
}

}  // namespace prqc
