// Copyright 2026 The prqc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace prqc {

/// Thrown when a requested problem size exceeds a configured capacity limit
/// (e.g. statevector qubit count, dense chain dimension).
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an iterative procedure fails to converge within its budget.
/// Carries the last estimate so callers can report partial progress.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_estimate)
      : std::runtime_error(what), last_estimate_(last_estimate) {}
  double last_estimate() const { return last_estimate_; }

 private:
  double last_estimate_;
};

/// Thrown when a Monte Carlo averaged gate moment retains cross terms that
/// should vanish, indicating either too few samples or a broken sampler.
class CrossTermError : public std::runtime_error {
 public:
  explicit CrossTermError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a full 4x4 averaged rotation cannot be collapsed onto the
/// 3-letter alphabet because its x and y columns disagree.
class LumpabilityError : public std::runtime_error {
 public:
  explicit LumpabilityError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Thrown when probability mass drifts during distribution evolution.
/// Mass is checked, never silently renormalized.
class MassDriftError : public std::runtime_error {
 public:
  explicit MassDriftError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace prqc
