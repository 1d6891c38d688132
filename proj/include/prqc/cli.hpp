// Copyright 2026 The prqc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace prqc::cli {

/// Exit codes shared by all subcommands.
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;        // bad flags or invalid input
inline constexpr int exit_capacity = 3;     // problem size over a hard limit
inline constexpr int exit_convergence = 4;  // iterative method did not settle

/// Entry point used by the binary: dispatches to the subcommands
///   decay         metric-vs-depth curves for circuit / cluster runs
///   gap           spectral gaps over a mixture-parameter grid
///   tv            total-variation trajectory of the Pauli-mass chain
///   chain-export  explicit transition-matrix export
/// Results are written to --out (default stdout) as CSV or plain text with
/// a deterministic comment manifest; progress notes go to stderr only.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// argv wrapper around the list-based overload, writing to std::cout /
/// std::cerr.
int run(int argc, char** argv);

}  // namespace prqc::cli
