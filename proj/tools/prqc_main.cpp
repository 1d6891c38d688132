// Copyright 2026 The prqc Authors
// SPDX-License-Identifier: Apache-2.0
#include "prqc/cli.hpp"

int main(int argc, char** argv) { return prqc::cli::run(argc, argv); }
