// Copyright 2026 The prqc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace prqc {

/// Library version, embedded in CLI output manifests.
inline constexpr const char* version_string = "0.1.0";

}  // namespace prqc
