// Copyright 2026 The pursuit Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace pursuit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pursuit
