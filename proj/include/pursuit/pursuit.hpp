// Copyright 2026 The pursuit Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Convenience umbrella: pulls in the whole library.
#pragma once

#include "pursuit/dense.hpp"
#include "pursuit/experiment.hpp"
#include "pursuit/incremental_qr.hpp"
#include "pursuit/lstsq.hpp"
#include "pursuit/matrix_io.hpp"
#include "pursuit/metrics.hpp"
#include "pursuit/recovery.hpp"
#include "pursuit/rng.hpp"
#include "pursuit/scalar.hpp"
#include "pursuit/sensing.hpp"
#include "pursuit/signals.hpp"
#include "pursuit/version.hpp"
