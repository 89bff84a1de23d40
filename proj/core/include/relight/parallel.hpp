// Copyright 2026 The relight Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace relight {

/// Worker count used by parallel_for. Zero restores the hardware default.
void set_thread_count(unsigned count);
unsigned thread_count();

/// Splits [begin, end) into contiguous chunks and runs `body(lo, hi)` on each,
/// one chunk per worker. Chunks never overlap, so callers writing disjoint
/// output ranges need no synchronization. Exceptions from any worker are
/// rethrown on the calling thread after all workers join.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace relight
