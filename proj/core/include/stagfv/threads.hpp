#pragma once

namespace stagfv {

/// Applies STAGFV_NUM_THREADS (positive integer) to the OpenMP runtime when
/// set; returns the thread count in effect, 1 without OpenMP.
int configure_threads();

int num_threads() noexcept;

}  // namespace stagfv
