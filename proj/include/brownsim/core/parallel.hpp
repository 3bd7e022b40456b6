#pragma once

namespace brownsim {

/// Worker threads used by the parallel kernels. Results never depend on this value
/// in deterministic mode.
int thread_count();
void set_thread_count(int n);

}  // namespace brownsim
