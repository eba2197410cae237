#pragma once

namespace smectic {

/// Applies the SMECTIC_THREADS cap (if set) to the OpenMP runtime.
/// Called once from the CLI and lazily from the kernels.
void init_threads();

int max_threads();

} // namespace smectic
