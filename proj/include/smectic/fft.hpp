#pragma once

#include "smectic/field.hpp"

namespace smectic {

/// Synthesis: evaluate the band-limited field on a physical grid of
/// `dims` points (dims[a] >= grid.n[a]). Exact for retained modes.
PhysicalField to_physical(const SpectralScalarField& f, std::array<int, 3> dims);

/// Convenience: synthesis on the grid's own n points.
PhysicalField to_physical(const SpectralScalarField& f);

/// Analysis: forward DFT of samples, normalized, truncated to the
/// retained band of `grid` (Nyquist planes dropped).
SpectralScalarField to_spectral(const PhysicalField& p, const Grid& grid);

} // namespace smectic
