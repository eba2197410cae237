#pragma once

#include <stdexcept>
#include <string>

namespace smectic {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operator applied to a field of the wrong rank.
struct rank_error : error {
    using error::error;
};

/// Two fields from incompatible grids combined.
struct grid_mismatch_error : error {
    using error::error;
};

/// Malformed configuration input.
struct config_error : error {
    using error::error;
};

/// A field norm exceeded the blow-up guard during time stepping.
struct blowup_error : error {
    using error::error;
};

struct io_error : error {
    using error::error;
};

} // namespace smectic
