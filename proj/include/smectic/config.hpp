#pragma once

#include "smectic/initial.hpp"
#include "smectic/solver.hpp"

#include <string>

namespace smectic {

/// Parsed run configuration: flat key = value pairs under [section]
/// headers. The raw text is kept for hashing into the manifest.
struct Config {
    Grid grid;
    ModelParams params;
    SolverConfig solver;
    InitialSpec initial;
    std::string text;
};

Config parse_config_text(const std::string& text);
Config parse_config(const std::string& path);  // throws io_error / config_error

} // namespace smectic
