#pragma once

#include "smectic/config.hpp"

#include <optional>
#include <ostream>
#include <string>

namespace smectic {

/// Command-line overrides applied on top of the config file.
struct RunOverrides {
    std::optional<double> dt;
    std::optional<double> t_end;
    std::optional<std::string> preset;
    std::optional<unsigned long> seed;
};

/// 0 certified, 2 not certified (report names the failing condition),
/// 1 on unreadable or malformed config.
int cmd_certify(const std::string& config_path, std::ostream& out);

/// Runs the solver and writes manifest.txt, config.txt, energy.csv,
/// dissipation.csv, residuals.csv, ledger.csv and per-snapshot field
/// dumps into out_dir. 0 on completion, 3 when the blow-up guard
/// trips, 1 on any config or I/O error.
int cmd_run(const std::string& config_path, const std::string& out_dir,
            const RunOverrides& ov, std::ostream& out);

/// Recomputes the residual suites from a completed run directory.
/// 0 when everything is within tolerance, 2 on a residual failure
/// (naming the identity), 1 when the directory is unusable.
int cmd_audit(const std::string& out_dir, std::ostream& out);

} // namespace smectic
