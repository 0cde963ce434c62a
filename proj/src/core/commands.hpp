#pragma once

#include "config.hpp"

#include <string>

namespace backstep {

// High-level command implementations behind the CLI. Each writes its data
// files into out_dir (created if missing) and finishes with manifest.json,
// whose presence marks a completed run.

// solve all four kernel families and emit kernel surfaces + gain curves
void cmd_kernels(const ToolkitConfig& cfg, const std::string& out_dir);

// run the configured scenario; emit snapshots.csv and norms.csv (with a
// V_lyap column for the anti-collocated output-feedback loop)
void cmd_simulate(const ToolkitConfig& cfg, const std::string& out_dir);

// run the verification suite; emit verify_report.{txt,csv}; returns the
// number of failed checks
int cmd_verify(const ToolkitConfig& cfg, const std::string& out_dir);

// dominant open-loop growth rate for the configured coupling constants
double cmd_spectrum(const ToolkitConfig& cfg);

} // namespace backstep
