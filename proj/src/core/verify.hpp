#pragma once

#include "csv_io.hpp"

#include <string>
#include <vector>

namespace backstep {

struct VerifyOptions {
    double lambda1 = 20.0;
    double lambda2 = 10.0;
    // when non-empty, the figure-reproduction check writes its kernel and
    // gain CSVs here and re-reads them (the directory must exist)
    std::string out_dir;
};

// Full quantitative verification suite: kernel boundary data, decoupled
// analytic oracles, successive-approximation convergence, reciprocity,
// kernel PDE residuals, open-loop growth, state-feedback and observer
// decay-rate fits, output-feedback convergence, the Lyapunov certificate,
// the time-stepper order check, and the figure regression locks.
// Returns one result per check, sorted by name; results never throw for a
// failed bound, only for broken preconditions.
std::vector<CheckResult> run_verification(const VerifyOptions& opt);

int count_failed(const std::vector<CheckResult>& checks);

} // namespace backstep
