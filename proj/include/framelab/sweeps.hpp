#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "framelab/linalg.hpp"

namespace framelab {

struct SweepConfig {
    std::uint64_t seed = 42;
    int trials = 0; ///< 0 selects the suite default
    ToleranceConfig tol;
};

struct SweepResult {
    std::string name;
    int trials = 0;
    int violations = 0;
    int skipped = 0;       ///< instances outside the hypotheses
    double worst = 0.0;    ///< largest residual, or measured - bound
    int witnesses = 0;     ///< suite-specific count of positive instances
    std::vector<std::string> failures; ///< first few failure messages

    bool passed() const { return violations == 0 && trials > 0; }
};

std::vector<std::string> sweep_names();
int sweep_default_trials(const std::string& name);
/// Throws InvalidInput for an unknown name.
SweepResult run_sweep(const std::string& name, const SweepConfig& cfg);

} // namespace framelab
