#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "klsum/harness.hpp"

namespace klsum::verify {

enum class Profile { Quick, Full };

// Deliberate miscomputations for smoke-testing the harness failure path.
enum class Fault { None, FlipJacobiSign };

struct Options {
    Profile profile = Profile::Quick;
    Fault fault = Fault::None;
    std::string cache_dir;  // empty disables the on-disk tau cache
    double slack = 10.0;    // multiplier applied to growth bounds
};

struct CheckResult {
    std::string name;
    std::string grid;
    bool passed = true;
    double max_residual = 0;  // worst absolute residual observed
    double max_ratio = 0;     // worst bound ratio observed (bound suites)
    std::string detail;       // first counterexample on failure
};

std::vector<CheckResult> run_all(const Options& opts);

// One line per check plus a summary; returns 0 when everything passed.
int report(const std::vector<CheckResult>& results, std::ostream& os);

} // namespace klsum::verify
