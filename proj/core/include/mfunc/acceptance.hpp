#pragma once

#include <string>
#include <vector>

namespace mfunc {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;  // measured value(s) and threshold, human-readable
};

struct AcceptanceOptions {
    // "desk" runs the full suite at the published scales; "quick" shrinks the
    // Monte Carlo and fuzz sizes for a fast smoke pass (bounds loosened in
    // proportion, for development only).
    bool quick = false;
    std::uint64_t mc_samples = 1'000'000;
    std::uint64_t fuzz_points = 10'000;
    std::uint64_t seed = 20240915;
};

/// Runs the twelve verification criteria and returns one result per
/// criterion, in order. Never throws for a failed bound; infrastructure
/// errors (I/O, non-convergence) do propagate.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

}  // namespace mfunc
