#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace berg {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;   // numbers backing the verdict
    double seconds = 0.0;
};

// Runs the full acceptance suite. Artifacts (ladder CSVs, distance JSON,
// heatmaps, determinism probes) are written under out_dir when non-empty.
// threads is carried into the artifact configs to exercise the promise that
// it never changes results.
std::vector<CriterionResult> run_acceptance(const std::string& out_dir,
                                            std::uint64_t seed,
                                            int threads = 1);

// One line per criterion: "PASS  3 whitney-overlap   (1.2s) detail".
std::string format_results(const std::vector<CriterionResult>& results);

}  // namespace berg
