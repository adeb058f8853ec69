#pragma once

#include <string>
#include <vector>

#include "berg/quad.hpp"

namespace berg {

// One bisection probe: the functional's ladder at a single epsilon.
struct Probe {
    double eps = 0.0;
    quad::Verdict raw = quad::Verdict::Inconclusive;
    quad::Verdict effective = quad::Verdict::Inconclusive;  // after coercion
    quad::LadderReport report;
};

// Bisection result for the extremal distance. The bracket [eps_lo, eps_hi]
// satisfies: every probe at eps <= eps_lo classified non-convergent, every
// probe at eps >= eps_hi classified convergent. eps_lo = 0 means no probe
// ever diverged (the bracket contains 0).
struct DistanceEstimate {
    std::string domain = "halfplane";
    int n = 1;
    double eps_lo = 0.0;
    double eps_hi = 0.0;
    double sup_norm = 0.0;  // grid sup norm of f used to seed the bracket
    std::vector<Probe> probes;
    std::string policy;  // how Inconclusive verdicts were coerced
};

}  // namespace berg
