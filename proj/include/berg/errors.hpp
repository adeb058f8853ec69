#pragma once

#include <stdexcept>
#include <string>

namespace berg {

// A theorem hypothesis (strict inequality) failed. The message names the
// inequality that was violated.
struct HypothesisViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutOfDomain : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedDimension : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InsufficientLevels : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotReproducible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotConvergent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnboundedFunction : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Adaptive quadrature ran out of cells. Carries the best estimate obtained
// so far; callers that can tolerate a degraded value may use it.
struct BudgetExceeded : std::runtime_error {
    double best_estimate;
    long cells_used;
    BudgetExceeded(const std::string& msg, double est, long cells)
        : std::runtime_error(msg), best_estimate(est), cells_used(cells) {}
};

}  // namespace berg
