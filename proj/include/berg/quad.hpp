#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "berg/errors.hpp"

namespace berg::quad {

struct Options {
    double tol = 1e-6;       // relative error target
    long max_cells = 200000; // cell budget per call
    // Absolute error floor: refinement stops once the error estimate drops
    // below max(tol * |value|, tol_abs). The ladder drivers set it per shell
    // from the running total, so deep shells are not resolved far beyond
    // their weight in the final classification.
    double tol_abs = 0.0;
};

struct Result {
    double value = 0.0;
    double err = 0.0;
    long cells = 0;
    bool budget_exceeded = false;
};

struct ResultC {
    std::complex<double> value{0.0, 0.0};
    double err = 0.0;
    long cells = 0;
    bool budget_exceeded = false;
};

// Globally adaptive tensor Gauss quadrature over an axis-aligned rectangle.
// The worst cell (by embedded 3x3 vs 5x5 error) is split into four until the
// summed error estimate meets opt.tol relative to the running value or the
// cell budget is exhausted. Subdivision order and the final compensated
// accumulation order are fixed, so results are bit-identical across runs.
Result integrate_rect(const std::function<double(double, double)>& f,
                      double ax, double bx, double ay, double by,
                      const Options& opt);

ResultC integrate_rect_c(const std::function<std::complex<double>(double, double)>& f,
                         double ax, double bx, double ay, double by,
                         const Options& opt);

// 1-D variant with the same policy (5-point vs 3-point Gauss per interval).
Result integrate_line(const std::function<double(double)>& f,
                      double a, double b, const Options& opt);

// Rectangle in C+ with a Cartesian integrand. Throws BudgetExceeded when the
// cell budget is hit before the tolerance.
double integrate(const std::function<double(std::complex<double>)>& g,
                 double ax, double bx, double ay, double by,
                 const Options& opt);

enum class Verdict { Convergent, Divergent, Inconclusive };

std::string to_string(Verdict v);

struct ClassifyOptions {
    double rho = 0.75;        // convergence ratio threshold
    double div_ratio = 0.9;   // divergence ratio threshold
    double tol_tail = 0.1;    // geometric tail bound, relative to the value
    // Relative increment resolution: increments at or below
    // noise_floor * (top value) are below what the integrator can resolve
    // and are treated as vanished when forming ratios. The ladder drivers
    // raise this to their quadrature tolerance automatically.
    double noise_floor = 1e-13;
};

// Verdict from a truncation ladder: values are the per-level integrals
// Phi_m (non-decreasing), increments d_m = Phi_{m+1} - Phi_m. Convergent
// when the last three increment ratios stay below rho and the geometric
// tail bound is small relative to the value; Divergent when the last three
// ratios stay at or above div_ratio. Requires at least 5 levels.
// reliable, when non-null, masks levels whose value is untrusted (budget
// overruns); only the longest reliable prefix enters the verdict.
Verdict classify(const std::vector<double>& values,
                 const std::vector<double>& increments,
                 const ClassifyOptions& copt = {},
                 double* tail_estimate = nullptr,
                 const std::vector<char>* reliable = nullptr);

struct Ladder {
    double base = 2.0;
    int min_exp = 1;
    int max_exp = 12;
};

struct LadderReport {
    std::vector<double> values;      // Phi_m, one per level
    std::vector<double> increments;  // d_m = Phi_{m+1} - Phi_m
    std::vector<double> ratios;      // r_m = d_{m+1}/d_m
    std::vector<char> reliable;      // per level
    Verdict verdict = Verdict::Inconclusive;
    double tail_estimate = 0.0;      // valid only when Convergent
    double total() const { return values.empty() ? 0.0 : values.back(); }
    // CSV with columns m,value,increment,ratio,reliable (full precision).
    std::string to_csv(int first_m = 1) const;
};

// Fill increments/ratios/verdict from values + reliable flags.
void finalize_report(LadderReport& rep, const ClassifyOptions& copt = {});

enum class RegionFamily {
    HalfPlaneSectors,  // {base^-m <= |z| <= base^m} cap {Im z > 0}
    BallShells         // {1 - |z|^2 >= base^-m} in the unit disk
};

// Truncation-ladder integration of a nonnegative Cartesian integrand over
// the nested region family. Each increment is integrated directly over the
// newly added shells, so increments are nonnegative by construction.
LadderReport ladder_integrate(const Ladder& lad, RegionFamily fam,
                              const std::function<double(std::complex<double>)>& g,
                              const Options& opt,
                              const ClassifyOptions& copt = {});

// Ladder of complex shell integrals: value accumulates the complex total,
// the verdict is computed on the cumulative absolute shell masses.
struct LadderReportC {
    std::complex<double> value{0.0, 0.0};
    LadderReport magnitudes;
};

LadderReportC ladder_integrate_c(const Ladder& lad, RegionFamily fam,
                                 const std::function<std::complex<double>(std::complex<double>)>& g,
                                 const Options& opt,
                                 const ClassifyOptions& copt = {});

}  // namespace berg::quad
