#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "berg/catalog.hpp"
#include "berg/distance.hpp"
#include "berg/halfplane.hpp"
#include "berg/params.hpp"
#include "berg/whitney.hpp"

namespace berg {

// Level-set membership z in V_{eps,t}(f) = {|f(z)| (Im z)^t >= eps}.
// Computed on the unscaled catalog function against eps/scale, so the set
// identity V(lambda f, eps) = V(f, eps/lambda) holds exactly.
bool levelset_member(const TestFunction& f, double eps, double t, cplx z);

// Whitney square carrying its intersection area with V cap region.
struct ActiveSquare {
    WhitneySquare sq;
    double area = 0.0;   // m2(Delta cap V cap region), subgrid estimate
    bool straddle = false;
};

struct LevelSetSampling {
    int subgrid = 8;    // first-pass membership samples per side
    int refine = 32;    // refinement for straddling squares
    int miss_run = 3;   // consecutive empty squares ending a row scan
    int empty_levels = 3;  // consecutive empty levels ending the sweep
};

// Squares with positive sampled intersection with V_{eps,t}(f) cap the
// annular sector {rlo <= |z| <= rhi}. Relies on |f(x+iy)| being
// non-increasing in |x|, which holds for every catalog kind.
std::vector<ActiveSquare> active_squares(const TestFunction& f, double eps,
                                         double t, double rlo, double rhi,
                                         const LevelSetSampling& samp = {});

struct PhiOptions {
    quad::Options outer{.tol = 3e-3, .max_cells = 20000};
    LevelSetSampling sampling;
    quad::ClassifyOptions classify;
};

// Truncation ladder of the level-set functional
//   Phi(eps) = int_{C+} ( int_{V_{eps,t}} (Im w)^{beta-t} / |conj w - z|^{beta+2} )^q (Im z)^nu.
// The inner integral is discretized on Whitney squares (one point mass per
// square at the center, weight (Im w_k)^{beta-t} m2(Delta cap V cap R)); the
// outer integral runs adaptively in log-polar coordinates. Each ladder
// increment is integrated directly over the newly added outer shells plus
// the pointwise growth of the inner sum, so increments are nonnegative.
quad::LadderReport phi_functional(const TestFunction& f, double eps,
                                  const HalfPlaneParams& params,
                                  const quad::Ladder& lad = {},
                                  const PhiOptions& opt = {});

struct BisectOptions {
    double eps_tol = 1.0 / 128.0;  // bracket width, relative to the sup norm
    double margin = 0.05;          // upper seed (1+margin) * sup norm
    bool coerce_inconclusive_up = true;  // Inconclusive counts as Divergent
};

// Bisection for l2 = inf{eps : Phi(eps) finite}. Valid because Phi is
// antitone in eps (level-set inclusion). With the default policy an
// Inconclusive probe counts as Divergent, which biases the reported
// distance upward, never below the justified value.
DistanceEstimate estimate_l2(const TestFunction& f,
                             const HalfPlaneParams& params,
                             const quad::Ladder& lad = {.max_exp = 14},
                             const BisectOptions& bopt = {},
                             const PhiOptions& popt = {});

// Constructive split f = f1 + f2 from the reproducing formula: f2 collects
// the kernel mass over V_{eps,t}, f1 is the reproducing integral minus f2.
struct HalfPlaneDecomposition {
    TestFunction f;
    HalfPlaneParams params;
    quad::Ladder ladder;
    struct Mass {
        cplx pole;    // conj(w) for a sample point w
        cplx weight;  // (beta+1)/pi * f(w) (Im w)^beta * dA
    };
    std::vector<Mass> masses;

    cplx f2(cplx z) const;  // cheap: point-mass sum
    cplx f1(cplx z) const;  // reproduce(f, z) - f2(z); quadrature per call
};

HalfPlaneDecomposition decompose(const TestFunction& f, double eps,
                                 const HalfPlaneParams& params,
                                 const quad::Ladder& lad = {},
                                 const PhiOptions& popt = {});

struct DecompositionReport {
    double eps = 0.0;
    double f1_sup_weighted = 0.0;  // grid sup |f1| (Im z)^t
    double f1_ratio = 0.0;         // f1_sup_weighted / eps
    quad::Verdict f2_norm_verdict = quad::Verdict::Inconclusive;
    double f2_norm = 0.0;          // ||f2||_{q,nu} when convergent
    double max_residual = 0.0;     // max |f1+f2-f| / (1+|f|), 20 fixed points
};

DecompositionReport check_decomposition(const TestFunction& f, double eps,
                                        const HalfPlaneParams& params,
                                        const quad::Ladder& lad = {},
                                        const PhiOptions& popt = {});

// Same report over several eps values, sharing the reproducing-integral
// grid between them (it does not depend on eps).
std::vector<DecompositionReport> decomposition_sweep(
    const TestFunction& f, const std::vector<double>& eps_list,
    const HalfPlaneParams& params, const quad::Ladder& lad = {},
    const PhiOptions& popt = {});

}  // namespace berg
