#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>

#include "berg/catalog.hpp"
#include "berg/halfplane.hpp"  // SupNormResult, NormResult
#include "berg/params.hpp"
#include "berg/quad.hpp"

namespace berg {

using cplx2 = std::array<cplx, 2>;

// Defining function delta(z) = 1 - |z|^2 and the Henkin-Ramirez function
// hr(z, xi) = 1 - <z, xi> (Hermitian inner product, conjugate on xi).
// Re hr >= 1 - |z||xi| > 0 inside the open ball, so negative principal
// powers of hr are nonsingular there.
double ball_delta(cplx z);
double ball_delta2(const cplx2& z);
cplx ball_hr(cplx z, cplx xi);
cplx ball_hr2(const cplx2& z, const cplx2& xi);

// Normalizing constant c_{n,t} of the kernel K_t(z,xi) =
// c_{n,t} (1 - <z,xi>)^{-(n+1+t)}, fixed by int_B K_t(0,.) delta^t dV = 1.
// Computed once per (n,t) by quadrature and cached; the closed forms
// (t+1)/pi (n=1) and (t+1)(t+2)/pi^2 (n=2) serve as cross-checks in tests.
double ball_norm_const(int n, double t);

cplx kernel_ball(cplx z, cplx xi, double t);
cplx kernel_ball2(const cplx2& z, const cplx2& xi, double t);

// --- n = 2 shell integration (real dimension 4): stratified Monte Carlo
// over the dyadic delta-shells with a fixed seed. The sampler is
// implemented from raw mt19937_64 output so streams are identical across
// standard libraries.
struct McOptions {
    std::uint64_t seed = 20240901;
    long samples_per_shell = 40000;
};

// Deterministic uniform sampler over radial shells a <= |x| <= b of R^4
// (points returned in C^2 coordinates). Built on raw mt19937_64 output so
// the stream is identical across standard libraries.
class Shell4Sampler {
 public:
    explicit Shell4Sampler(std::uint64_t seed) : eng_(seed) {}
    cplx2 sample(double a4, double b4);  // bounds given as a^4, b^4

 private:
    double u_() { return double(eng_() >> 11) * 0x1.0p-53; }
    void normal2_(double& a, double& b);
    std::mt19937_64 eng_;
};

// Fourth powers of the radius bounds of ladder shell m (delta-shells
// delta in [base^-m, base^-(m-1)], the first level reaching the center).
void ball_shell_bounds4(const quad::Ladder& lad, int m, double& a4, double& b4);

quad::LadderReport ball2_ladder_mc(const quad::Ladder& lad,
                                   const std::function<double(const cplx2&)>& g,
                                   const McOptions& mc,
                                   const quad::ClassifyOptions& copt = {});

quad::LadderReportC ball2_ladder_mc_c(
    const quad::Ladder& lad, const std::function<cplx(const cplx2&)>& g,
    const McOptions& mc, const quad::ClassifyOptions& copt = {});

// Reproducing integral int_B f(xi) K_t(z,xi) delta^t(xi) dV(xi) on the
// shell ladder; throws NotReproducible unless the magnitude ladder
// classifies Convergent.
cplx reproduce_ball(const TestFunction& f, cplx z, double t,
                    const quad::Ladder& lad = {},
                    const quad::Options& opt = {.tol = 1e-6},
                    const quad::ClassifyOptions& copt = {});

cplx reproduce_ball2(const TestFunction& f, const cplx2& z, double t,
                     const quad::Ladder& lad = {}, const McOptions& mc = {},
                     const quad::ClassifyOptions& copt = {});

// Grid sup norm of |f(z)| delta(z)^s over delta-levels 2^-l. Same
// growth-detection contract as the half-plane grid norm.
struct BallSupGrid {
    int n_theta = 256;
    int max_level = 20;   // levels delta = 2^-l, l = 0..max_level
    int per_level = 4;
    int n_phi = 9;        // n=2 only: |z2|/|z| latitude samples
};

SupNormResult norm_inf_ball(const TestFunction& f, double s,
                            const BallSupGrid& grid = {});

// Ladder evaluation of ||f||_{A^q_s} = (int |f|^q delta^{sq-n-1} dV)^{1/q}.
NormResult norm_q_s_ball(const TestFunction& f, double q, double s,
                         const quad::Ladder& lad = {},
                         const quad::Options& opt = {.tol = 1e-5},
                         const quad::ClassifyOptions& copt = {},
                         const McOptions& mc = {});

// Lemma-style ratio (int |f| |hr(z,.)|^r delta^s dV)^p over
// int |f|^p |hr(z,.)|^{rp} delta^{p(s+n+1)-(n+1)} dV. Requires r > 0,
// 0 < p <= 1, s > -1 and p(s+n+1) > n. degenerate flags the 0/0 case
// (f identically zero), where the ratio is reported as 0 by convention.
struct Be1Result {
    double ratio = 0.0;
    bool degenerate = false;
};

Be1Result be1_ratio(const TestFunction& f, double r, double s, double p,
                    cplx z, const quad::Ladder& lad = {},
                    const quad::Options& opt = {.tol = 1e-5});

// Forelli-Rudin ratio int_B |hr(z,xi)|^{-beta} delta^{sigma-1}(z) dV(z)
// divided by delta(xi)^{sigma+n-beta}, n = 1. Requires sigma > 0 and
// sigma + n - beta < 0; bounded in xi by the lemma.
double be2_ratio(cplx xi, double beta, double sigma,
                 const quad::Ladder& lad = {},
                 const quad::Options& opt = {.tol = 1e-5});

}  // namespace berg
