#pragma once

#include <complex>
#include <optional>

#include "berg/catalog.hpp"
#include "berg/params.hpp"
#include "berg/quad.hpp"

namespace berg {

// Bergman kernel factor K_beta(z, w) = ((beta+1)/pi) (conj(w) - z)^{-(2+beta)}.
// For z, w in C+ we have Im(conj(w) - z) = -(Im w + Im z) < 0, so
// |conj(w) - z| >= Im w + Im z > 0 and the principal power is well defined.
cplx hp_kernel(cplx z, cplx w, double beta);

// Kernel power with the branch the representation formula needs:
// 2^beta (i(conj(w)-z))^{-(2+beta)}. The rotation by i moves conj(w)-z into
// the right half-plane (principal power analytic there) and makes the power
// positive on the diagonal, which is what pins the constant so that the
// integral representation reproduces f exactly. Argument d = conj(w) - z.
cplx rep_kernel_pow(cplx d, double beta);

// Log-spaced polar evaluation grid for sup norms.
struct SupGrid {
    int n_theta = 256;       // theta = pi k / n_theta, k = 1..n_theta-1
    int min_exp = -20;       // radii 2^min_exp .. 2^max_exp
    int max_exp = 20;
    int per_octave = 8;
};

struct SupNormResult {
    double value = 0.0;          // grid maximum, a lower bound of the sup
    bool unbounded = false;      // geometric growth toward a grid edge
    std::optional<double> analytic;  // catalog value when known
    double gap = 0.0;            // (analytic - value)/analytic when known
};

// Grid maximum of |f(z)| (Im z)^nu. A finite grid can only certify a lower
// bound; the result carries the analytic value and the relative gap when
// the catalog knows the exact sup.
SupNormResult norm_inf(const TestFunction& f, double nu, const SupGrid& grid = {});

struct NormResult {
    quad::Verdict verdict = quad::Verdict::Inconclusive;
    double value = 0.0;  // the norm (p-th root) when Convergent
    quad::LadderReport report;
};

// Ladder evaluation of ||f||_{p,alpha}. Divergent verdict means f is not a
// member of A^p_alpha as far as the ladder can tell.
NormResult norm_p_alpha(const TestFunction& f, double p, double alpha,
                        const quad::Ladder& lad = {},
                        const quad::Options& opt = {.tol = 1e-5},
                        const quad::ClassifyOptions& copt = {});

// Reproducing integral (beta+1)/pi int f(w) (Im w)^beta (conj w - z)^{-(2+beta)}.
// Requires f in A^p_alpha (catalog flag) and beta admissible:
//   p <= 1: beta >= (2+alpha)/p - 2,  p >= 1: beta >= (1+alpha)/p - 1.
cplx reproduce(const TestFunction& f, double p, double alpha, double beta,
               cplx z, const quad::Ladder& lad = {},
               const quad::Options& opt = {.tol = 1e-6},
               const quad::ClassifyOptions& copt = {});

void require_reproduce_beta(double p, double alpha, double beta);

// int_{C+} (Im z)^alpha |conj w - z|^{-lambda_exp} dm2(z) divided by
// (Im w)^{alpha + 2 - lambda_exp}. Scale and translation invariance make
// this ratio a constant C(alpha, lambda_exp) independent of w.
double lemma3_ratio(cplx w, double alpha, double lambda_exp,
                    const quad::Ladder& lad = {},
                    const quad::Options& opt = {.tol = 1e-5});

// Empirical constant of |F(z)| <= C y^{-(nu+2)/p} ||F||: grid max of
// |f(z)| (Im z)^{(nu+2)/p} / ||f||_{p,nu}.
double pointwise_ratio(const TestFunction& f, double p, double nu,
                       const SupGrid& grid = {.min_exp = -8, .max_exp = 8},
                       const quad::Ladder& lad = {});

// Line-integral variant: max over y = 2^e of
// (int |f(x+iy)|^p dx)^{1/p} y^{(nu+1)/p} / ||f||_{p,nu}.
double line_norm_ratio(const TestFunction& f, double p, double nu,
                       int y_min_exp = -6, int y_max_exp = 6,
                       const quad::Ladder& lad = {});

}  // namespace berg
