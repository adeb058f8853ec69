#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>

#include "berg/errors.hpp"

namespace berg {

using cplx = std::complex<double>;

enum class FnDomain { HalfPlane, Ball };

// Closed catalog of test functions. Each kind is a closed form holomorphic
// on its domain with the branch choices fixed so that the branch cut stays
// outside the open domain:
//   PowerShift(a):  (z+i)^{-a}           on C+  (z+i has Im > 1)
//   PurePower(t):   z^{-t}               on C+  (arg z in (0, pi))
//   BallPole(s):    (1 - <z, e1>)^{-s}   on B_n (Re(1 - z1) > 0)
//   Monomial(k):    z1^{k1} z2^{k2}      on B_n
//   Constant(c), Zero
struct TestFunction {
    enum class Kind { PowerShift, PurePower, BallPole, Constant, Zero, Monomial };

    FnDomain domain = FnDomain::HalfPlane;
    int n = 1;  // ball dimension, 1 or 2
    Kind kind = Kind::Zero;
    double param = 0.0;  // a / t / s / c by kind
    std::array<int, 2> degree{0, 0};
    double scale = 1.0;  // overall positive multiplier

    // Evaluate at a point of C+ or B_1.
    cplx eval(cplx z) const;
    // Evaluate at a point of B_2.
    cplx eval2(const std::array<cplx, 2>& z) const;

    // |f(z)| without the domain check, used by hot loops that generate
    // their own in-domain points.
    cplx eval_unchecked(cplx z) const;
    cplx eval2_unchecked(const std::array<cplx, 2>& z) const;

    std::string name() const;
};

TestFunction power_shift(double a, double scale = 1.0);
TestFunction pure_power(double t, double scale = 1.0);
TestFunction ball_pole(double s, int n = 1, double scale = 1.0);
TestFunction constant(double c, FnDomain dom, int n = 1);
TestFunction zero_fn(FnDomain dom, int n = 1);
TestFunction monomial(int k1, int k2 = 0, int n = 1, double scale = 1.0);
TestFunction scaled(TestFunction f, double lambda);

// Exact sup-norm sup |f| * weight_factor^w when the catalog knows it:
//   half-plane weight (Im z)^w, ball weight delta(z)^w = (1-|z|^2)^w.
// Absent (nullopt) when no closed form is recorded.
std::optional<double> analytic_sup_norm(const TestFunction& f, double weight);

// Membership f in A^p_alpha(C+) resp. A^q_s(B_n) when decidable in closed
// form; nullopt when the catalog does not know.
std::optional<bool> in_bergman_halfplane(const TestFunction& f, double p, double alpha);
std::optional<bool> in_bergman_ball(const TestFunction& f, double q, double s);

}  // namespace berg
