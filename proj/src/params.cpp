#include "berg/params.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

namespace berg {

namespace {

[[noreturn]] void fail(const std::string& what) {
    throw HypothesisViolation(what);
}

std::string num(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

}  // namespace

HalfPlaneParams validate_halfplane(double q, double nu, double beta) {
    if (!(q > 0.0)) fail("q > 0 fails: q = " + num(q));
    if (!(nu > -1.0)) fail("nu > -1 fails: nu = " + num(nu));
    const double t = (nu + 2.0) / q;
    if (q > 1.0) {
        const double lo = std::max(nu / q, t - 1.0);
        if (!(beta > lo))
            fail("beta > max(nu/q, (nu+2)/q - 1) fails: beta = " + num(beta) +
                 ", bound = " + num(lo));
    } else {
        if (!(beta > t - 2.0))
            fail("beta > (nu+2)/q - 2 fails: beta = " + num(beta) +
                 ", bound = " + num(t - 2.0));
    }
    // Derived legality of the kernel integral estimate with alpha = nu:
    // (beta+2)q - 2 > nu follows from the accepted inequalities.
    assert((beta + 2.0) * q - 2.0 > nu);
    return HalfPlaneParams{q, nu, t, beta};
}

BallParams validate_ball(int n, double q, double s, double t) {
    if (n != 1 && n != 2)
        throw UnsupportedDimension("ball dimension must be 1 or 2, got " +
                                   std::to_string(n));
    if (!(q > 0.0)) fail("q > 0 fails: q = " + num(q));
    if (!(s * q > n))
        fail("s*q > n fails: s*q = " + num(s * q) + ", n = " + num(n));
    if (!(t > s)) fail("t > s fails: t = " + num(t) + ", s = " + num(s));
    if (q > 1.0) {
        if (!(t > (s + n + 1.0) / q))
            fail("t > (s+n+1)/q fails: t = " + num(t) +
                 ", bound = " + num((s + n + 1.0) / q));
    } else {
        if (!(q * (t + n + 1.0) - (n + 1.0) > -1.0))
            fail("q(t+n+1) - (n+1) > -1 fails: lhs = " +
                 num(q * (t + n + 1.0) - (n + 1.0)));
    }
    return BallParams{n, q, s, t};
}

NormParams validate_norm(double p, double alpha) {
    if (!(p > 0.0)) fail("p > 0 fails: p = " + num(p));
    if (!(alpha > -1.0)) fail("alpha > -1 fails: alpha = " + num(alpha));
    return NormParams{p, alpha};
}

void validate_growth_weight(double nu) {
    if (!(nu > 0.0)) fail("nu > 0 fails: nu = " + num(nu));
}

}  // namespace berg
