#include "berg/catalog.hpp"

#include <cmath>
#include <sstream>

namespace berg {

namespace {

const cplx kI{0.0, 1.0};

cplx ipow(cplx z, int k) {
    cplx r{1.0, 0.0};
    for (int i = 0; i < k; ++i) r *= z;
    return r;
}

}  // namespace

cplx TestFunction::eval_unchecked(cplx z) const {
    switch (kind) {
        case Kind::PowerShift:
            return scale * std::pow(z + kI, -param);
        case Kind::PurePower:
            return scale * std::pow(z, -param);
        case Kind::BallPole:
            return scale * std::pow(cplx{1.0, 0.0} - z, -param);
        case Kind::Constant:
            return cplx{scale * param, 0.0};
        case Kind::Zero:
            return cplx{0.0, 0.0};
        case Kind::Monomial:
            return scale * ipow(z, degree[0]);
    }
    return {};
}

cplx TestFunction::eval2_unchecked(const std::array<cplx, 2>& z) const {
    switch (kind) {
        case Kind::BallPole:
            return scale * std::pow(cplx{1.0, 0.0} - z[0], -param);
        case Kind::Constant:
            return cplx{scale * param, 0.0};
        case Kind::Zero:
            return cplx{0.0, 0.0};
        case Kind::Monomial:
            return scale * ipow(z[0], degree[0]) * ipow(z[1], degree[1]);
        default:
            throw OutOfDomain("function " + name() + " is not defined on B_2");
    }
}

cplx TestFunction::eval(cplx z) const {
    if (domain == FnDomain::HalfPlane) {
        if (!(z.imag() > 0.0))
            throw OutOfDomain("point not in the open upper half-plane");
    } else {
        if (n != 1)
            throw OutOfDomain("use eval2 for B_2 functions");
        if (!(std::norm(z) < 1.0))
            throw OutOfDomain("point not in the open unit disk");
    }
    return eval_unchecked(z);
}

cplx TestFunction::eval2(const std::array<cplx, 2>& z) const {
    if (domain != FnDomain::Ball || n != 2)
        throw OutOfDomain("eval2 requires a B_2 function");
    if (!(std::norm(z[0]) + std::norm(z[1]) < 1.0))
        throw OutOfDomain("point not in the open unit ball of C^2");
    return eval2_unchecked(z);
}

std::string TestFunction::name() const {
    std::ostringstream os;
    if (scale != 1.0) os << scale << "*";
    switch (kind) {
        case Kind::PowerShift: os << "power_shift(" << param << ")"; break;
        case Kind::PurePower: os << "pure_power(" << param << ")"; break;
        case Kind::BallPole: os << "ball_pole(" << param << ")"; break;
        case Kind::Constant: os << "constant(" << param << ")"; break;
        case Kind::Zero: os << "zero"; break;
        case Kind::Monomial:
            os << "monomial(" << degree[0] << "," << degree[1] << ")";
            break;
    }
    return os.str();
}

TestFunction power_shift(double a, double scale) {
    return {FnDomain::HalfPlane, 1, TestFunction::Kind::PowerShift, a, {0, 0}, scale};
}

TestFunction pure_power(double t, double scale) {
    return {FnDomain::HalfPlane, 1, TestFunction::Kind::PurePower, t, {0, 0}, scale};
}

TestFunction ball_pole(double s, int n, double scale) {
    return {FnDomain::Ball, n, TestFunction::Kind::BallPole, s, {0, 0}, scale};
}

TestFunction constant(double c, FnDomain dom, int n) {
    return {dom, n, TestFunction::Kind::Constant, c, {0, 0}, 1.0};
}

TestFunction zero_fn(FnDomain dom, int n) {
    return {dom, n, TestFunction::Kind::Zero, 0.0, {0, 0}, 1.0};
}

TestFunction monomial(int k1, int k2, int n, double scale) {
    return {FnDomain::Ball, n, TestFunction::Kind::Monomial, 0.0, {k1, k2}, scale};
}

TestFunction scaled(TestFunction f, double lambda) {
    f.scale *= lambda;
    return f;
}

std::optional<double> analytic_sup_norm(const TestFunction& f, double weight) {
    using K = TestFunction::Kind;
    switch (f.kind) {
        case K::Zero:
            return 0.0;
        case K::PurePower:
            // |z^{-t}| y^t = (sin arg z)^t <= 1, attained at arg z = pi/2.
            if (weight == f.param) return f.scale;
            return std::nullopt;
        case K::PowerShift:
            // (y/|z+i|)^a < 1, supremum in the limit y -> inf at x = 0.
            if (weight == f.param) return f.scale;
            return std::nullopt;
        case K::BallPole:
            // (1-|xi|^2)^s / |1-xi|^s <= (1+|xi|)^s, limit 2^s along the
            // real radius.
            if (f.domain == FnDomain::Ball && weight == f.param)
                return f.scale * std::pow(2.0, f.param);
            return std::nullopt;
        case K::Constant:
            if (f.domain == FnDomain::Ball && weight >= 0.0)
                return f.scale * f.param;  // delta <= 1, attained at 0
            return std::nullopt;  // unbounded on C+ for weight > 0
        default:
            return std::nullopt;
    }
}

std::optional<bool> in_bergman_halfplane(const TestFunction& f, double p, double alpha) {
    using K = TestFunction::Kind;
    switch (f.kind) {
        case K::Zero:
            return true;
        case K::PowerShift:
            // integral |z+i|^{-ap} y^alpha converges iff ap > alpha + 2
            return f.param * p > alpha + 2.0;
        case K::PurePower:
            return false;  // scale invariance forces divergence at 0 or inf
        case K::Constant:
            return f.param == 0.0;
        default:
            return std::nullopt;
    }
}

std::optional<bool> in_bergman_ball(const TestFunction& f, double q, double s) {
    (void)q;
    using K = TestFunction::Kind;
    switch (f.kind) {
        case K::Zero:
        case K::Monomial:
            return true;
        case K::Constant:
            return true;
        case K::BallPole:
            // int |1-xi_1|^{-sigma q} delta^{sq-n-1} dV finite iff sigma < s
            return f.param < s;
        default:
            return std::nullopt;
    }
}

}  // namespace berg
