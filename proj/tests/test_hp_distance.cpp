#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "berg/hp_distance.hpp"

using namespace berg;

namespace {
const cplx I{0.0, 1.0};
const HalfPlaneParams kHp = validate_halfplane(2.0, 0.0, 1.0);  // t = 1
}

TEST_CASE("level-set membership closed forms") {
    CHECK(levelset_member(pure_power(1.0), 0.9, 1.0, I));
    // |z^{-2}| y^2 at z = e^{i pi/6}: (sin 30)^2 = 0.25 < 0.3.
    const cplx z{std::cos(M_PI / 6), std::sin(M_PI / 6)};
    CHECK_FALSE(levelset_member(pure_power(2.0), 0.3, 2.0, z));
    CHECK(levelset_member(pure_power(2.0), 0.24, 2.0, z));
    CHECK_THROWS_AS(levelset_member(pure_power(1.0), 0.5, 1.0, {1.0, 0.0}),
                    OutOfDomain);
}

TEST_CASE("empty level set above the sup norm") {
    // sup |pure_power(1)| y = 1.
    for (double th : {0.3, 1.2, 2.8}) {
        for (double r : {0.1, 1.0, 9.0}) {
            const cplx z{r * std::cos(th), r * std::sin(th)};
            CHECK_FALSE(levelset_member(pure_power(1.0), 1.01, 1.0, z));
        }
    }
}

TEST_CASE("exact scaling identity of membership") {
    const TestFunction f = power_shift(2.0);
    const TestFunction g = scaled(f, 5.0);
    for (double x : {-2.0, 0.0, 0.7}) {
        for (double y : {0.05, 0.8, 3.0}) {
            for (double eps : {0.01, 0.1, 0.2}) {
                CHECK(levelset_member(g, 5.0 * eps, 1.0, {x, y}) ==
                      levelset_member(f, eps, 1.0, {x, y}));
            }
        }
    }
}

TEST_CASE("active squares cover the sector level set") {
    // V_{0.5,1}(pure_power(1)) = {sin theta >= 0.5}.
    const auto squares = active_squares(pure_power(1.0), 0.5, 1.0, 0.25, 4.0);
    CHECK(!squares.empty());
    double area = 0.0;
    for (const ActiveSquare& a : squares) {
        CHECK(a.area > 0.0);
        CHECK(a.area <= a.sq.area() + 1e-15);
        area += a.area;
    }
    // Exact area of the sector slice: (2pi/3)/2 * (16 - 1/16).
    const double exact = (M_PI / 3.0) * (16.0 - 0.0625);
    CHECK(area == doctest::Approx(exact).epsilon(0.05));
}

TEST_CASE("active squares scale exactly with the function") {
    const auto a = active_squares(power_shift(2.0), 0.05, 1.0, 0.125, 8.0);
    const auto b =
        active_squares(power_shift(2.0, 2.0), 0.1, 1.0, 0.125, 8.0);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].sq == b[i].sq);
        CHECK(a[i].area == b[i].area);
    }
}

TEST_CASE("phi ladder verdicts") {
    SUBCASE("empty level set gives zero, convergent") {
        const quad::LadderReport rep =
            phi_functional(pure_power(1.0), 1.5, kHp);
        CHECK(rep.verdict == quad::Verdict::Convergent);
        CHECK(rep.total() == 0.0);
    }
    SUBCASE("compact level set converges") {
        // sup |power_shift(2)| y = 1/4, so eps = 0.1 cuts a nonempty set.
        const quad::LadderReport rep =
            phi_functional(power_shift(2.0), 0.1, kHp);
        CHECK(rep.verdict == quad::Verdict::Convergent);
        CHECK(rep.total() > 0.0);
    }
    SUBCASE("homogeneous function diverges below its norm") {
        const quad::LadderReport rep =
            phi_functional(pure_power(1.0), 0.5, kHp, {.max_exp = 14});
        CHECK(rep.verdict == quad::Verdict::Divergent);
    }
}

TEST_CASE("phi is antitone in eps per level") {
    const quad::LadderReport lo = phi_functional(power_shift(2.0), 0.06, kHp,
                                                 {.max_exp = 10});
    const quad::LadderReport hi = phi_functional(power_shift(2.0), 0.12, kHp,
                                                 {.max_exp = 10});
    REQUIRE(lo.values.size() == hi.values.size());
    for (size_t i = 0; i < lo.values.size(); ++i)
        CHECK(hi.values[i] <= lo.values[i] * (1.0 + 1e-9) + 1e-12);
}

TEST_CASE("distance bracket for a member function contains zero") {
    const DistanceEstimate est = estimate_l2(power_shift(2.0), kHp);
    CHECK(est.eps_lo == 0.0);
    CHECK(est.eps_hi <= 0.1 * est.sup_norm);
    CHECK(est.policy == "inconclusive->divergent");
    // Bracket validity from the audit trail.
    for (const Probe& p : est.probes) {
        if (p.eps >= est.eps_hi)
            CHECK(p.effective == quad::Verdict::Convergent);
        if (p.eps <= est.eps_lo)
            CHECK(p.effective != quad::Verdict::Convergent);
    }
}

TEST_CASE("unbounded functions are rejected") {
    CHECK_THROWS_AS(estimate_l2(constant(1.0, FnDomain::HalfPlane), kHp),
                    UnboundedFunction);
}

TEST_CASE("zero function has zero distance") {
    const DistanceEstimate est = estimate_l2(zero_fn(FnDomain::HalfPlane), kHp);
    CHECK(est.eps_lo == 0.0);
    CHECK(est.eps_hi == 0.0);
}

TEST_CASE("decomposition with empty level set reproduces f") {
    // eps above the sup norm: f2 == 0 and f1 is the reproducing integral.
    const HalfPlaneDecomposition dec =
        decompose(power_shift(2.0), 0.5, kHp);
    CHECK(dec.masses.empty());
    const cplx z{0.5, 1.0};
    CHECK(std::abs(dec.f2(z)) == 0.0);
    CHECK(std::abs(dec.f1(z) - power_shift(2.0).eval(z)) < 2e-3);
}

TEST_CASE("decomposition check report") {
    const DecompositionReport rep =
        check_decomposition(power_shift(2.0), 0.12, kHp);
    CHECK(rep.max_residual <= 2e-3);
    CHECK(rep.f2_norm_verdict == quad::Verdict::Convergent);
    CHECK(rep.f1_ratio > 0.0);
    CHECK(std::isfinite(rep.f1_ratio));
}

TEST_CASE("decompose requires a convergent functional") {
    CHECK_THROWS_AS(decompose(pure_power(1.0), 0.5, kHp, {.max_exp = 14}),
                    NotConvergent);
}
