#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "berg/ball.hpp"

using namespace berg;

namespace {
const cplx2 O{cplx{0.0, 0.0}, cplx{0.0, 0.0}};
}

TEST_CASE("defining function and Henkin-Ramirez values") {
    CHECK(ball_delta({0.0, 0.0}) == 1.0);
    CHECK(ball_delta({0.6, 0.0}) == doctest::Approx(0.64));
    CHECK(ball_delta2({cplx{0.5, 0.0}, cplx{0.0, 0.5}}) ==
          doctest::Approx(0.5));

    CHECK(std::abs(ball_hr({0.0, 0.0}, {0.3, 0.4}) - cplx{1.0, 0.0}) < 1e-15);
    // hr(z, xi) = 1 - z conj(xi) in n = 1.
    CHECK(std::abs(ball_hr({0.5, 0.0}, {0.0, 0.5}) - cplx{1.0, 0.25}) < 1e-15);
    CHECK_THROWS_AS(ball_hr({1.0, 0.5}, {0.0, 0.0}), OutOfDomain);

    // Re hr > 0 inside the ball.
    for (double th : {0.2, 1.9, 4.4}) {
        const cplx z = 0.95 * std::polar(1.0, th);
        const cplx xi = 0.9 * std::polar(1.0, 2.0 * th);
        CHECK(ball_hr(z, xi).real() > 0.0);
    }
}

TEST_CASE("kernel normalization constants match closed forms") {
    CHECK(ball_norm_const(1, 0.0) == doctest::Approx(1.0 / M_PI).epsilon(1e-9));
    CHECK(ball_norm_const(1, 3.0) == doctest::Approx(4.0 / M_PI).epsilon(1e-9));
    CHECK(ball_norm_const(2, 2.0) ==
          doctest::Approx(12.0 / (M_PI * M_PI)).epsilon(1e-9));
    CHECK(ball_norm_const(2, 0.5) ==
          doctest::Approx(1.5 * 2.5 / (M_PI * M_PI)).epsilon(1e-9));
}

TEST_CASE("kernel values and type bound") {
    CHECK(std::abs(kernel_ball({0.0, 0.0}, {0.0, 0.0}, 0.0) -
                   cplx{1.0 / M_PI, 0.0}) < 1e-9);
    // |K_t(z,xi)| |1 - <z,xi>|^{n+1+t} = c_{n,t} identically.
    for (double t : {0.0, 1.0, 2.5}) {
        const cplx z{0.4, -0.3}, xi{-0.2, 0.7};
        const double lhs =
            std::abs(kernel_ball(z, xi, t)) * std::pow(std::abs(ball_hr(z, xi)), 2.0 + t);
        CHECK(lhs == doctest::Approx(ball_norm_const(1, t)).epsilon(1e-9));

        const cplx2 z2{cplx{0.3, 0.1}, cplx{-0.2, 0.4}};
        const cplx2 xi2{cplx{0.1, -0.5}, cplx{0.3, 0.2}};
        const double lhs2 = std::abs(kernel_ball2(z2, xi2, t)) *
                            std::pow(std::abs(ball_hr2(z2, xi2)), 3.0 + t);
        CHECK(lhs2 == doctest::Approx(ball_norm_const(2, t)).epsilon(1e-9));
    }
}

TEST_CASE("kernel is unitarily invariant in n = 2") {
    const cplx2 z{cplx{0.3, 0.1}, cplx{-0.2, 0.4}};
    const cplx2 xi{cplx{0.1, -0.5}, cplx{0.3, 0.2}};
    // Coordinate swap and a diagonal phase rotation are unitary.
    const cplx2 zs{z[1], z[0]}, xis{xi[1], xi[0]};
    CHECK(std::abs(kernel_ball2(zs, xis, 1.0) - kernel_ball2(z, xi, 1.0)) <
          1e-13);
    const cplx ph = std::polar(1.0, 0.8);
    const cplx2 zr{ph * z[0], std::conj(ph) * z[1]};
    const cplx2 xir{ph * xi[0], std::conj(ph) * xi[1]};
    CHECK(std::abs(kernel_ball2(zr, xir, 1.0) - kernel_ball2(z, xi, 1.0)) <
          1e-13);
}

TEST_CASE("shell bounds and sampler") {
    double a4 = -1.0, b4 = -1.0;
    ball_shell_bounds4({}, 1, a4, b4);
    CHECK(a4 == 0.0);
    CHECK(b4 == doctest::Approx(0.25));
    ball_shell_bounds4({}, 2, a4, b4);
    CHECK(a4 == doctest::Approx(0.25));
    CHECK(b4 == doctest::Approx(9.0 / 16.0));

    Shell4Sampler s1(42), s2(42);
    for (int i = 0; i < 200; ++i) {
        const cplx2 x = s1.sample(0.25, 9.0 / 16.0);
        const cplx2 y = s2.sample(0.25, 9.0 / 16.0);
        CHECK(x == y);  // same seed, same stream
        const double r2 = std::norm(x[0]) + std::norm(x[1]);
        CHECK(r2 * r2 >= 0.25 - 1e-12);
        CHECK(r2 * r2 <= 9.0 / 16.0 + 1e-12);
    }
}

TEST_CASE("n = 2 Monte Carlo ladder measures the ball volume") {
    // vol(B_2) = pi^2/2 under Lebesgue measure on C^2 = R^4.
    const quad::LadderReport rep = ball2_ladder_mc(
        {}, [](const cplx2&) { return 1.0; }, {.samples_per_shell = 20000});
    CHECK(rep.verdict == quad::Verdict::Convergent);
    CHECK(rep.total() ==
          doctest::Approx(M_PI * M_PI / 2.0).epsilon(0.01));
}

TEST_CASE("reproducing integral on the disk") {
    CHECK(std::abs(reproduce_ball(constant(1.0, FnDomain::Ball), {0.3, 0.1},
                                  1.0) -
                   cplx{1.0, 0.0}) < 1e-4);
    CHECK(std::abs(reproduce_ball(ball_pole(1.0), {0.0, 0.0}, 2.0) -
                   cplx{1.0, 0.0}) < 1e-3);
    const TestFunction m = monomial(1, 0, 1);
    CHECK(std::abs(reproduce_ball(m, {0.3, 0.0}, 1.5) - cplx{0.3, 0.0}) <
          1e-3);
    CHECK_THROWS_AS(reproduce_ball(constant(1.0, FnDomain::Ball), {1.2, 0.0},
                                   1.0),
                    OutOfDomain);
}

TEST_CASE("reproducing integral on B_2") {
    const cplx2 z{cplx{0.2, 0.1}, cplx{-0.3, 0.0}};
    const cplx r1 = reproduce_ball2(constant(1.0, FnDomain::Ball, 2), z, 1.0);
    CHECK(std::abs(r1 - cplx{1.0, 0.0}) < 1e-2);
    const TestFunction m = monomial(1, 0, 2);
    const cplx r2 = reproduce_ball2(m, z, 1.0);
    CHECK(std::abs(r2 - m.eval2(z)) < 1e-2);
}

TEST_CASE("grid sup norm over the ball") {
    SUBCASE("ball_pole(1) with weight s = 1 has sup 2") {
        const SupNormResult r = norm_inf_ball(ball_pole(1.0), 1.0);
        CHECK_FALSE(r.unbounded);
        CHECK(r.value == doctest::Approx(2.0).epsilon(5e-3));
        CHECK(r.analytic.has_value());
    }
    SUBCASE("supercritical pole is flagged unbounded") {
        const SupNormResult r = norm_inf_ball(ball_pole(2.0), 1.0);
        CHECK(r.unbounded);
    }
    SUBCASE("zero function") {
        const SupNormResult r = norm_inf_ball(zero_fn(FnDomain::Ball), 1.0);
        CHECK_FALSE(r.unbounded);
        CHECK(r.value == 0.0);
    }
}

TEST_CASE("integral norm on the disk") {
    // q = 2, s = 1: weight delta^0, so ||c||_{2,1} = |c| sqrt(pi).
    const NormResult c = norm_q_s_ball(constant(2.0, FnDomain::Ball), 2.0, 1.0);
    CHECK(c.verdict == quad::Verdict::Convergent);
    CHECK(c.value == doctest::Approx(2.0 * std::sqrt(M_PI)).epsilon(1e-3));

    const NormResult ok = norm_q_s_ball(ball_pole(0.5), 2.0, 1.0);
    CHECK(ok.verdict == quad::Verdict::Convergent);
    CHECK(ok.value > 0.0);

    const NormResult bad = norm_q_s_ball(ball_pole(1.2), 2.0, 1.0);
    CHECK(bad.verdict == quad::Verdict::Divergent);

    CHECK_THROWS_AS(norm_q_s_ball(ball_pole(0.5), 2.0, 0.25),
                    HypothesisViolation);  // sq <= n
}

TEST_CASE("kernel-weight comparison ratio") {
    const Be1Result r =
        be1_ratio(ball_pole(1.0), 2.0, 1.0, 0.5, {0.5, 0.0});
    CHECK_FALSE(r.degenerate);
    CHECK(r.ratio > 0.0);
    CHECK(std::isfinite(r.ratio));

    const Be1Result z =
        be1_ratio(zero_fn(FnDomain::Ball), 2.0, 1.0, 0.5, {0.5, 0.0});
    CHECK(z.degenerate);
    CHECK(z.ratio == 0.0);

    // Hypotheses: 0 < p <= 1, r > 0, s > -1, p(s+n+1) > n.
    CHECK_THROWS_AS(be1_ratio(ball_pole(1.0), 2.0, 1.0, 1.5, {0.5, 0.0}),
                    HypothesisViolation);
    CHECK_THROWS_AS(be1_ratio(ball_pole(1.0), -1.0, 1.0, 0.5, {0.5, 0.0}),
                    HypothesisViolation);
    CHECK_THROWS_AS(be1_ratio(ball_pole(1.0), 2.0, -0.5, 0.5, {0.5, 0.0}),
                    HypothesisViolation);
}

TEST_CASE("Forelli-Rudin ratio") {
    // At xi = 0, beta = 4, sigma = 1 the ratio is exactly pi.
    CHECK(be2_ratio({0.0, 0.0}, 4.0, 1.0) ==
          doctest::Approx(M_PI).epsilon(1e-3));
    // Requires sigma + n - beta < 0.
    CHECK_THROWS_AS(be2_ratio({0.0, 0.0}, 2.0, 1.0), HypothesisViolation);
    CHECK_THROWS_AS(be2_ratio({0.0, 0.0}, 4.0, -1.0), HypothesisViolation);
}
