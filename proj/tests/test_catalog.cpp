#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "berg/catalog.hpp"

using namespace berg;

namespace {
const cplx I{0.0, 1.0};
}

TEST_CASE("closed-form evaluation") {
    CHECK(std::abs(pure_power(1.0).eval(I) - cplx{0.0, -1.0}) < 1e-15);
    CHECK(std::abs(power_shift(2.0).eval(I) - cplx{-0.25, 0.0}) < 1e-15);
    CHECK(std::abs(ball_pole(1.0).eval({0.5, 0.0}) - cplx{2.0, 0.0}) < 1e-15);
    CHECK(std::abs(constant(3.0, FnDomain::Ball).eval({0.1, 0.1}) -
                   cplx{3.0, 0.0}) < 1e-15);
    CHECK(zero_fn(FnDomain::HalfPlane).eval(I) == cplx{0.0, 0.0});
}

TEST_CASE("monomial on B_2") {
    const TestFunction m = monomial(2, 1, 2);
    const std::array<cplx, 2> z{cplx{0.5, 0.0}, cplx{0.0, 0.5}};
    CHECK(std::abs(m.eval2(z) - cplx{0.0, 0.125}) < 1e-15);
}

TEST_CASE("domain checks") {
    CHECK_THROWS_AS(pure_power(1.0).eval({1.0, -0.5}), OutOfDomain);
    CHECK_THROWS_AS(pure_power(1.0).eval({1.0, 0.0}), OutOfDomain);
    CHECK_THROWS_AS(ball_pole(1.0).eval({1.0, 0.5}), OutOfDomain);
    CHECK_THROWS_AS(monomial(1, 1, 2).eval2({cplx{0.9, 0.0}, cplx{0.9, 0.0}}),
                    OutOfDomain);
}

TEST_CASE("scaling is exact on the scale field") {
    TestFunction f = power_shift(2.0);
    const TestFunction g = scaled(f, 5.0);
    const cplx z{0.3, 0.7};
    CHECK(std::abs(g.eval(z) - 5.0 * f.eval(z)) < 1e-15);
    CHECK(g.scale == 5.0);
}

TEST_CASE("analytic sup norms") {
    CHECK(*analytic_sup_norm(pure_power(1.0), 1.0) == doctest::Approx(1.0));
    CHECK(*analytic_sup_norm(power_shift(2.0), 2.0) == doctest::Approx(1.0));
    CHECK(*analytic_sup_norm(ball_pole(1.0), 1.0) == doctest::Approx(2.0));
    CHECK(*analytic_sup_norm(ball_pole(0.5, 1, 3.0), 0.5) ==
          doctest::Approx(3.0 * std::sqrt(2.0)));
    CHECK(*analytic_sup_norm(zero_fn(FnDomain::HalfPlane), 1.0) == 0.0);
    CHECK_FALSE(analytic_sup_norm(power_shift(2.0), 1.0).has_value());
}

TEST_CASE("Bergman membership flags") {
    CHECK(*in_bergman_halfplane(power_shift(2.0), 2.0, 0.0));
    CHECK_FALSE(*in_bergman_halfplane(power_shift(1.0), 2.0, 0.0));
    CHECK_FALSE(*in_bergman_halfplane(pure_power(1.0), 2.0, 0.0));
    CHECK(*in_bergman_halfplane(zero_fn(FnDomain::HalfPlane), 2.0, 0.0));

    CHECK(*in_bergman_ball(ball_pole(0.5), 2.0, 1.0));
    CHECK_FALSE(*in_bergman_ball(ball_pole(1.0), 2.0, 1.0));
    CHECK(*in_bergman_ball(monomial(1, 0, 1), 2.0, 1.0));
}
