#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "berg/halfplane.hpp"

using namespace berg;

namespace {
const cplx I{0.0, 1.0};
}

TEST_CASE("kernel closed forms") {
    // K_0(i, i) = (1/pi)(-2i)^{-2} = -1/(4 pi).
    const cplx k0 = hp_kernel(I, I, 0.0);
    CHECK(k0.real() == doctest::Approx(-1.0 / (4.0 * M_PI)).epsilon(1e-12));
    CHECK(k0.imag() == doctest::Approx(0.0));

    // K_1(i, 2i) = (2/pi)(-3i)^{-3} = -2i/(27 pi).
    const cplx k1 = hp_kernel(I, 2.0 * I, 1.0);
    CHECK(k1.real() == doctest::Approx(0.0));
    CHECK(k1.imag() == doctest::Approx(-2.0 / (27.0 * M_PI)).epsilon(1e-12));

    CHECK_THROWS_AS(hp_kernel({0.0, -1.0}, I, 0.0), OutOfDomain);
}

TEST_CASE("kernel magnitude bound |conj w - z| >= Im w + Im z") {
    for (double x : {-3.0, 0.0, 2.0}) {
        for (double y : {0.1, 1.0, 7.0}) {
            const cplx z{x, y}, w{1.5, 0.4};
            CHECK(std::abs(std::conj(w) - z) >= w.imag() + z.imag() - 1e-12);
        }
    }
}

TEST_CASE("grid sup norm") {
    SUBCASE("attained values are found") {
        const SupNormResult r = norm_inf(power_shift(2.0), 2.0);
        CHECK_FALSE(r.unbounded);
        CHECK(r.value <= 1.0);
        CHECK(r.value > 0.99);  // analytic sup is 1, reached as y -> inf
        CHECK(r.analytic.has_value());
        CHECK(r.gap < 0.01);
    }
    SUBCASE("norm_inf(power_shift(2), 1) peaks at z = i") {
        // y / (x^2 + (1+y)^2) has maximum 1/4 at x = 0, y = 1.
        const SupNormResult r = norm_inf(power_shift(2.0), 1.0);
        CHECK_FALSE(r.unbounded);
        CHECK(r.value == doctest::Approx(0.25).epsilon(1e-3));
    }
    SUBCASE("growth toward an edge is flagged") {
        const SupNormResult r = norm_inf(constant(1.0, FnDomain::HalfPlane), 1.0);
        CHECK(r.unbounded);
    }
}

TEST_CASE("integral norm oracle") {
    // ||power_shift(2)||_{2,0}^2 = int (x^2+(1+y)^2)^{-2} = pi/4.
    const NormResult r = norm_p_alpha(power_shift(2.0), 2.0, 0.0);
    CHECK(r.verdict == quad::Verdict::Convergent);
    CHECK(r.value == doctest::Approx(std::sqrt(M_PI) / 2.0).epsilon(1e-3));

    const NormResult d = norm_p_alpha(pure_power(1.0), 2.0, 0.0);
    CHECK(d.verdict == quad::Verdict::Divergent);

    const NormResult z = norm_p_alpha(zero_fn(FnDomain::HalfPlane), 2.0, 0.0);
    CHECK(z.verdict == quad::Verdict::Convergent);
    CHECK(z.value == 0.0);
}

TEST_CASE("representation formula reproduces the catalog") {
    const TestFunction f = power_shift(2.0);
    for (cplx z : {cplx{0.0, 1.0}, cplx{1.0, 0.5}, cplx{-2.0, 2.0}}) {
        const cplx rep = reproduce(f, 2.0, 0.0, 1.0, z);
        const cplx fv = f.eval(z);
        CHECK(std::abs(rep - fv) / std::abs(fv) < 1e-3);
    }
}

TEST_CASE("representation hypotheses are enforced") {
    CHECK_THROWS_AS(require_reproduce_beta(2.0, 0.0, -0.6),
                    HypothesisViolation);
    CHECK_NOTHROW(require_reproduce_beta(2.0, 0.0, -0.5));
    // p <= 1 regime: beta >= (2+alpha)/p - 2.
    CHECK_THROWS_AS(require_reproduce_beta(0.5, 0.0, 1.9),
                    HypothesisViolation);
    CHECK_NOTHROW(require_reproduce_beta(0.5, 0.0, 2.0));
    // Non-member input is rejected.
    CHECK_THROWS_AS(reproduce(pure_power(1.0), 2.0, 0.0, 1.0, I),
                    HypothesisViolation);
    CHECK_THROWS_AS(reproduce(power_shift(2.0), 2.0, 0.0, 1.0, {0.0, -1.0}),
                    OutOfDomain);
}

TEST_CASE("scale-invariant kernel integral") {
    // alpha = 0, lambda = 4: constant pi/4 for every w.
    for (cplx w : {cplx{0.0, 1.0}, cplx{1.0, 1.0}, cplx{0.0, 0.1}}) {
        CHECK(lemma3_ratio(w, 0.0, 4.0) ==
              doctest::Approx(M_PI / 4.0).epsilon(2e-3));
    }
    CHECK_THROWS_AS(lemma3_ratio(I, 0.0, 2.0), HypothesisViolation);
    CHECK_THROWS_AS(lemma3_ratio(I, -1.5, 4.0), HypothesisViolation);
    CHECK_THROWS_AS(lemma3_ratio({1.0, 0.0}, 0.0, 4.0), OutOfDomain);
}

TEST_CASE("pointwise and line-norm comparison constants") {
    const double c1 = pointwise_ratio(power_shift(2.0), 2.0, 0.0);
    CHECK(c1 > 0.0);
    CHECK(c1 < 10.0);
    const double c2 = line_norm_ratio(power_shift(2.0), 2.0, 0.0);
    CHECK(c2 > 0.0);
    CHECK(c2 < 10.0);
}
