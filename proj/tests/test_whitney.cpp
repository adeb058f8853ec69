#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "berg/whitney.hpp"

using namespace berg;

TEST_CASE("square lookup and geometry") {
    const WhitneySquare a = square_of({0.3, 1.5});
    CHECK(a.j == 0);
    CHECK(a.k == 0);
    CHECK(a.contains({0.3, 1.5}));

    const WhitneySquare b = square_of({-0.3, 0.7});
    CHECK(b.k == -1);
    CHECK(b.j == -1);
    CHECK(b.contains({-0.3, 0.7}));

    CHECK_THROWS_AS(square_of({0.0, 0.0}), OutOfDomain);
    CHECK_THROWS_AS(square_of({1.0, -1.0}), OutOfDomain);
}

TEST_CASE("area identities") {
    for (int k : {-3, 0, 5}) {
        const WhitneySquare sq{7, k};
        CHECK(sq.area() == doctest::Approx(std::ldexp(1.0, 2 * k)));
        // m2(Delta) = (4/9) (Im w)^2 with w the center.
        const double im = sq.center().imag();
        CHECK(sq.area() == doctest::Approx((4.0 / 9.0) * im * im));
        // side comparable to boundary distance: dist(Delta, R) = side.
        CHECK(sq.y0() == doctest::Approx(sq.side()));
    }
}

TEST_CASE("enlargement stays inside the half-plane") {
    const WhitneySquare sq{0, -4};
    const Box b = enlarged(sq, 1.5);
    CHECK(b.ay > 0.0);
    CHECK(b.ay >= 0.5 * sq.side());
    CHECK(b.by - b.ay <= 1.5 * sq.side() + 1e-15);
    // lambda < 2 means the clamp never bites for the vertical extent.
    CHECK(b.ay == doctest::Approx(sq.center().imag() - 0.75 * sq.side()));
}

TEST_CASE("partition property on random points") {
    std::mt19937_64 eng(7);
    auto u = [&] { return double(eng() >> 11) * 0x1.0p-53; };
    for (int i = 0; i < 10000; ++i) {
        const double x = (2.0 * u() - 1.0) * 512.0;
        const double y = std::exp2(16.0 * u() - 8.0);
        const std::complex<double> z{x, y};
        const WhitneySquare sq = square_of(z);
        REQUIRE(sq.contains(z));
        int hits = 0;
        for (int dk = -1; dk <= 1; ++dk)
            for (long long dj = -1; dj <= 1; ++dj)
                if (WhitneySquare{sq.j + dj, sq.k + dk}.contains(z)) ++hits;
        REQUIRE(hits == 1);
    }
}

TEST_CASE("rect listing covers the rectangle exactly") {
    const Box region{-1.3, 2.1, 0.2, 3.7};
    const auto squares = squares_meeting_rect(region);
    CHECK(!squares.empty());
    std::mt19937_64 eng(11);
    auto u = [&] { return double(eng() >> 11) * 0x1.0p-53; };
    for (int i = 0; i < 2000; ++i) {
        const std::complex<double> z{
            region.ax + (region.bx - region.ax) * u(),
            region.ay + (region.by - region.ay) * u()};
        int cover = 0;
        for (const WhitneySquare& sq : squares)
            if (sq.contains(z)) ++cover;
        REQUIRE(cover == 1);
    }
}

TEST_CASE("annulus listing hits every listed square") {
    const auto squares = squares_meeting_annulus(0.5, 8.0);
    CHECK(!squares.empty());
    for (const WhitneySquare& sq : squares) {
        // Every reported square must genuinely meet the annulus.
        const double cx = sq.center().real(), cy = sq.center().imag();
        const double r = std::hypot(cx, cy);
        CHECK(r >= 0.5 - sq.side() * 1.5);
        CHECK(r <= 8.0 + sq.side() * 1.5);
    }
    // The listing contains the squares of interior sample points (down to
    // the documented level cutoff).
    for (double theta : {0.5, 1.5, 2.5}) {
        for (double r : {0.6, 1.7, 6.0}) {
            const std::complex<double> z{r * std::cos(theta),
                                         r * std::sin(theta)};
            const WhitneySquare sq = square_of(z);
            bool found = false;
            for (const WhitneySquare& s : squares) found = found || s == sq;
            CHECK(found);
        }
    }
}

TEST_CASE("finite overlap of enlarged squares") {
    CHECK_THROWS_AS(overlap_multiplicity_rect({0, 1, 0.1, 1}, 2.5),
                    HypothesisViolation);
    const int m = overlap_multiplicity_annulus(0.25, 4.0, 1.5);
    CHECK(m >= 1);
    CHECK(m <= 9);
    std::mt19937_64 eng(13);
    auto u = [&] { return double(eng() >> 11) * 0x1.0p-53; };
    for (int i = 0; i < 5000; ++i) {
        const double x = (2.0 * u() - 1.0) * 512.0;
        const double y = std::exp2(16.0 * u() - 8.0);
        const int c = overlap_count_at({x, y}, 1.5);
        REQUIRE(c >= 1);  // the home square's enlargement always covers z
        REQUIRE(c <= 9);
    }
}

TEST_CASE("subharmonic mean-value ratio") {
    // Constant function: sup equals mean.
    CHECK(subharmonic_bound_ratio(constant(2.0, FnDomain::HalfPlane), 2.0, 0.0,
                                  {0, 0}, 1.5) == doctest::Approx(1.0));
    // Analytic |f|^p is subharmonic: the ratio stays of moderate size.
    const double r = subharmonic_bound_ratio(power_shift(2.0), 2.0, 0.0,
                                             {1, -2}, 1.5);
    CHECK(r > 0.0);
    CHECK(r < 50.0);
}
