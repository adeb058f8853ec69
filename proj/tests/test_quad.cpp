#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "berg/quad.hpp"

using namespace berg;
using namespace berg::quad;

TEST_CASE("rectangle quadrature against closed forms") {
    const Options opt{.tol = 1e-10};
    CHECK(integrate_rect([](double, double) { return 1.0; }, 0, 2, 0, 3, opt)
              .value == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(integrate_rect([](double x, double y) { return x * y; }, 0, 1, 0, 1,
                         opt)
              .value == doctest::Approx(0.25).epsilon(1e-12));
    // int_0^pi int_0^pi sin x sin y = 4
    CHECK(integrate_rect(
              [](double x, double y) { return std::sin(x) * std::sin(y); }, 0,
              M_PI, 0, M_PI, opt)
              .value == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("line quadrature") {
    const Options opt{.tol = 1e-12};
    CHECK(integrate_line([](double x) { return x * x; }, 0, 1, opt).value ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(integrate_line([](double x) { return std::exp(x); }, 0, 1, opt)
              .value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
}

TEST_CASE("complex quadrature and determinism") {
    const Options opt{.tol = 1e-10};
    auto f = [](double x, double y) {
        return std::complex<double>{x, y * y};
    };
    const ResultC a = integrate_rect_c(f, 0, 1, 0, 1, opt);
    const ResultC b = integrate_rect_c(f, 0, 1, 0, 1, opt);
    CHECK(a.value.real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(a.value.imag() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(a.value.real() == b.value.real());  // bit-identical
    CHECK(a.value.imag() == b.value.imag());
}

TEST_CASE("budget handling") {
    // A needle the budget cannot resolve.
    auto needle = [](std::complex<double> z) {
        return 1.0 / (1e-12 + std::norm(z - std::complex<double>{0.5, 0.5}));
    };
    CHECK_THROWS_AS(integrate(needle, 0, 1, 0, 1, {.tol = 1e-12, .max_cells = 64}),
                    BudgetExceeded);
}

TEST_CASE("ladder classification on synthetic sequences") {
    SUBCASE("geometric tail converges") {
        const std::vector<double> v{1.0, 1.5, 1.75, 1.875, 1.9375};
        std::vector<double> d;
        for (size_t i = 0; i + 1 < v.size(); ++i) d.push_back(v[i + 1] - v[i]);
        CHECK(classify(v, d) == Verdict::Convergent);
    }
    SUBCASE("linear growth diverges") {
        std::vector<double> v, d;
        for (int i = 1; i <= 8; ++i) v.push_back(double(i));
        for (size_t i = 0; i + 1 < v.size(); ++i) d.push_back(v[i + 1] - v[i]);
        CHECK(classify(v, d) == Verdict::Divergent);
    }
    SUBCASE("too few levels") {
        const std::vector<double> v{1, 2, 3, 4};
        const std::vector<double> d{1, 1, 1};
        CHECK_THROWS_AS(classify(v, d), InsufficientLevels);
    }
    SUBCASE("all-zero ladder converges") {
        const std::vector<double> v(8, 0.0);
        const std::vector<double> d(7, 0.0);
        CHECK(classify(v, d) == Verdict::Convergent);
    }
}

TEST_CASE("half-plane sector ladder against a closed form") {
    // int_{C+} (x^2 + (1+y)^2)^{-2} dm2 = pi/4.
    auto g = [](std::complex<double> z) {
        const double d = std::norm(z + std::complex<double>{0.0, 1.0});
        return 1.0 / (d * d);
    };
    const LadderReport rep = ladder_integrate(
        {}, RegionFamily::HalfPlaneSectors, g, {.tol = 1e-7}, {});
    CHECK(rep.verdict == Verdict::Convergent);
    CHECK(rep.total() == doctest::Approx(M_PI / 4).epsilon(1e-4));
}

TEST_CASE("half-plane ladder flags scale-invariant divergence") {
    auto g = [](std::complex<double> z) { return 1.0 / std::norm(z); };
    const LadderReport rep = ladder_integrate(
        {}, RegionFamily::HalfPlaneSectors, g, {.tol = 1e-7}, {});
    CHECK(rep.verdict == Verdict::Divergent);
}

TEST_CASE("disk shell ladder against a closed form") {
    // int_disk (1-|z|^2)^3 dA = pi/4.
    auto g = [](std::complex<double> z) {
        const double d = 1.0 - std::norm(z);
        return d * d * d;
    };
    const LadderReport rep =
        ladder_integrate({}, RegionFamily::BallShells, g, {.tol = 1e-7}, {});
    CHECK(rep.verdict == Verdict::Convergent);
    CHECK(rep.total() == doctest::Approx(M_PI / 4).epsilon(1e-4));
}

TEST_CASE("disk shell ladder flags boundary divergence") {
    auto g = [](std::complex<double> z) {
        return std::pow(1.0 - std::norm(z), -1.4);
    };
    const LadderReport rep =
        ladder_integrate({}, RegionFamily::BallShells, g, {.tol = 1e-7}, {});
    CHECK(rep.verdict == Verdict::Divergent);
}

TEST_CASE("ladder report CSV shape") {
    LadderReport rep;
    rep.values = {1.0, 1.5, 1.75};
    rep.reliable = {1, 1, 1};
    finalize_report(rep);
    const std::string csv = rep.to_csv(1);
    CHECK(csv.rfind("m,value,increment,ratio,reliable\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}
