#include "berg/whitney.hpp"

#include <algorithm>
#include <cmath>

namespace berg {

Box enlarged(const WhitneySquare& sq, double lambda) {
    const double h = sq.side();
    const std::complex<double> c = sq.center();
    Box b{c.real() - 0.5 * lambda * h, c.real() + 0.5 * lambda * h,
          c.imag() - 0.5 * lambda * h, c.imag() + 0.5 * lambda * h};
    b.ay = std::max(b.ay, 0.5 * h);  // keep Delta* inside C+
    return b;
}

WhitneySquare square_of(std::complex<double> z) {
    if (!(z.imag() > 0.0))
        throw OutOfDomain("square_of requires Im z > 0");
    int e;
    std::frexp(z.imag(), &e);  // y = m 2^e, m in [1/2, 1)
    const int k = e - 1;
    const double side = std::ldexp(1.0, k);
    const long long j = static_cast<long long>(std::floor(z.real() / side));
    return {j, k};
}

std::vector<WhitneySquare> squares_meeting_rect(const Box& region) {
    std::vector<WhitneySquare> out;
    if (!(region.bx > region.ax) || !(region.by > region.ay) ||
        !(region.by > 0.0))
        return out;
    const double ylo = std::max(region.ay, 0.0);
    if (!(region.by > ylo)) return out;
    int klo, khi;
    {
        int e;
        std::frexp(std::max(ylo, 1e-300), &e);
        klo = e - 1;
        std::frexp(region.by, &e);
        khi = e - 1;
    }
    for (int k = klo; k <= khi; ++k) {
        const double side = std::ldexp(1.0, k);
        if (side >= region.by) break;  // level strip starts above the region
        const long long jlo = static_cast<long long>(std::floor(region.ax / side));
        const long long jhi = static_cast<long long>(std::floor(region.bx / side));
        for (long long j = jlo; j <= jhi; ++j) {
            WhitneySquare sq{j, k};
            // half-open extents: require genuine overlap
            if (sq.x1() <= region.ax || sq.x0() >= region.bx) continue;
            if (sq.y1() <= ylo || sq.y0() >= region.by) continue;
            out.push_back(sq);
        }
    }
    return out;
}

namespace {

// Distance range from the origin to a closed box in C+.
void box_radius_range(const WhitneySquare& sq, double& dmin, double& dmax) {
    const double x0 = sq.x0(), x1 = sq.x1(), y0 = sq.y0(), y1 = sq.y1();
    double dx = 0.0;
    if (x0 > 0.0) dx = x0;
    else if (x1 < 0.0) dx = -x1;
    dmin = std::hypot(dx, y0);
    const double fx = std::max(std::abs(x0), std::abs(x1));
    dmax = std::hypot(fx, y1);
}

}  // namespace

std::vector<WhitneySquare> squares_meeting_annulus(double rlo, double rhi) {
    std::vector<WhitneySquare> out;
    if (!(rhi > 0.0) || !(rhi > rlo)) return out;
    int klo, khi;
    {
        int e;
        std::frexp(std::max(rlo, 1e-300) / 2.0, &e);
        klo = e - 1;
        std::frexp(rhi, &e);
        khi = e - 1;
    }
    for (int k = klo; k <= khi; ++k) {
        const double side = std::ldexp(1.0, k);
        if (side > rhi) break;
        const long long jmax = static_cast<long long>(std::ceil(rhi / side)) + 1;
        for (long long j = -jmax; j < jmax; ++j) {
            WhitneySquare sq{j, k};
            double dmin, dmax;
            box_radius_range(sq, dmin, dmax);
            if (dmin <= rhi && dmax >= rlo) out.push_back(sq);
        }
    }
    return out;
}

int overlap_count_at(std::complex<double> z, double lambda) {
    const WhitneySquare home = square_of(z);
    int count = 0;
    for (int k = home.k - 2; k <= home.k + 2; ++k) {
        const double side = std::ldexp(1.0, k);
        const double jc = z.real() / side - 0.5;  // center index coordinate
        const long long j0 = static_cast<long long>(std::floor(jc - 0.5 * lambda)) - 1;
        const long long j1 = static_cast<long long>(std::ceil(jc + 0.5 * lambda)) + 1;
        for (long long j = j0; j <= j1; ++j) {
            const Box b = enlarged(WhitneySquare{j, k}, lambda);
            if (z.real() >= b.ax && z.real() <= b.bx && z.imag() >= b.ay &&
                z.imag() <= b.by)
                ++count;
        }
    }
    return count;
}

int overlap_multiplicity_rect(const Box& region, double lambda, int grid) {
    if (!(lambda > 1.0 && lambda < 2.0))
        throw HypothesisViolation("enlargement factor must lie in (1, 2)");
    int best = 0;
    for (int i = 0; i < grid; ++i) {
        for (int jj = 0; jj < grid; ++jj) {
            const double x =
                region.ax + (region.bx - region.ax) * (i + 0.5) / grid;
            const double y =
                region.ay + (region.by - region.ay) * (jj + 0.5) / grid;
            if (!(y > 0.0)) continue;
            best = std::max(best, overlap_count_at({x, y}, lambda));
        }
    }
    return best;
}

int overlap_multiplicity_annulus(double rlo, double rhi, double lambda,
                                 int grid) {
    if (!(lambda > 1.0 && lambda < 2.0))
        throw HypothesisViolation("enlargement factor must lie in (1, 2)");
    int best = 0;
    const double ulo = std::log(rlo), uhi = std::log(rhi);
    for (int i = 0; i < grid; ++i) {
        for (int jj = 0; jj < grid; ++jj) {
            const double theta = M_PI * (i + 0.5) / grid;
            const double r = std::exp(ulo + (uhi - ulo) * (jj + 0.5) / grid);
            const std::complex<double> z{r * std::cos(theta), r * std::sin(theta)};
            if (!(z.imag() > 0.0)) continue;
            best = std::max(best, overlap_count_at(z, lambda));
        }
    }
    return best;
}

double subharmonic_bound_ratio(const TestFunction& f, double p, double alpha,
                               const WhitneySquare& sq, double lambda,
                               const quad::Options& opt) {
    const Box b = enlarged(sq, lambda);
    if (!(b.ay > 0.0))
        throw OutOfDomain("enlarged square exits C+ after clamping");

    double sup = 0.0;
    const int g = 48;
    for (int i = 0; i < g; ++i) {
        for (int jj = 0; jj < g; ++jj) {
            const double x = sq.x0() + sq.side() * (i + 0.5) / g;
            const double y = sq.y0() + sq.side() * (jj + 0.5) / g;
            const double v =
                std::pow(std::abs(f.eval_unchecked({x, y})), p) *
                std::pow(y, alpha);
            sup = std::max(sup, v);
        }
    }
    auto integrand = [&](double x, double y) {
        return std::pow(std::abs(f.eval_unchecked({x, y})), p) *
               std::pow(y, alpha);
    };
    const quad::Result r =
        quad::integrate_rect(integrand, b.ax, b.bx, b.ay, b.by, opt);
    const double mean = r.value / ((b.bx - b.ax) * (b.by - b.ay));
    if (mean == 0.0) return sup == 0.0 ? 1.0 : HUGE_VAL;
    return sup / mean;
}

}  // namespace berg
