#pragma once

#include <complex>
#include <vector>

#include "berg/catalog.hpp"
#include "berg/quad.hpp"

namespace berg {

// Dyadic Whitney square Delta_{j,k} = [j 2^k, (j+1) 2^k) x [2^k, 2^{k+1}).
// Squares at level k tile the strip 2^k <= y < 2^{k+1}; the union over all
// (j,k) is C+. Center w_k = ((j+1/2) 2^k, (3/2) 2^k), so
// m2(Delta) = 4^k = (4/9)(Im w_k)^2 exactly.
struct WhitneySquare {
    long long j = 0;
    int k = 0;

    double side() const { return std::ldexp(1.0, k); }
    double x0() const { return double(j) * side(); }
    double x1() const { return double(j + 1) * side(); }
    double y0() const { return side(); }
    double y1() const { return 2.0 * side(); }
    double area() const { return side() * side(); }
    std::complex<double> center() const {
        return {(double(j) + 0.5) * side(), 1.5 * side()};
    }
    bool contains(std::complex<double> z) const {
        return z.real() >= x0() && z.real() < x1() && z.imag() >= y0() &&
               z.imag() < y1();
    }
    bool operator==(const WhitneySquare&) const = default;
};

// Axis-aligned box, used for enlarged squares.
struct Box {
    double ax, bx, ay, by;
};

// The lambda-dilation of the square about its center, intersected with
// {y > 2^{k-1}} so it stays inside C+.
Box enlarged(const WhitneySquare& sq, double lambda = 1.5);

// The unique square containing z (Im z > 0 required).
WhitneySquare square_of(std::complex<double> z);

// All squares meeting an axis-aligned rectangle in C+.
std::vector<WhitneySquare> squares_meeting_rect(const Box& region);

// Squares meeting the annular half-plane sector {rlo <= |z| <= rhi}. The
// full family is infinite (the sector touches the real axis), so the listing
// is cut at the level of the inner radius: only levels k >= level(rlo) - 1
// are reported. Callers that need deeper levels enumerate them directly.
std::vector<WhitneySquare> squares_meeting_annulus(double rlo, double rhi);

// Number of enlarged squares whose dilation contains z.
int overlap_count_at(std::complex<double> z, double lambda);

// Max over a grid in the region of overlap_count_at. lambda in (1, 2).
int overlap_multiplicity_rect(const Box& region, double lambda,
                              int grid = 64);
int overlap_multiplicity_annulus(double rlo, double rhi, double lambda,
                                 int grid = 64);

// Empirical constant of the mean-value bound:
//   sup_{Delta} |f|^p (Im z)^alpha  /  mean_{Delta*} |f|^p (Im w)^alpha.
double subharmonic_bound_ratio(const TestFunction& f, double p, double alpha,
                               const WhitneySquare& sq, double lambda = 1.5,
                               const quad::Options& opt = {});

}  // namespace berg
