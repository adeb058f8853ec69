#pragma once

#include "berg/errors.hpp"

namespace berg {

// Parameter bundle for the half-plane distance theorems. Construct through
// validate_halfplane(); an instance always satisfies the hypotheses
//   q > 0, nu > -1, t = (nu+2)/q,
//   q > 1:  beta > max(nu/q, t - 1)
//   q <= 1: beta > t - 2.
struct HalfPlaneParams {
    double q;
    double nu;
    double t;     // (nu + 2) / q
    double beta;  // kernel order
};

// Parameter bundle for the ball distance theorems. n is the complex
// dimension (1 or 2), and always
//   s*q > n,  t > s,
//   q > 1:  t > (s+n+1)/q
//   q <= 1: q*(t+n+1) - (n+1) > -1.
struct BallParams {
    int n;
    double q;
    double s;
    double t;
};

// Weight bundle for plain norms: alpha > -1 for ||.||_{p,alpha}, nu > 0 for
// the growth-space sup norm.
struct NormParams {
    double p;
    double alpha;  // > -1
};

HalfPlaneParams validate_halfplane(double q, double nu, double beta);
BallParams validate_ball(int n, double q, double s, double t);
NormParams validate_norm(double p, double alpha);
void validate_growth_weight(double nu);  // nu > 0

}  // namespace berg
