#pragma once

#include <stdexcept>

// Real-argument special functions used by the closed-form coframe flows:
// Gamma, Gauss 2F1 on [0,1] for the parameter families with c - a - b = 1/2,
// and the profile functions frakR / frakR_kappa.

namespace kf::specfun {

struct SpecfunError : std::domain_error {
    using std::domain_error::domain_error;
};

// Gamma on x > 0.
double gamma_fn(double x);

// Reciprocal gamma on the whole real line; exactly 0 at the poles 0, -1, -2, ...
double rgamma(double x);

struct Hyp2F1Params {
    double a, b, c;
    double z;  // in [0,1]
};

// Gauss 2F1 for z in [0,1]. Direct series for z <= 1/2, the z -> 1-z linear
// transformation for z in (1/2, 1) (requires c-a-b non-integer), Gauss
// summation at z = 1 (requires c-a-b > 0).
double hyp2f1(double a, double b, double c, double z);
inline double hyp2f1(const Hyp2F1Params& p) { return hyp2f1(p.a, p.b, p.c, p.z); }

// frakR_kappa(x; z0): profile entering the u-row of the closed-form coframe,
//   [2F1(1/2-k, 1/2; 3/2-k; cos^2 x) cos x - C_k cos^{2k} x] sign(x) - R0 cos^{2k} x
// with C_k = sqrt(pi) Gamma(3/2-k) / Gamma(1-k). Vanishes at x = z0 and is
// continuous at x = 0 with sign(0) = 0. Preconditions |x| < pi/2, |z0| < pi/2.
// Falls back to direct quadrature of its integral representation
//   (2k-1) cos^{2k} x  Int_{z0}^{x} cos^{-2k} v dv
// when 3/2-k sits too close to a non-positive integer for the 2F1 series.
double frakR_kappa(double x, double kappa, double z0);

// kappa = 1/3 profile (exponent 2/3 pattern).
double frakR(double x, double y0);

}  // namespace kf::specfun
