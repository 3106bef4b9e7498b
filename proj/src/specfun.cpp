#include "kundtflow/specfun.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace kf::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxTerms = 20000;

bool near_nonpositive_integer(double x, double eps) {
    double r = std::round(x);
    return r <= 0.0 && std::fabs(x - r) < eps;
}

double gamma_checked(double x) {
    if (near_nonpositive_integer(x, 1e-12)) throw SpecfunError("gamma pole");
    return std::tgamma(x);
}

// Raw power series sum_n (a)_n (b)_n / ((c)_n n!) z^n; used for |z| <= 1/2.
double series_2f1(double a, double b, double c, double z) {
    double term = 1.0, sum = 1.0;
    for (int n = 0; n < kMaxTerms; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        sum += term;
        if (std::fabs(term) < 1e-16 * std::fabs(sum)) return sum;
    }
    return sum;
}

double sign0(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

}  // namespace

double gamma_fn(double x) {
    if (!(x > 0.0)) throw SpecfunError("gamma_fn requires x > 0");
    return std::tgamma(x);
}

double rgamma(double x) {
    if (near_nonpositive_integer(x, 1e-12)) return 0.0;
    return 1.0 / std::tgamma(x);
}

double hyp2f1(double a, double b, double c, double z) {
    if (near_nonpositive_integer(c, 1e-12)) throw SpecfunError("2F1: c is a non-positive integer");
    if (z < 0.0 || z > 1.0) throw SpecfunError("2F1: z outside [0,1]");
    const double s = c - a - b;
    if (z == 0.0) return 1.0;
    if (z == 1.0) {
        if (!(s > 0.0)) throw SpecfunError("2F1 at z=1 needs c-a-b > 0");
        // Gauss summation; reciprocals make denominator poles give 0.
        return gamma_checked(c) * gamma_checked(s) * rgamma(c - a) * rgamma(c - b);
    }
    if (z <= 0.5) return series_2f1(a, b, c, z);
    // Linear transformation z -> 1-z; valid for non-integer c-a-b.
    if (std::fabs(s - std::round(s)) < 1e-10)
        throw SpecfunError("2F1 transformation needs non-integer c-a-b");
    const double w = 1.0 - z;
    const double A = gamma_checked(c) * gamma_checked(s) * rgamma(c - a) * rgamma(c - b);
    const double B = gamma_checked(c) * gamma_checked(-s) * rgamma(a) * rgamma(b);
    return A * series_2f1(a, b, a + b - c + 1.0, w) +
           B * std::pow(w, s) * series_2f1(c - a, c - b, s + 1.0, w);
}

namespace {

double ck_const(double kappa) {
    return std::sqrt(kPi) * std::tgamma(1.5 - kappa) * rgamma(1.0 - kappa);
}

// Adaptive Simpson of cos^{-2k} on [lo, hi].
double int_cos_pow(double kappa, double lo, double hi, double tol) {
    auto f = [kappa](double v) { return std::pow(std::cos(v), -2.0 * kappa); };
    std::function<double(double, double, double, double, double, double, int)> go =
        [&](double a, double b, double fa, double fm, double fb, double whole, int depth) {
            double m = 0.5 * (a + b);
            double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            double flm = f(lm), frm = f(rm);
            double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            if (depth > 40 || std::fabs(left + right - whole) < 15.0 * tol)
                return left + right + (left + right - whole) / 15.0;
            return go(a, m, fa, flm, fm, left, depth + 1) +
                   go(m, b, fm, frm, fb, right, depth + 1);
        };
    double fa = f(lo), fb = f(hi), fm = f(0.5 * (lo + hi));
    double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    return go(lo, hi, fa, fm, fb, whole, 0);
}

}  // namespace

double frakR_kappa(double x, double kappa, double z0) {
    if (std::fabs(x) >= 0.5 * kPi || std::fabs(z0) >= 0.5 * kPi)
        throw SpecfunError("frakR argument outside (-pi/2, pi/2)");
    // The hypergeometric display degenerates when c = 3/2-k approaches a
    // non-positive integer; the integral representation is equivalent there.
    if (near_nonpositive_integer(1.5 - kappa, 0.02)) {
        return (2.0 * kappa - 1.0) * std::pow(std::cos(x), 2.0 * kappa) *
               int_cos_pow(kappa, z0, x, 1e-14);
    }
    const double c2k = std::pow(std::cos(x), 2.0 * kappa);
    const double cx = std::cos(x);
    const double bracket =
        hyp2f1(0.5 - kappa, 0.5, 1.5 - kappa, cx * cx) * cx - ck_const(kappa) * c2k;
    const double cz0 = std::cos(z0);
    const double r0 =
        sign0(z0) * (hyp2f1(0.5 - kappa, 0.5, 1.5 - kappa, cz0 * cz0) *
                         std::pow(cz0, 1.0 - 2.0 * kappa) -
                     ck_const(kappa));
    return bracket * sign0(x) - r0 * c2k;
}

double frakR(double x, double y0) { return frakR_kappa(x, 1.0 / 3.0, y0); }

}  // namespace kf::specfun
