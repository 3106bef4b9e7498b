#pragma once

#include <cmath>
#include <functional>
#include <random>

// Test-only oracles, kept independent of the implementation paths they check.

namespace oracle {

// Spouge's gamma approximation (a = 20) in long double; good to ~1e-15
// relative on the arguments exercised here. Independent of std::tgamma and of
// the library's gamma path.
inline double gamma_spouge(double xd) {
    const int a = 20;
    long double x = xd;
    long double acc = std::sqrt(2.0L * 3.141592653589793238462643383279503L);
    long double fact = 1.0L;
    for (int k = 1; k < a; ++k) {
        if (k > 1) fact *= -(k - 1);
        long double ck = std::pow((long double)(a - k), k - 0.5L) * std::exp((long double)(a - k)) / fact;
        acc += ck / (x - 1.0L + k);
    }
    long double t = x - 1.0L + a;
    return (double)(acc * std::pow(t, x - 0.5L) * std::exp(-t));
}

// Adaptive Simpson quadrature.
inline double quad(const std::function<double(double)>& f, double lo, double hi,
                   double tol = 1e-13) {
    std::function<double(double, double, double, double, double, double, int)> go =
        [&](double a, double b, double fa, double fm, double fb, double whole, int depth) {
            double m = 0.5 * (a + b);
            double flm = f(0.5 * (a + m)), frm = f(0.5 * (m + b));
            double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            if (depth > 45 || std::fabs(left + right - whole) < 15.0 * tol)
                return left + right + (left + right - whole) / 15.0;
            return go(a, m, fa, flm, fm, left, depth + 1) + go(m, b, fm, frm, fb, right, depth + 1);
        };
    double fa = f(lo), fb = f(hi), fm = f(0.5 * (lo + hi));
    return go(lo, hi, fa, fm, fb, (hi - lo) / 6.0 * (fa + 4.0 * fm + fb), 0);
}

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen);
    }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }
};

}  // namespace oracle
