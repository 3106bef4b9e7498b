#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

// Small dense vectors/matrices with run-time dimension <= 4. Charts in this
// project are 2-, 3- or 4-dimensional, so fixed capacity avoids heap traffic
// in the finite-difference inner loops.

namespace kf {

constexpr int kMaxDim = 4;

struct Vec {
    int n = 0;
    std::array<double, kMaxDim> a{};

    Vec() = default;
    explicit Vec(int dim) : n(dim) {}
    Vec(std::initializer_list<double> xs) {
        n = static_cast<int>(xs.size());
        int i = 0;
        for (double x : xs) a[i++] = x;
    }

    double& operator[](int i) { return a[i]; }
    double operator[](int i) const { return a[i]; }
};

inline Vec operator+(Vec x, const Vec& y) {
    for (int i = 0; i < x.n; ++i) x.a[i] += y.a[i];
    return x;
}
inline Vec operator-(Vec x, const Vec& y) {
    for (int i = 0; i < x.n; ++i) x.a[i] -= y.a[i];
    return x;
}
inline Vec operator*(double s, Vec x) {
    for (int i = 0; i < x.n; ++i) x.a[i] *= s;
    return x;
}
inline Vec operator*(Vec x, double s) { return s * x; }

inline double max_abs(const Vec& x) {
    double m = 0;
    for (int i = 0; i < x.n; ++i) m = std::max(m, std::fabs(x.a[i]));
    return m;
}

struct Mat {
    int n = 0;
    std::array<double, kMaxDim * kMaxDim> a{};

    Mat() = default;
    explicit Mat(int dim) : n(dim) {}

    double& operator()(int i, int j) { return a[i * kMaxDim + j]; }
    double operator()(int i, int j) const { return a[i * kMaxDim + j]; }

    static Mat identity(int dim) {
        Mat m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }
};

inline Mat operator+(Mat x, const Mat& y) {
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) x(i, j) += y(i, j);
    return x;
}
inline Mat operator-(Mat x, const Mat& y) {
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) x(i, j) -= y(i, j);
    return x;
}
inline Mat operator*(double s, Mat x) {
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) x(i, j) *= s;
    return x;
}
inline Mat operator*(Mat x, double s) { return s * x; }

inline Mat matmul(const Mat& x, const Mat& y) {
    Mat r(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) {
            double s = 0;
            for (int k = 0; k < x.n; ++k) s += x(i, k) * y(k, j);
            r(i, j) = s;
        }
    return r;
}

inline Vec matvec(const Mat& m, const Vec& v) {
    Vec r(m.n);
    for (int i = 0; i < m.n; ++i) {
        double s = 0;
        for (int j = 0; j < m.n; ++j) s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

inline Mat transpose(const Mat& m) {
    Mat r(m.n);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) r(i, j) = m(j, i);
    return r;
}

inline Mat outer(const Vec& x, const Vec& y) {
    Mat r(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) r(i, j) = x[i] * y[j];
    return r;
}

// a (.) b = a x b + b x a  (no 1/2 factor)
inline Mat sym_prod(const Vec& x, const Vec& y) { return outer(x, y) + outer(y, x); }

// a ^ b as a 2-tensor: a x b - b x a
inline Mat wedge(const Vec& x, const Vec& y) { return outer(x, y) - outer(y, x); }

inline double trace(const Mat& m) {
    double s = 0;
    for (int i = 0; i < m.n; ++i) s += m(i, i);
    return s;
}

inline double max_abs(const Mat& m) {
    double r = 0;
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) r = std::max(r, std::fabs(m(i, j)));
    return r;
}

inline double dot(const Vec& x, const Vec& y) {
    double s = 0;
    for (int i = 0; i < x.n; ++i) s += x[i] * y[i];
    return s;
}

double det(const Mat& m);
Mat inverse(const Mat& m);  // throws std::runtime_error on |det| < 1e-300

// 3-index array, used for Christoffel symbols G[a][b][c].
struct Ten3 {
    int n = 0;
    std::array<double, kMaxDim * kMaxDim * kMaxDim> a{};

    Ten3() = default;
    explicit Ten3(int dim) : n(dim) {}
    double& operator()(int i, int j, int k) { return a[(i * kMaxDim + j) * kMaxDim + k]; }
    double operator()(int i, int j, int k) const { return a[(i * kMaxDim + j) * kMaxDim + k]; }
};

inline Ten3 operator+(Ten3 x, const Ten3& y) {
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] += y.a[i];
    return x;
}
inline Ten3 operator-(Ten3 x, const Ten3& y) {
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] -= y.a[i];
    return x;
}
inline Ten3 operator*(double s, Ten3 x) {
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] *= s;
    return x;
}

}  // namespace kf
