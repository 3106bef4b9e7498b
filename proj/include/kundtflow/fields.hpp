#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include "kundtflow/linalg.hpp"

namespace kf {

struct Point {
    int n = 0;
    std::array<double, kMaxDim> x{};

    Point() = default;
    Point(std::initializer_list<double> xs) {
        n = static_cast<int>(xs.size());
        int i = 0;
        for (double v : xs) x[i++] = v;
    }
    double& operator[](int i) { return x[i]; }
    double operator[](int i) const { return x[i]; }
};

enum class Signature { riemannian, lorentzian };

// Finite-difference configuration: relative stencil size, stencil order and
// the residual tolerance verification code should hold results to.
struct FDConfig {
    double step = 1e-3;
    int order = 4;  // 2 or 4
    double tol = 1e-5;
};

// All fields are closures over chart coordinates; nothing is discretized.
struct ScalarField {
    int dim = 0;
    std::function<double(const Point&)> eval;
};

struct OneFormField {
    int dim = 0;
    std::function<Vec(const Point&)> comps;
};

struct VectorField {
    int dim = 0;
    std::function<Vec(const Point&)> comps;
};

struct MetricField {
    int dim = 0;
    Signature sig = Signature::riemannian;
    std::function<Mat(const Point&)> comps;
};

struct DegenerateMetricError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace kf
