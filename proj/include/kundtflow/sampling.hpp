#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "kundtflow/fields.hpp"

// Residual verification sweeps a box of interior sample points and reduces the
// pointwise residual with max. The OpenMP kernel and the serial reference
// below compute bit-identical results (max is an exact reduction), which keeps
// every report reproducible; tests compare the two and tools/bench_sampling.cpp
// times them against each other.

namespace kf {

struct SamplingPlan {
    int dim = 0;
    std::array<double, kMaxDim> lo{};
    std::array<double, kMaxDim> hi{};
    std::array<int, kMaxDim> counts{};  // >= 3 per axis
    double tol = 1e-5;

    std::int64_t total() const {
        std::int64_t t = 1;
        for (int i = 0; i < dim; ++i) t *= counts[i];
        return t;
    }
    // Strictly interior lattice point for flat index k.
    Point point(std::int64_t k) const {
        Point p;
        p.n = dim;
        for (int i = 0; i < dim; ++i) {
            int c = counts[i];
            int j = static_cast<int>(k % c);
            k /= c;
            p[i] = lo[i] + (hi[i] - lo[i]) * (j + 1) / static_cast<double>(c + 1);
        }
        return p;
    }
    static SamplingPlan box(std::initializer_list<std::pair<double, double>> axes, int per_axis,
                            double tol = 1e-5);
};

// Serial reference implementation.
double max_over_plan_serial(const SamplingPlan& plan,
                            const std::function<double(const Point&)>& f);

// OpenMP kernel; honors the KUNDTFLOW_THREADS cap.
double max_over_plan(const SamplingPlan& plan, const std::function<double(const Point&)>& f);

// Effective thread count after the KUNDTFLOW_THREADS cap.
int sampling_threads();

}  // namespace kf
