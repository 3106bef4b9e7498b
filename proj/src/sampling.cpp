#include "kundtflow/sampling.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kf {

SamplingPlan SamplingPlan::box(std::initializer_list<std::pair<double, double>> axes, int per_axis,
                               double tol) {
    if (per_axis < 3) throw std::invalid_argument("sampling plan needs >= 3 points per axis");
    SamplingPlan plan;
    plan.dim = static_cast<int>(axes.size());
    plan.tol = tol;
    int i = 0;
    for (auto [a, b] : axes) {
        plan.lo[i] = a;
        plan.hi[i] = b;
        plan.counts[i] = per_axis;
        ++i;
    }
    return plan;
}

double max_over_plan_serial(const SamplingPlan& plan,
                            const std::function<double(const Point&)>& f) {
    double m = 0.0;
    const std::int64_t total = plan.total();
    for (std::int64_t k = 0; k < total; ++k) m = std::max(m, f(plan.point(k)));
    return m;
}

int sampling_threads() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
    if (const char* cap = std::getenv("KUNDTFLOW_THREADS")) {
        int c = std::atoi(cap);
        if (c > 0) n = std::min(n, c);
    }
    return n;
#else
    return 1;
#endif
}

double max_over_plan(const SamplingPlan& plan, const std::function<double(const Point&)>& f) {
#ifdef _OPENMP
    const std::int64_t total = plan.total();
    double m = 0.0;
    std::exception_ptr err = nullptr;
    // Exceptions may not escape the parallel region; stash the first one.
#pragma omp parallel for reduction(max : m) num_threads(sampling_threads()) schedule(static)
    for (std::int64_t k = 0; k < total; ++k) {
        try {
            m = std::max(m, f(plan.point(k)));
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return m;
#else
    return max_over_plan_serial(plan, f);
#endif
}

}  // namespace kf
