#pragma once

#include <cmath>
#include <stdexcept>

#include "kundtflow/fields.hpp"

// Central finite-difference stencils over chart closures. The step is
// relative: h = step * max(1, |x_axis|), which keeps truncation and round-off
// balanced for the exp/trig fields this project evaluates.

namespace kf {

inline double fd_step(const Point& p, int axis, double rel_step) {
    return rel_step * std::max(1.0, std::fabs(p[axis]));
}

template <class F>
auto fd_d1(F&& f, Point p, int axis, const FDConfig& cfg) {
    const double h = fd_step(p, axis, cfg.step);
    Point pp = p, pm = p;
    if (cfg.order == 2) {
        pp[axis] = p[axis] + h;
        pm[axis] = p[axis] - h;
        return (1.0 / (2.0 * h)) * (f(pp) - f(pm));
    }
    Point pp2 = p, pm2 = p;
    pp[axis] = p[axis] + h;
    pm[axis] = p[axis] - h;
    pp2[axis] = p[axis] + 2 * h;
    pm2[axis] = p[axis] - 2 * h;
    return (1.0 / (12.0 * h)) * (8.0 * (f(pp) - f(pm)) - (f(pp2) - f(pm2)));
}

// First derivative of a function of a single real parameter (families indexed
// by x_u or by time use this).
template <class F>
auto fd_d1_param(F&& f, double t, double rel_step, int order = 4) {
    const double h = rel_step * std::max(1.0, std::fabs(t));
    if (order == 2) return (1.0 / (2.0 * h)) * (f(t + h) - f(t - h));
    return (1.0 / (12.0 * h)) * (8.0 * (f(t + h) - f(t - h)) - (f(t + 2 * h) - f(t - 2 * h)));
}

}  // namespace kf
