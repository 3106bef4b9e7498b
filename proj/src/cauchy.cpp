#include "kundtflow/cauchy.hpp"

#include <cmath>

namespace kf::cauchy {

namespace {

double rel_tol(const CauchyPair& p, double tol) {
    double scale = std::fabs(p.lambda);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) scale = std::max(scale, std::fabs(p.theta[i][j]));
    return tol * std::max(1.0, scale * scale);
}

}  // namespace

bool is_valid(const CauchyPair& p, double tol) {
    const double t = rel_tol(p, tol);
    if (p.lambda == 0.0) return false;
    if (std::fabs(p.un()) > t || std::fabs(p.ln()) > t) return false;
    auto r = integrability_residuals(p);
    return std::fabs(r[0]) <= t && std::fabs(r[1]) <= t;
}

const CauchyPair& validate(const CauchyPair& p, double tol) {
    const double t = rel_tol(p, tol);
    if (p.lambda == 0.0) throw NotIntegrableError("not integrable: lambda = 0");
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (p.theta[i][j] != p.theta[j][i])
                throw NotIntegrableError("not integrable: theta not symmetric");
    if (std::fabs(p.un()) > t) throw NotIntegrableError("not integrable: theta_un != 0");
    if (std::fabs(p.ln()) > t) throw NotIntegrableError("not integrable: theta_ln != 0");
    auto r = integrability_residuals(p);
    if (std::fabs(r[0]) > t)
        throw NotIntegrableError(
            "not integrable: theta_uu theta_ul + lambda theta_ll + theta_ll theta_ul != "
            "lambda theta_uu");
    if (std::fabs(r[1]) > t)
        throw NotIntegrableError(
            "not integrable: theta_nn theta_ul + lambda theta_ll != lambda theta_nn");
    return p;
}

GroupClass classify(const CauchyPair& p, double tol) {
    validate(p, tol);
    const double t = tol * std::max(1.0, std::fabs(p.lambda));
    if (std::fabs(p.ul() - 2.0 * p.lambda) <= t) return {Group::E11, 0.0};
    if (std::fabs(p.ul() - p.lambda) <= t) return {Group::Tau2R, 0.0};
    const double w = 1.0 - p.ul() / p.lambda;
    const double mu = (std::fabs(w) <= 1.0) ? w : 1.0 / w;
    return {Group::Tau3Mu, mu};
}

CauchyPair make_pair(Group g, double lambda, double p1, double p2) {
    return make_pair_t<double>(g, lambda, p1, p2);
}

Mat ricci3(const CauchyPair& p) {
    auto R = ricci3_t(p);
    Mat m(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = R[i][j];
    return m;
}

Realization realize(const CauchyPair& p) {
    validate(p);
    const double lam = p.lambda;
    const double P = p.ul() - lam;
    const double L = p.ll();
    Realization out;

    auto form = [](std::function<Vec(const Point&)> f) {
        OneFormField w;
        w.dim = 3;
        w.comps = std::move(f);
        return w;
    };

    if (std::fabs(P) < 1e-12 && std::fabs(L) < 1e-12) {
        // tau2(+)R chart: e_u and e_l exact.
        const double nn = p.nn();
        out.coframe[0] = form([](const Point&) { return Vec{0.0, 1.0, 0.0}; });
        out.coframe[1] = form([](const Point&) { return Vec{1.0, 0.0, 0.0}; });
        out.coframe[2] = form([lam, nn](const Point& q) {
            return Vec{0.0, 0.0, std::exp(-(lam * q[0] + nn * q[1]))};
        });
        const double uu = p.uu();
        out.f_gauge = {3, [uu, lam](const Point& q) { return -(uu * q[1] + 2.0 * lam * q[0]); }};
    } else {
        if (std::fabs(P) < 1e-12)
            throw std::runtime_error("realization: unsupported structure constants");
        const double sD = std::hypot(P, L);
        // Theta(e_u) + lambda e_l reduces to m dx on this chart.
        const double m = (p.uu() * L - (p.ul() + lam) * P) / sD;
        const double an = -lam * sD / P;  // e_n decay rate
        out.coframe[0] = form([P, L, sD](const Point& q) {
            return Vec{L / sD, 0.0, (P / sD) * std::exp(-sD * q[0])};
        });
        out.coframe[1] = form([P, L, sD](const Point& q) {
            return Vec{-P / sD, 0.0, (L / sD) * std::exp(-sD * q[0])};
        });
        out.coframe[2] = form([an](const Point& q) {
            return Vec{0.0, std::exp(-an * q[0]), 0.0};
        });
        out.f_gauge = {3, [m](const Point& q) { return -m * q[0]; }};
    }

    auto cf = out.coframe;
    out.h.dim = 3;
    out.h.sig = Signature::riemannian;
    out.h.comps = [cf](const Point& q) {
        Mat h(3);
        for (int a = 0; a < 3; ++a) {
            Vec e = cf[a].comps(q);
            h = h + outer(e, e);
        }
        return h;
    };
    return out;
}

}  // namespace kf::cauchy
