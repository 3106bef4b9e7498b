#include "kundtflow/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace kf {

double det(const Mat& m) {
    switch (m.n) {
        case 1:
            return m(0, 0);
        case 2:
            return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        case 3:
            return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                   m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                   m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        default: {
            // Gaussian elimination with partial pivoting.
            Mat a = m;
            double d = 1.0;
            for (int c = 0; c < a.n; ++c) {
                int piv = c;
                for (int r = c + 1; r < a.n; ++r)
                    if (std::fabs(a(r, c)) > std::fabs(a(piv, c))) piv = r;
                if (piv != c) {
                    for (int j = 0; j < a.n; ++j) std::swap(a(piv, j), a(c, j));
                    d = -d;
                }
                if (a(c, c) == 0.0) return 0.0;
                d *= a(c, c);
                for (int r = c + 1; r < a.n; ++r) {
                    double f = a(r, c) / a(c, c);
                    for (int j = c; j < a.n; ++j) a(r, j) -= f * a(c, j);
                }
            }
            return d;
        }
    }
}

Mat inverse(const Mat& m) {
    Mat a = m;
    Mat inv = Mat::identity(m.n);
    for (int c = 0; c < a.n; ++c) {
        int piv = c;
        for (int r = c + 1; r < a.n; ++r)
            if (std::fabs(a(r, c)) > std::fabs(a(piv, c))) piv = r;
        if (std::fabs(a(piv, c)) < 1e-300) throw std::runtime_error("singular matrix");
        if (piv != c)
            for (int j = 0; j < a.n; ++j) {
                std::swap(a(piv, j), a(c, j));
                std::swap(inv(piv, j), inv(c, j));
            }
        double d = a(c, c);
        for (int j = 0; j < a.n; ++j) {
            a(c, j) /= d;
            inv(c, j) /= d;
        }
        for (int r = 0; r < a.n; ++r) {
            if (r == c) continue;
            double f = a(r, c);
            if (f == 0.0) continue;
            for (int j = 0; j < a.n; ++j) {
                a(r, j) -= f * a(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

}  // namespace kf

namespace kf::geom {

Vec sym_eigenvalues(Mat m) {
    // Cyclic Jacobi; plenty for n <= 4.
    const int n = m.n;
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += m(i, j) * m(i, j);
        if (off < 1e-28) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::fabs(m(p, q)) < 1e-300) continue;
                double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (int k = 0; k < n; ++k) {
                    double mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
            }
    }
    Vec ev(n);
    for (int i = 0; i < n; ++i) ev[i] = m(i, i);
    std::sort(ev.a.begin(), ev.a.begin() + n);
    return ev;
}

namespace {

std::string point_str(const Point& p) {
    std::string s = "(";
    for (int i = 0; i < p.n; ++i) s += (i ? ", " : "") + std::to_string(p[i]);
    return s + ")";
}

}  // namespace

Mat metric_at(const MetricField& g, const Point& p) {
    Mat m = g.comps(p);
    for (int i = 0; i < m.n; ++i)
        for (int j = i + 1; j < m.n; ++j)
            if (std::fabs(m(i, j) - m(j, i)) > 1e-10 * (1.0 + std::fabs(m(i, j))))
                throw DegenerateMetricError("metric not symmetric at " + point_str(p));
    if (std::fabs(det(m)) < 1e-12) throw DegenerateMetricError("degenerate metric at " + point_str(p));
    Vec ev = sym_eigenvalues(m);
    int neg = 0;
    for (int i = 0; i < m.n; ++i)
        if (ev[i] < 0) ++neg;
    const int want = (g.sig == Signature::lorentzian) ? 1 : 0;
    if (neg != want) throw DegenerateMetricError("metric signature mismatch at " + point_str(p));
    return m;
}

namespace {

Mat metric_raw(const MetricField& g, const Point& p) { return g.comps(p); }

}  // namespace

Ten3 christoffel(const MetricField& g, const Point& p, const FDConfig& cfg) {
    const int n = g.dim;
    Mat gp = metric_at(g, p);
    Mat gi = inverse(gp);
    // dg[c](a,b) = d_c g_ab; stencil points skip the signature check but the
    // determinant still guards against a singular evaluation.
    std::array<Mat, kMaxDim> dg;
    for (int c = 0; c < n; ++c) {
        dg[c] = fd_d1([&](const Point& q) {
            Mat m = metric_raw(g, q);
            if (std::fabs(det(m)) < 1e-12)
                throw DegenerateMetricError("degenerate metric at stencil point");
            return m;
        }, p, c, cfg);
    }
    Ten3 gam(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = b; c < n; ++c) {
                double s = 0;
                for (int d = 0; d < n; ++d)
                    s += gi(a, d) * (dg[b](d, c) + dg[c](d, b) - dg[d](b, c));
                gam(a, b, c) = 0.5 * s;
                gam(a, c, b) = gam(a, b, c);
            }
    return gam;
}

Mat ricci(const MetricField& g, const Point& p, const FDConfig& cfg) {
    const int n = g.dim;
    Ten3 gam = christoffel(g, p, cfg);
    std::array<Ten3, kMaxDim> dgam;
    for (int c = 0; c < n; ++c)
        dgam[c] = fd_d1([&](const Point& q) { return christoffel(g, q, cfg); }, p, c, cfg);
    Mat ric(n);
    for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
            double s = 0;
            for (int a = 0; a < n; ++a) s += dgam[a](a, b, c) - dgam[b](a, a, c);
            for (int a = 0; a < n; ++a)
                for (int d = 0; d < n; ++d)
                    s += gam(a, a, d) * gam(d, b, c) - gam(a, b, d) * gam(d, a, c);
            ric(b, c) = s;
        }
    return ric;
}

double scalar_curvature(const MetricField& g, const Point& p, const FDConfig& cfg) {
    Mat gi = inverse(metric_at(g, p));
    Mat ric = ricci(g, p, cfg);
    double s = 0;
    for (int a = 0; a < g.dim; ++a)
        for (int b = 0; b < g.dim; ++b) s += gi(a, b) * ric(a, b);
    return s;
}

Mat lie_derivative_metric(const VectorField& X, const MetricField& g, const Point& p,
                          const FDConfig& cfg) {
    const int n = g.dim;
    Vec Xp = X.comps(p);
    Mat gp = metric_raw(g, p);
    std::array<Mat, kMaxDim> dg;
    std::array<Vec, kMaxDim> dX;
    for (int c = 0; c < n; ++c) {
        dg[c] = fd_d1([&](const Point& q) { return metric_raw(g, q); }, p, c, cfg);
        dX[c] = fd_d1([&](const Point& q) { return X.comps(q); }, p, c, cfg);
    }
    Mat out(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            double s = 0;
            for (int c = 0; c < n; ++c)
                s += Xp[c] * dg[c](a, b) + gp(c, b) * dX[a][c] + gp(a, c) * dX[b][c];
            out(a, b) = s;
        }
    return out;
}

Mat covderiv_oneform(const OneFormField& w, const MetricField& g, const Point& p,
                     const FDConfig& cfg) {
    const int n = g.dim;
    Ten3 gam = christoffel(g, p, cfg);
    Vec wp = w.comps(p);
    Mat out(n);
    for (int a = 0; a < n; ++a) {
        Vec da = fd_d1([&](const Point& q) { return w.comps(q); }, p, a, cfg);
        for (int b = 0; b < n; ++b) {
            double s = da[b];
            for (int c = 0; c < n; ++c) s -= gam(c, a, b) * wp[c];
            out(a, b) = s;
        }
    }
    return out;
}

Mat exterior_d_oneform(const OneFormField& w, const Point& p, const FDConfig& cfg) {
    const int n = w.dim;
    std::array<Vec, kMaxDim> dw;
    for (int a = 0; a < n; ++a)
        dw[a] = fd_d1([&](const Point& q) { return w.comps(q); }, p, a, cfg);
    Mat out(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) out(a, b) = dw[a][b] - dw[b][a];
    return out;
}

Vec hodge_star_2d(const Vec& w_at_p, const Mat& q_at_p, int orientation) {
    if (q_at_p.n != 2) throw std::invalid_argument("hodge_star_2d needs dim 2");
    double d = det(q_at_p);
    if (d < 1e-12) throw DegenerateMetricError("degenerate metric");
    const double vol = orientation * std::sqrt(d);
    Mat qi = inverse(q_at_p);
    Vec wu = matvec(qi, w_at_p);  // raised components
    // (*w)_a = vol eps_{ba} w^b with eps_{01} = +1
    Vec out(2);
    out[0] = -vol * wu[1];
    out[1] = vol * wu[0];
    return out;
}

Vec hodge_star_2d(const OneFormField& w, const MetricField& q, int orientation, const Point& p) {
    return hodge_star_2d(w.comps(p), metric_at(q, p), orientation);
}

double divergence(const OneFormField& w, const MetricField& g, const Point& p,
                  const FDConfig& cfg) {
    Mat gi = inverse(metric_at(g, p));
    Mat cd = covderiv_oneform(w, g, p, cfg);
    double s = 0;
    for (int a = 0; a < g.dim; ++a)
        for (int b = 0; b < g.dim; ++b) s += gi(a, b) * cd(a, b);
    return s;
}

double metric_compat_residual(const MetricField& g, const Point& p, const FDConfig& cfg) {
    const int n = g.dim;
    Ten3 gam = christoffel(g, p, cfg);
    Mat gp = metric_raw(g, p);
    double r = 0;
    for (int c = 0; c < n; ++c) {
        Mat dg = fd_d1([&](const Point& q) { return metric_raw(g, q); }, p, c, cfg);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                double s = dg(a, b);
                for (int d = 0; d < n; ++d) s -= gam(d, c, a) * gp(d, b) + gam(d, c, b) * gp(a, d);
                r = std::max(r, std::fabs(s));
            }
    }
    return r;
}

Vec raise(const Mat& g_at_p, const Vec& w) { return matvec(inverse(g_at_p), w); }

double norm2(const Mat& g_at_p, const Vec& w) { return dot(raise(g_at_p, w), w); }

double inner(const Mat& g_at_p, const Vec& v, const Vec& w) { return dot(raise(g_at_p, v), w); }

double norm2_tensor2(const Mat& g_at_p, const Mat& T) {
    Mat gi = inverse(g_at_p);
    double s = 0;
    for (int a = 0; a < T.n; ++a)
        for (int b = 0; b < T.n; ++b)
            for (int c = 0; c < T.n; ++c)
                for (int d = 0; d < T.n; ++d) s += T(a, b) * T(c, d) * gi(a, c) * gi(b, d);
    return s;
}

}  // namespace kf::geom
