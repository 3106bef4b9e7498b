#include <doctest.h>

#include <cmath>

#include "kundtflow/calculus.hpp"
#include "oracles.hpp"

using namespace kf;

namespace {

// Hyperbolic model q = d rho^2 / (4 lambda^2) + e^rho dw^2 on the (rho, w) chart.
MetricField poincare(double lambda) {
    MetricField q;
    q.dim = 2;
    q.sig = Signature::riemannian;
    q.comps = [lambda](const Point& p) {
        Mat m(2);
        m(0, 0) = 1.0 / (4.0 * lambda * lambda);
        m(1, 1) = std::exp(p[0]);
        return m;
    };
    return q;
}

MetricField euclidean(int dim) {
    MetricField g;
    g.dim = dim;
    g.sig = Signature::riemannian;
    g.comps = [dim](const Point&) { return Mat::identity(dim); };
    return g;
}

}  // namespace

TEST_CASE("christoffel: constant metric gives zero") {
    FDConfig cfg;
    Ten3 gam = geom::christoffel(euclidean(3), Point{0.3, -0.2, 0.7}, cfg);
    double m = 0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) m = std::max(m, std::fabs(gam(a, b, c)));
    CHECK(m < 1e-12);
}

TEST_CASE("christoffel: hyperbolic model against hand differentiation") {
    // For q = d rho^2/4 + e^rho dw^2 (lambda = 1):
    //   Gamma^rho_{ww} = -1/2 q^{rr} d_rho q_ww = -2 e^rho,  Gamma^w_{rho w} = 1/2.
    FDConfig cfg;
    MetricField q = poincare(1.0);
    for (double rho : {0.0, 0.5, -0.8}) {
        Ten3 gam = geom::christoffel(q, Point{rho, 0.4}, cfg);
        CHECK(gam(0, 1, 1) == doctest::Approx(-2.0 * std::exp(rho)).epsilon(1e-9));
        CHECK(gam(1, 0, 1) == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(gam(1, 1, 0) == gam(1, 0, 1));  // symmetry
        CHECK(std::fabs(gam(0, 0, 0)) < 1e-10);
    }
}

TEST_CASE("christoffel: consistency under a coordinate swap") {
    // Same metric written in swapped coordinates; Gamma entries swap labels.
    FDConfig cfg;
    MetricField q = poincare(1.0);
    MetricField qs;
    qs.dim = 2;
    qs.sig = Signature::riemannian;
    qs.comps = [](const Point& p) {
        Mat m(2);
        m(0, 0) = std::exp(p[1]);
        m(1, 1) = 0.25;
        return m;
    };
    Ten3 a = geom::christoffel(q, Point{0.3, 0.6}, cfg);
    Ten3 b = geom::christoffel(qs, Point{0.6, 0.3}, cfg);
    CHECK(a(0, 1, 1) == doctest::Approx(b(1, 0, 0)).epsilon(1e-9));
    CHECK(a(1, 0, 1) == doctest::Approx(b(0, 1, 0)).epsilon(1e-9));
}

TEST_CASE("christoffel: degenerate metric error") {
    MetricField g;
    g.dim = 2;
    g.sig = Signature::riemannian;
    g.comps = [](const Point& p) {
        Mat m(2);
        m(0, 0) = p[0];  // vanishes at rho = 0
        m(1, 1) = 1.0;
        return m;
    };
    CHECK_THROWS_AS(geom::christoffel(g, Point{0.0, 0.0}, FDConfig{}), DegenerateMetricError);
}

TEST_CASE("ricci: flat, hyperbolic and round sphere") {
    FDConfig cfg;
    Mat r0 = geom::ricci(euclidean(3), Point{0.1, 0.2, 0.3}, cfg);
    CHECK(max_abs(r0) < 1e-9);

    MetricField q = poincare(1.0);
    for (double rho : {-0.5, 0.0, 0.7}) {
        Point p{rho, 0.3};
        Mat ric = geom::ricci(q, p, cfg);
        Mat expect = -1.0 * q.comps(p);
        CHECK(max_abs(ric - expect) < 1e-8);
    }

    // unit round sphere chart: g = d th^2 + sin^2 th d ph^2; Ric = +g fixes
    // the curvature sign convention
    MetricField sph;
    sph.dim = 2;
    sph.sig = Signature::riemannian;
    sph.comps = [](const Point& p) {
        Mat m(2);
        m(0, 0) = 1.0;
        m(1, 1) = std::sin(p[0]) * std::sin(p[0]);
        return m;
    };
    Point p{1.1, 0.4};
    CHECK(max_abs(geom::ricci(sph, p, cfg) - sph.comps(p)) < 1e-8);
}

TEST_CASE("ricci: symmetry and scalar curvature") {
    FDConfig cfg;
    MetricField q = poincare(0.7);
    oracle::Rng rng(31);
    for (int i = 0; i < 5; ++i) {
        Point p{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        Mat ric = geom::ricci(q, p, cfg);
        CHECK(max_abs(ric - transpose(ric)) < cfg.tol);
        CHECK(geom::scalar_curvature(q, p, cfg) == doctest::Approx(-2.0 * 0.49).epsilon(1e-6));
    }
}

TEST_CASE("stencil convergence: halving the step gains >= 8x on the hyperbolic benchmark") {
    MetricField q = poincare(1.0);
    Point p{0.4, 0.2};
    auto resid = [&](double step) {
        FDConfig cfg;
        cfg.step = step;
        Mat ric = geom::ricci(q, p, cfg);
        return max_abs(ric + q.comps(p));
    };
    double coarse = resid(0.02), fine = resid(0.01);
    CHECK(coarse / fine >= 8.0);
}

TEST_CASE("metric compatibility residual is small") {
    FDConfig cfg;
    MetricField q = poincare(1.3);
    CHECK(geom::metric_compat_residual(q, Point{0.2, -0.4}, cfg) < cfg.tol);
}

TEST_CASE("lie derivative: Killing fields of simple metrics") {
    FDConfig cfg;
    // rotation field on flat R^2
    VectorField rot{2, [](const Point& p) { return Vec{-p[1], p[0]}; }};
    CHECK(max_abs(geom::lie_derivative_metric(rot, euclidean(2), Point{0.3, 0.8}, cfg)) < 1e-9);

    // l# on the hyperbolic model: L q = 2 lambda (l x l - q)
    const double lam = 1.0;
    MetricField q = poincare(lam);
    VectorField lsharp{2, [&q, lam](const Point& p) {
                           Vec ell{-1.0 / (2.0 * lam), 0.0};
                           return matvec(inverse(q.comps(p)), ell);
                       }};
    for (double rho : {-0.3, 0.5}) {
        Point p{rho, 0.1};
        Vec ell{-1.0 / (2.0 * lam), 0.0};
        Mat expect = 2.0 * lam * (outer(ell, ell) - q.comps(p));
        CHECK(max_abs(geom::lie_derivative_metric(lsharp, q, p, cfg) - expect) < 1e-8);
    }
}

TEST_CASE("covderiv: hyperbolic model Hessian of d rho") {
    FDConfig cfg;
    const double lam = 1.0;
    MetricField q = poincare(lam);
    OneFormField drho{2, [](const Point&) { return Vec{1.0, 0.0}; }};
    Point p{0.25, -0.6};
    Mat cd = geom::covderiv_oneform(drho, q, p, cfg);
    Mat expect(2);
    expect(1, 1) = 2.0 * lam * lam * std::exp(p[0]);
    CHECK(max_abs(cd - expect) < 1e-8);

    // constant form, flat metric
    CHECK(max_abs(geom::covderiv_oneform(drho, euclidean(2), p, cfg)) < 1e-12);
}

TEST_CASE("covderiv: antisymmetric part equals half the exterior derivative") {
    FDConfig cfg;
    MetricField q = poincare(0.8);
    OneFormField w{2, [](const Point& p) {
                       return Vec{std::sin(p[0] * p[1]), std::cos(p[0]) + p[1] * p[1]};
                   }};
    oracle::Rng rng(7);
    for (int i = 0; i < 10; ++i) {
        Point p{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        Mat cd = geom::covderiv_oneform(w, q, p, cfg);
        Mat dw = geom::exterior_d_oneform(w, p, cfg);
        CHECK(max_abs(cd - transpose(cd) - dw) < 1e-7);
    }
}

TEST_CASE("hodge star in 2D") {
    FDConfig cfg;
    // *dx = dy on Euclidean R^2
    Vec star = geom::hodge_star_2d(Vec{1.0, 0.0}, Mat::identity(2), +1);
    CHECK(star[0] == doctest::Approx(0.0));
    CHECK(star[1] == doctest::Approx(1.0));

    // on the hyperbolic model *d rho = 2 lambda e^{rho/2} dw
    const double lam = 1.0;
    MetricField q = poincare(lam);
    Point p{0.6, 0.1};
    Vec sd = geom::hodge_star_2d(Vec{1.0, 0.0}, q.comps(p), +1);
    CHECK(sd[0] == doctest::Approx(0.0));
    CHECK(sd[1] == doctest::Approx(2.0 * lam * std::exp(0.5 * p[0])).epsilon(1e-12));

    // ** = -id and |*w| = |w| on random data, exact to 1e-12
    oracle::Rng rng(99);
    for (int i = 0; i < 100; ++i) {
        Mat m(2);
        double a = rng.uniform(0.2, 2.0), b = rng.uniform(-0.3, 0.3), c = rng.uniform(0.2, 2.0);
        m(0, 0) = a;
        m(0, 1) = m(1, 0) = b;
        m(1, 1) = c + b * b / a;  // keeps m positive definite
        Vec w{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        Vec ss = geom::hodge_star_2d(geom::hodge_star_2d(w, m, +1), m, +1);
        CHECK(max_abs(ss + w) < 1e-12);
        CHECK(geom::norm2(m, geom::hodge_star_2d(w, m, +1)) ==
              doctest::Approx(geom::norm2(m, w)).epsilon(1e-12));
    }

    CHECK_THROWS_AS(geom::hodge_star_2d(Vec{1.0, 0.0}, Mat(2), +1), DegenerateMetricError);
}

TEST_CASE("divergence: flat and hyperbolic anchors") {
    FDConfig cfg;
    OneFormField cst{2, [](const Point&) { return Vec{0.7, -0.2}; }};
    CHECK(std::fabs(geom::divergence(cst, euclidean(2), Point{0.1, 0.4}, cfg)) < 1e-12);

    // Laplacian of rho on the lambda = 1 model equals 2
    MetricField q = poincare(1.0);
    OneFormField drho{2, [](const Point&) { return Vec{1.0, 0.0}; }};
    CHECK(geom::divergence(drho, q, Point{-0.2, 0.9}, cfg) == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("lorentzian signature check") {
    MetricField g;
    g.dim = 4;
    g.sig = Signature::lorentzian;
    g.comps = [](const Point&) {
        Mat m = Mat::identity(4);
        m(0, 0) = -1.0;
        return m;
    };
    CHECK_NOTHROW(geom::metric_at(g, Point{0, 0, 0, 0}));
    g.sig = Signature::riemannian;
    CHECK_THROWS_AS(geom::metric_at(g, Point{0, 0, 0, 0}), DegenerateMetricError);
}
