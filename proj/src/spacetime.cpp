#include "kundtflow/spacetime.hpp"

#include <cmath>

namespace kf::spacetime {

namespace {

Point spatial(const Point& p4) { return Point{p4[1], p4[2], p4[3]}; }

Vec to4(double t_comp, const Vec& xyz) { return Vec{t_comp, xyz[0], xyz[1], xyz[2]}; }

MetricField assemble_metric_field(const GlobHypMetric& g) {
    MetricField m;
    m.dim = 4;
    m.sig = Signature::lorentzian;
    auto beta = g.beta;
    auto coframe = g.coframe;
    m.comps = [beta, coframe](const Point& p4) {
        const Point xyz = spatial(p4);
        const double b = beta(p4[0], xyz);
        auto e = coframe(p4[0], xyz);
        Mat out(4);
        out(0, 0) = -b * b;
        for (int a = 0; a < 3; ++a)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) out(1 + i, 1 + j) += e[a][i] * e[a][j];
        return out;
    };
    return m;
}

// Spatial metric at fixed t as a 3D field.
MetricField spatial_metric(const GlobHypMetric& g, double t) {
    MetricField h;
    h.dim = 3;
    h.sig = Signature::riemannian;
    auto coframe = g.coframe;
    h.comps = [coframe, t](const Point& xyz) {
        auto e = coframe(t, xyz);
        Mat out(3);
        for (int a = 0; a < 3; ++a) out = out + outer(e[a], e[a]);
        return out;
    };
    return h;
}

// Xi map for a lift whose Theta_t(e_l^t) row is supplied as a closure.
kundt::ParabolicPairField make_xi_pair(
    const std::function<double(double, const Point&)>& beta,
    const CoframeFamily& coframe, const std::function<double(double, const Point&)>& f_gauge,
    const std::function<Vec(double, const Point&)>& theta_of_el, double lambda,
    const std::function<double(double, const Point&)>& dbeta_el) {
    kundt::ParabolicPairField pair;
    pair.u = {4, [beta, coframe, f_gauge](const Point& p4) {
                  const Point xyz = spatial(p4);
                  const double ef = std::exp(f_gauge(p4[0], xyz));
                  auto e = coframe(p4[0], xyz);
                  return ef * to4(beta(p4[0], xyz), e[0]);
              }};
    pair.l = {4, [coframe](const Point& p4) {
                  auto e = coframe(p4[0], spatial(p4));
                  return to4(0.0, e[1]);
              }};
    pair.kappa = {4, [beta, f_gauge, theta_of_el, lambda, dbeta_el](const Point& p4) {
                      const Point xyz = spatial(p4);
                      const double emf = std::exp(-f_gauge(p4[0], xyz));
                      const double b = beta(p4[0], xyz);
                      Vec perp = theta_of_el(p4[0], xyz);
                      Vec k = to4(-(lambda * b + dbeta_el(p4[0], xyz)), perp);
                      return emf * k;
                  }};
    return pair;
}

SamplingPlan default_plan(double tlo, double thi) {
    SamplingPlan plan;
    plan.dim = 4;
    plan.lo = {tlo, -0.4, -0.4, -0.4};
    plan.hi = {thi, 0.4, 0.4, 0.4};
    plan.counts = {3, 3, 3, 3};
    plan.tol = 1e-4;
    return plan;
}

}  // namespace

double FlowEquationResiduals::max() const {
    double m = ev_u;
    for (double v : {ev_l, ev_n, ev_theta, ext_u, ext_l, ext_n, closedness}) m = std::max(m, v);
    return m;
}

double EvolutionResiduals::max() const {
    double m = ev_u;
    for (double v : {ev_l, grad_u, grad_l, dt_u0, du0}) m = std::max(m, v);
    return m;
}

GlobHypMetric assemble_spacetime(const cauchy::CauchyPair& pair, const flow::Lapse& lapse) {
    cauchy::validate(pair);
    auto real = cauchy::realize(pair);
    GlobHypMetric g;
    g.lambda = pair.lambda;
    flow::Lapse lp = lapse;
    g.beta = [lp](double t, const Point&) { return lp.beta(t); };
    cauchy::CauchyPair p0 = pair;
    auto cf0 = real.coframe;
    g.coframe = [p0, lp, cf0](double t, const Point& xyz) {
        Mat U = flow::closed_form_coframe(p0, lp, t);
        std::array<Vec, 3> e0 = {cf0[0].comps(xyz), cf0[1].comps(xyz), cf0[2].comps(xyz)};
        std::array<Vec, 3> e;
        for (int a = 0; a < 3; ++a) {
            e[a] = Vec(3);
            for (int b = 0; b < 3; ++b) e[a] = e[a] + U(a, b) * e0[b];
        }
        return e;
    };
    g.metric = assemble_metric_field(g);
    g.hamiltonian = [p0, lp](double t, const Point&) { return flow::hamiltonian_t(p0, lp, t); };
    auto fg = real.f_gauge;
    g.f_gauge = [fg](double, const Point& xyz) { return fg.eval(xyz); };

    // kappa needs Theta_t(e_l^t) = sum_b Theta^t_{lb} e^t_b in coordinates.
    auto coframe = g.coframe;
    std::function<Vec(double, const Point&)> theta_el = [p0, lp, coframe](double t,
                                                                          const Point& xyz) {
        cauchy::CauchyPair th = flow::theta_closed_form(p0, lp, t);
        auto e = coframe(t, xyz);
        Vec out(3);
        for (int b = 0; b < 3; ++b) out = out + th.theta[1][b] * e[b];
        return out;
    };
    g.pair = make_xi_pair(g.beta, g.coframe, g.f_gauge, theta_el, g.lambda,
                          [](double, const Point&) { return 0.0; });

    auto iv = flow::maximal_interval(pair, lapse);
    double tlo = std::isfinite(iv.first) ? 0.35 * iv.first : -0.4;
    double thi = std::isfinite(iv.second) ? 0.35 * iv.second : 0.4;
    g.plan = default_plan(std::max(tlo, -0.6), std::min(thi, 0.6));
    return g;
}

GlobHypMetric assemble_spacetime(const flow::FlowTrajectory& traj, const FDConfig& cfg) {
    cauchy::validate(traj.pair);
    if (traj.states.size() < 4)
        throw std::invalid_argument("trajectory too sparse for requested FD step");
    std::vector<double> ts;
    ts.reserve(traj.states.size());
    for (auto& s : traj.states) ts.push_back(s.t);

    // One interpolant per coframe entry; states must resolve the FD stencil.
    std::array<std::array<flow::Pchip, 3>, 3> Uij;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            std::vector<double> ys;
            ys.reserve(ts.size());
            for (auto& s : traj.states) ys.push_back(s.U(i, j));
            Uij[i][j] = flow::Pchip::fit(ts, ys);
        }
    if (Uij[0][0].max_spacing() > cfg.step * std::max(1.0, std::fabs(ts.back())))
        throw std::invalid_argument("trajectory too sparse for requested FD step");

    auto real = cauchy::realize(traj.pair);
    GlobHypMetric g;
    g.lambda = traj.pair.lambda;
    flow::Lapse lp = traj.lapse;
    g.beta = [lp](double t, const Point&) { return lp.beta(t); };
    auto cf0 = real.coframe;
    g.coframe = [Uij, cf0](double t, const Point& xyz) {
        std::array<Vec, 3> e0 = {cf0[0].comps(xyz), cf0[1].comps(xyz), cf0[2].comps(xyz)};
        std::array<Vec, 3> e;
        for (int a = 0; a < 3; ++a) {
            e[a] = Vec(3);
            for (int b = 0; b < 3; ++b) e[a] = e[a] + Uij[a][b].eval(t) * e0[b];
        }
        return e;
    };
    g.metric = assemble_metric_field(g);
    cauchy::CauchyPair p0 = traj.pair;
    g.hamiltonian = [p0, lp](double t, const Point&) { return flow::hamiltonian_t(p0, lp, t); };
    auto fg = real.f_gauge;
    g.f_gauge = [fg](double, const Point& xyz) { return fg.eval(xyz); };
    auto coframe = g.coframe;
    std::function<Vec(double, const Point&)> theta_el = [p0, lp, coframe](double t,
                                                                          const Point& xyz) {
        cauchy::CauchyPair th = flow::theta_closed_form(p0, lp, t);
        auto e = coframe(t, xyz);
        Vec out(3);
        for (int b = 0; b < 3; ++b) out = out + th.theta[1][b] * e[b];
        return out;
    };
    g.pair = make_xi_pair(g.beta, g.coframe, g.f_gauge, theta_el, g.lambda,
                          [](double, const Point&) { return 0.0; });
    g.plan = default_plan(traj.interval.first * 0.8, traj.interval.second * 0.8);
    return g;
}

GlobHypMetric preset(const std::string& name, const PresetOptions& opt) {
    const double lam = opt.lambda;
    GlobHypMetric g;
    g.lambda = lam;
    g.hamiltonian = [](double, const Point&) { return 0.0; };

    if (name == "ads4" || name == "stationary-tau31") {
        const double c1 = (name == "ads4") ? 0.0 : opt.c1;
        const double c2 = opt.c2;
        if (!(c2 > 0.0)) throw std::invalid_argument("preset needs c2 > 0");
        g.beta = [c1, c2, lam](double, const Point& xyz) {
            return (c1 * xyz[1] + c2) * std::exp(-lam * xyz[0]);
        };
        g.coframe = [lam](double, const Point& xyz) {
            const double e = std::exp(-lam * xyz[0]);
            return std::array<Vec, 3>{Vec{0.0, e, 0.0}, Vec{1.0, 0.0, 0.0}, Vec{0.0, 0.0, e}};
        };
        g.f_gauge = [lam, c1](double t, const Point& xyz) { return -lam * xyz[0] + c1 * t; };
        // Theta = 0 and d beta(e_l#) = -lambda beta: kappa vanishes.
        auto beta_fn = g.beta;
        g.pair = make_xi_pair(
            g.beta, g.coframe, g.f_gauge,
            [](double, const Point&) { return Vec(3); }, lam,
            [beta_fn, lam](double t, const Point& xyz) { return -lam * beta_fn(t, xyz); });
    } else if (name == "rotating") {
        const double a = opt.a, b = opt.b, c = opt.c;
        g.beta = [a, b, c, lam](double t, const Point& xyz) {
            const double th = -b * t;
            const double cy = a * std::cos(th) + b * std::sin(th);
            const double cz = b * std::cos(th) - a * std::sin(th);
            return (cy * xyz[1] + cz * xyz[2] + c) * std::exp(-lam * xyz[0]);
        };
        g.coframe = [b, lam](double t, const Point& xyz) {
            const double th = -b * t;
            const double e = std::exp(-lam * xyz[0]);
            return std::array<Vec, 3>{
                Vec{0.0, std::cos(th) * e, -std::sin(th) * e},
                Vec{1.0, 0.0, 0.0},
                Vec{0.0, std::sin(th) * e, std::cos(th) * e}};
        };
        g.f_gauge = [lam, a](double t, const Point& xyz) { return -lam * xyz[0] + a * t; };
        auto beta_fn = g.beta;
        g.pair = make_xi_pair(
            g.beta, g.coframe, g.f_gauge,
            [](double, const Point&) { return Vec(3); }, lam,
            [beta_fn, lam](double t, const Point& xyz) { return -lam * beta_fn(t, xyz); });
    } else {
        throw std::invalid_argument("unknown spacetime preset: " + name);
    }
    g.metric = assemble_metric_field(g);
    g.plan = default_plan(-0.4, 0.4);
    return g;
}

double ricci4_residual(const GlobHypMetric& g, const Point& p4, const FDConfig& cfg) {
    Mat ric = geom::ricci(g.metric, p4, cfg);
    Mat gp = g.metric.comps(p4);
    const Point xyz = spatial(p4);
    auto e = g.coframe(p4[0], xyz);
    Vec w = to4(g.beta(p4[0], xyz), e[0]);
    const double H = g.hamiltonian(p4[0], xyz);
    const double lam2 = g.lambda * g.lambda;
    return max_abs(ric + 3.0 * lam2 * gp - 0.5 * H * outer(w, w));
}

double ricci4_residual_max(const GlobHypMetric& g, const FDConfig& cfg) {
    return max_over_plan(g.plan, [&](const Point& p) { return ricci4_residual(g, p, cfg); });
}

namespace {

// Spatial one-form field at fixed t from a (t, xyz) closure.
OneFormField fixed_t(const std::function<Vec(double, const Point&)>& f, double t) {
    return {3, [f, t](const Point& xyz) { return f(t, xyz); }};
}

struct FramePointData {
    double beta;
    Vec dbeta;                // spatial gradient (3)
    std::array<Vec, 3> e;     // coframe rows
    std::array<Vec, 3> esh;   // frame vectors (raised with h)
    Mat h, hinv, theta;       // spatial metric, inverse, shape operator
};

FramePointData frame_data(const GlobHypMetric& g, double t, const Point& xyz,
                          const FDConfig& cfg) {
    FramePointData d;
    d.beta = g.beta(t, xyz);
    d.dbeta = Vec(3);
    for (int i = 0; i < 3; ++i)
        d.dbeta[i] = fd_d1([&](const Point& q) { return g.beta(t, q); }, xyz, i, cfg);
    d.e = g.coframe(t, xyz);
    d.h = Mat(3);
    for (int a = 0; a < 3; ++a) d.h = d.h + outer(d.e[a], d.e[a]);
    d.hinv = inverse(d.h);
    for (int a = 0; a < 3; ++a) d.esh[a] = matvec(d.hinv, d.e[a]);
    // Theta_t = -(1/2 beta) d_t h
    Mat dth = fd_d1_param(
        [&](double s) {
            auto e = g.coframe(s, xyz);
            Mat h(3);
            for (int a = 0; a < 3; ++a) h = h + outer(e[a], e[a]);
            return h;
        },
        t, cfg.step, cfg.order);
    d.theta = (-0.5 / d.beta) * dth;
    return d;
}

Vec theta_of(const FramePointData& d, int a) { return matvec(d.theta, d.esh[a]); }

}  // namespace

FlowEquationResiduals flow_equation_residuals(const GlobHypMetric& g, const FDConfig& cfg) {
    FlowEquationResiduals out;
    max_over_plan_serial(g.plan, [&](const Point& p4) {
        const double t = p4[0];
        const Point xyz = spatial(p4);
        FramePointData d = frame_data(g, t, xyz, cfg);

        std::array<Vec, 3> dte;
        for (int a = 0; a < 3; ++a)
            dte[a] = fd_d1_param([&](double s) { return g.coframe(s, xyz)[a]; }, t, cfg.step,
                                 cfg.order);

        auto pair_with = [&](const Vec& w, int a) { return dot(w, d.esh[a]); };
        const double lb = g.lambda * d.beta;

        Vec r_u = dte[0] + pair_with(d.dbeta, 0) * d.e[0] + d.beta * theta_of(d, 0) - d.dbeta -
                  lb * d.e[1];
        Vec r_l = dte[1] + d.beta * theta_of(d, 1) + (pair_with(d.dbeta, 1) + lb) * d.e[0];
        Vec r_n = dte[2] + d.beta * theta_of(d, 2) + pair_with(d.dbeta, 2) * d.e[0];
        out.ev_u = std::max(out.ev_u, max_abs(r_u));
        out.ev_l = std::max(out.ev_l, max_abs(r_l));
        out.ev_n = std::max(out.ev_n, max_abs(r_n));

        // d_t(Theta(e_u)) + lambda d_t e_l + d(d beta(e_u))
        auto theta_eu_at = [&](double s) {
            FramePointData ds = frame_data(g, s, xyz, cfg);
            return theta_of(ds, 0);
        };
        Vec dt_theta_eu = fd_d1_param(theta_eu_at, t, cfg.step, cfg.order);
        Vec grad_dbeta_eu(3);
        for (int i = 0; i < 3; ++i)
            grad_dbeta_eu[i] = fd_d1(
                [&](const Point& q) {
                    FramePointData dq = frame_data(g, t, q, cfg);
                    return dot(dq.dbeta, dq.esh[0]);
                },
                xyz, i, cfg);
        out.ev_theta =
            std::max(out.ev_theta, max_abs(dt_theta_eu + g.lambda * dte[1] + grad_dbeta_eu));

        // Exterior-derivative system at fixed t.
        std::array<Mat, 3> de;
        for (int a = 0; a < 3; ++a) {
            OneFormField ea{3, [&, a](const Point& q) { return g.coframe(t, q)[a]; }};
            de[a] = geom::exterior_d_oneform(ea, xyz, cfg);
        }
        out.ext_u = std::max(out.ext_u,
                             max_abs(de[0] - wedge(theta_of(d, 0) - g.lambda * d.e[1], d.e[0])));
        out.ext_l = std::max(out.ext_l, max_abs(de[1] - wedge(theta_of(d, 1), d.e[0])));
        out.ext_n = std::max(out.ext_n, max_abs(de[2] + g.lambda * wedge(d.e[1], d.e[2]) -
                                                wedge(theta_of(d, 2), d.e[0])));

        // Closedness of Theta(e_u) + lambda e_l (cohomological condition on a
        // simply connected chart).
        OneFormField cohom{3, [&](const Point& q) {
                               FramePointData dq = frame_data(g, t, q, cfg);
                               return theta_of(dq, 0) + g.lambda * dq.e[1];
                           }};
        out.closedness = std::max(out.closedness,
                                  max_abs(geom::exterior_d_oneform(cohom, xyz, cfg)));
        return 0.0;
    });
    return out;
}

SplitPairData induced_split(const GlobHypMetric& g) {
    SplitPairData s;
    auto coframe = g.coframe;
    auto fg = g.f_gauge;
    s.u0 = [fg](double t, const Point& xyz) { return std::exp(fg(t, xyz)); };
    s.u_perp = [coframe, fg](double t, const Point& xyz) {
        return std::exp(fg(t, xyz)) * coframe(t, xyz)[0];
    };
    s.l_perp = [coframe](double t, const Point& xyz) { return coframe(t, xyz)[1]; };
    return s;
}

EvolutionResiduals evolution_residuals(const GlobHypMetric& g, const SplitPairData& split,
                                       const FDConfig& cfg) {
    EvolutionResiduals out;
    max_over_plan_serial(g.plan, [&](const Point& p4) {
        const double t = p4[0];
        const Point xyz = spatial(p4);
        FramePointData d = frame_data(g, t, xyz, cfg);
        const double u0 = split.u0(t, xyz);
        Vec up = split.u_perp(t, xyz);
        Vec lp = split.l_perp(t, xyz);

        // restriction identities are preconditions
        Vec up_sh = matvec(d.hinv, up), lp_sh = matvec(d.hinv, lp);
        if (std::fabs(u0 * u0 - dot(up_sh, up)) > 1e-6 * (1.0 + u0 * u0) ||
            std::fabs(dot(lp_sh, lp) - 1.0) > 1e-6 || std::fabs(dot(up_sh, lp)) > 1e-6)
            throw kundt::PairInvariantError("split data violates the restriction identities");

        Vec dt_up = fd_d1_param([&](double s) { return split.u_perp(s, xyz); }, t, cfg.step,
                                cfg.order);
        Vec dt_lp = fd_d1_param([&](double s) { return split.l_perp(s, xyz); }, t, cfg.step,
                                cfg.order);
        const double lb = g.lambda * d.beta;

        Vec r1 = dt_up + d.beta * matvec(d.theta, up_sh) - u0 * d.dbeta - lb * u0 * lp;
        Vec r2 = u0 * dt_lp + d.beta * u0 * matvec(d.theta, lp_sh) +
                 (dot(d.dbeta, lp_sh) + lb) * up;
        out.ev_u = std::max(out.ev_u, max_abs(r1));
        out.ev_l = std::max(out.ev_l, max_abs(r2));

        MetricField h3 = spatial_metric(g, t);
        OneFormField upf = fixed_t(split.u_perp, t);
        OneFormField lpf = fixed_t(split.l_perp, t);
        Mat grad_u = geom::covderiv_oneform(upf, h3, xyz, cfg) + u0 * d.theta -
                     g.lambda * wedge(up, lp);
        Mat grad_l = u0 * geom::covderiv_oneform(lpf, h3, xyz, cfg) -
                     outer(matvec(d.theta, lp_sh), up) -
                     g.lambda * u0 * (outer(lp, lp) - d.h);
        out.grad_u = std::max(out.grad_u, max_abs(grad_u));
        out.grad_l = std::max(out.grad_l, max_abs(grad_l));

        double dt_u0 = fd_d1_param([&](double s) { return split.u0(s, xyz); }, t, cfg.step,
                                   cfg.order);
        out.dt_u0 = std::max(out.dt_u0, std::fabs(dt_u0 - dot(d.dbeta, up_sh)));
        Vec du0(3);
        for (int i = 0; i < 3; ++i)
            du0[i] = fd_d1([&](const Point& q) { return split.u0(t, q); }, xyz, i, cfg);
        out.du0 = std::max(out.du0,
                           max_abs(du0 + matvec(d.theta, up_sh) + g.lambda * u0 * lp));
        return 0.0;
    });
    return out;
}

kundt::ParabolicPairField xi_pair(const GlobHypMetric& g) {
    // Invariants: u null, l unit, u _|_ l at the plan samples.
    max_over_plan_serial(g.plan, [&](const Point& p4) {
        Mat gp = geom::metric_at(g.metric, p4);
        Vec u = g.pair.u.comps(p4), l = g.pair.l.comps(p4);
        if (std::fabs(geom::norm2(gp, u)) > 1e-8 * (1.0 + dot(u, u)) ||
            std::fabs(geom::norm2(gp, l) - 1.0) > 1e-8 ||
            std::fabs(geom::inner(gp, u, l)) > 1e-8)
            throw kundt::PairInvariantError("xi pair invariants violated");
        return 0.0;
    });
    return g.pair;
}

}  // namespace kf::spacetime
