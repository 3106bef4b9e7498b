#include "kundtflow/kundt.hpp"

#include <cmath>

namespace kf::kundt {

namespace {

Point base_pt(double y, double z) { return Point{y, z}; }

// F and its spatial gradient as closures over the 2D base at fixed xu.
double eval_F(const KundtFamilies& fam, double xu, double y, double z) { return fam.F(xu, y, z); }

double dF_dxu_at(const KundtFamilies& fam, double xu, double y, double z, const FDConfig& cfg) {
    if (fam.dF_dxu) return fam.dF_dxu(xu, y, z);
    return fd_d1_param([&](double s) { return fam.F(s, y, z); }, xu, cfg.step, cfg.order);
}

Mat q_at(const KundtFamilies& fam, double xu, double y, double z, const FDConfig& cfg) {
    Vec dF = grad_F(fam, xu, y, z, cfg);
    Vec om = fam.omega(xu, y, z);
    double eF = std::exp(fam.F(xu, y, z));
    return (1.0 / (4.0 * fam.lambda * fam.lambda)) * outer(dF, dF) + eF * outer(om, om);
}

}  // namespace

Vec grad_F(const KundtFamilies& fam, double xu, double y, double z, const FDConfig& cfg) {
    if (fam.gradF) return fam.gradF(xu, y, z);
    Point p = base_pt(y, z);
    Vec g(2);
    for (int i = 0; i < 2; ++i)
        g[i] = fd_d1([&](const Point& q) { return fam.F(xu, q[0], q[1]); }, p, i, cfg);
    return g;
}

MetricField assemble_metric(const KundtFamilies& fam, const FDConfig& cfg) {
    if (fam.lambda == 0.0) throw std::invalid_argument("kundt: lambda must be nonzero");
    MetricField g;
    g.dim = 4;
    g.sig = Signature::lorentzian;
    KundtFamilies f = fam;
    g.comps = [f, cfg](const Point& p) {
        const double xu = p[0], y = p[2], z = p[3];
        const double eF = std::exp(f.F(xu, y, z));
        Vec beta = f.beta ? f.beta(xu, y, z) : Vec{0.0, 0.0};
        Mat q = q_at(f, xu, y, z, cfg);
        Mat m(4);
        m(0, 0) = f.H ? f.H(xu, y, z) : 0.0;
        m(0, 1) = m(1, 0) = eF;
        m(0, 2) = m(2, 0) = eF * beta[0];
        m(0, 3) = m(3, 0) = eF * beta[1];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m(2 + i, 2 + j) = q(i, j);
        return m;
    };
    return g;
}

MetricField base_metric(const KundtFamilies& fam, double xu, const FDConfig& cfg) {
    MetricField q;
    q.dim = 2;
    q.sig = Signature::riemannian;
    KundtFamilies f = fam;
    q.comps = [f, xu, cfg](const Point& p) { return q_at(f, xu, p[0], p[1], cfg); };
    return q;
}

BaseConstraintReport check_base_constraints(const KundtFamilies& fam, const SamplingPlan& plan3,
                                            const FDConfig& cfg) {
    const double lam2 = fam.lambda * fam.lambda;
    BaseConstraintReport rep;
    auto eval = [&](const Point& s) {
        const double xu = s[0], y = s[1], z = s[2];
        MetricField q = base_metric(fam, xu, cfg);
        Point p = base_pt(y, z);
        Mat qp = geom::metric_at(q, p);
        OneFormField dF{2, [&fam, xu, &cfg](const Point& b) {
                            return grad_F(fam, xu, b[0], b[1], cfg);
                        }};
        Vec dFp = dF.comps(p);
        double r1 = std::fabs(geom::norm2(qp, dFp) - 4.0 * lam2);
        Mat hess = geom::covderiv_oneform(dF, q, p, cfg) + 0.5 * outer(dFp, dFp) - 2.0 * lam2 * qp;
        double r2 = max_abs(hess);
        double r3 = std::fabs(geom::divergence(dF, q, p, cfg) - 2.0 * lam2);
        rep.norm_df2 = std::max(rep.norm_df2, r1);
        rep.hessian = std::max(rep.hessian, r2);
        rep.laplacian = std::max(rep.laplacian, r3);
        return 0.0;
    };
    max_over_plan_serial(plan3, eval);
    return rep;
}

double upsilon(const KundtFamilies& fam, double xu, double y, double z, const FDConfig& cfg) {
    const double lam2 = fam.lambda * fam.lambda;
    Point p = base_pt(y, z);
    Mat qp = q_at(fam, xu, y, z, cfg);
    Vec dFp = grad_F(fam, xu, y, z, cfg);

    // d/dxu of the composite *_{q} dF (q and dF both move with x_u).
    Vec d_star = fd_d1_param(
        [&](double s) {
            return geom::hodge_star_2d(grad_F(fam, s, y, z, cfg), q_at(fam, s, y, z, cfg), +1);
        },
        xu, cfg.step, cfg.order);

    // *_{q} of d/dxu dF (analytic hook when available).
    Vec d_dF(2);
    if (fam.dF_dxu) {
        Point pb = p;
        for (int i = 0; i < 2; ++i)
            d_dF[i] = fd_d1([&](const Point& b) { return fam.dF_dxu(xu, b[0], b[1]); }, pb, i, cfg);
    } else {
        d_dF = fd_d1_param([&](double s) { return grad_F(fam, s, y, z, cfg); }, xu, cfg.step,
                           cfg.order);
    }
    Vec star_d = geom::hodge_star_2d(d_dF, qp, +1);

    const double inner = geom::inner(qp, d_star + star_d, dFp);
    return std::exp(-fam.F(xu, y, z)) / (4.0 * lam2) * inner * std::sqrt(det(qp));
}

BetaSolution solve_beta_local(const KundtFamilies& fam, const RectGrid& grid,
                              const std::function<double(double)>& gamma,
                              const std::function<double(double, double)>& kappa_fn,
                              const std::vector<double>& xu_samples, const FDConfig& cfg) {
    if (grid.ny < 3 || grid.nz < 3) throw std::invalid_argument("solve_beta_local: grid too small");
    KundtFamilies f = fam;
    const double z0 = grid.z0;
    auto gamma_c = gamma;
    auto kappa_c = kappa_fn;
    FDConfig c = cfg;

    auto integrand = [f, kappa_c, c](double xu, double y, double zz) {
        Point p{y, zz};
        double dyk = fd_d1([&](const Point& q) { return kappa_c(q[0], q[1]); }, p, 0, c);
        return dyk - upsilon(f, xu, y, zz, c);
    };

    auto beta_fn = [integrand, gamma_c, kappa_c, z0](double xu, double y, double z) {
        // composite Simpson from z0 to z, >= 33 nodes
        int n = 48;  // subintervals (even)
        double h = (z - z0) / n;
        double s = integrand(xu, y, z0) + integrand(xu, y, z);
        for (int i = 1; i < n; ++i)
            s += (i % 2 ? 4.0 : 2.0) * integrand(xu, y, z0 + i * h);
        double quad = (z == z0) ? 0.0 : s * h / 3.0;
        return Vec{gamma_c(y) + quad, kappa_c(y, z)};
    };

    BetaSolution sol;
    sol.beta = beta_fn;
    // FD residual of d beta = Upsilon dy ^ dz on interior grid points.
    for (double xu : xu_samples) {
        for (int i = 1; i + 1 < grid.ny; ++i)
            for (int j = 1; j + 1 < grid.nz; ++j) {
                double y = grid.y0 + (grid.y1 - grid.y0) * i / (grid.ny - 1);
                double z = grid.z0 + (grid.z1 - grid.z0) * j / (grid.nz - 1);
                Point p{y, z};
                OneFormField bf{2, [&](const Point& q) { return beta_fn(xu, q[0], q[1]); }};
                Mat db = geom::exterior_d_oneform(bf, p, cfg);
                double res = std::fabs(db(0, 1) - upsilon(fam, xu, y, z, cfg));
                sol.residual = std::max(sol.residual, res);
            }
    }
    return sol;
}

ParabolicPairField adapted_pair(const KundtFamilies& fam, const FDConfig& cfg) {
    if (fam.lambda == 0.0) throw std::invalid_argument("adapted_pair: lambda must be nonzero");
    const double lam = fam.lambda;
    KundtFamilies f = fam;
    FDConfig c = cfg;

    ParabolicPairField pair;
    pair.u = {4, [f](const Point& p) {
                  return Vec{std::exp(f.F(p[0], p[2], p[3])), 0.0, 0.0, 0.0};
              }};
    pair.l = {4, [f, lam, c](const Point& p) {
                  Vec dF = grad_F(f, p[0], p[2], p[3], c);
                  return Vec{0.0, 0.0, -dF[0] / (2.0 * lam), -dF[1] / (2.0 * lam)};
              }};
    pair.kappa = {4, [f, lam, c](const Point& p) {
        const double xu = p[0], y = p[2], z = p[3];
        const double eF = std::exp(f.F(xu, y, z));
        Mat qp = q_at(f, xu, y, z, c);
        Mat qi = inverse(qp);
        Vec dF = grad_F(f, xu, y, z, c);
        Vec ell = (-1.0 / (2.0 * lam)) * dF;
        Vec ell_sharp = matvec(qi, ell);

        // sigma_kappa isolated from
        //   2 sigma e^F = 2 lambda H + dH(l#) + 2 e^F d_xu f + 2 alpha(d_xu l#)
        // with f = e^{-F}/(2 lambda) dF(alpha#), alpha = e^F beta.
        auto alpha_at = [&](double s) {
            Vec b = f.beta ? f.beta(s, y, z) : Vec{0.0, 0.0};
            return std::exp(f.F(s, y, z)) * b;
        };
        auto f_small = [&](double s) {
            Mat q2 = q_at(f, s, y, z, c);
            Vec dF2 = grad_F(f, s, y, z, c);
            return std::exp(-f.F(s, y, z)) / (2.0 * lam) * dot(dF2, matvec(inverse(q2), alpha_at(s)));
        };
        double d_fsm = fd_d1_param(f_small, xu, c.step, c.order);
        Vec dH(2);
        if (f.H) {
            Point pb{y, z};
            for (int i = 0; i < 2; ++i)
                dH[i] = fd_d1([&](const Point& b) { return f.H(xu, b[0], b[1]); }, pb, i, c);
        }
        Vec d_ellsharp = fd_d1_param(
            [&](double s) {
                Mat q2 = q_at(f, s, y, z, c);
                Vec dF2 = grad_F(f, s, y, z, c);
                return matvec(inverse(q2), (-1.0 / (2.0 * lam)) * dF2);
            },
            xu, c.step, c.order);
        const double Hval = f.H ? f.H(xu, y, z) : 0.0;
        const double sigma =
            (2.0 * lam * Hval + dot(dH, ell_sharp) + 2.0 * eF * d_fsm +
             2.0 * dot(alpha_at(xu), d_ellsharp)) /
            (2.0 * eF);

        Vec d_ell(2);
        if (f.dF_dxu) {
            Point pb{y, z};
            for (int i = 0; i < 2; ++i)
                d_ell[i] = -fd_d1([&](const Point& b) { return f.dF_dxu(xu, b[0], b[1]); }, pb, i,
                                  c) /
                           (2.0 * lam);
        } else {
            Vec dd = fd_d1_param([&](double s) { return grad_F(f, s, y, z, c); }, xu, c.step,
                                 c.order);
            d_ell = (-1.0 / (2.0 * lam)) * dd;
        }
        return Vec{sigma, 0.0, -std::exp(-f.F(xu, y, z)) * d_ell[0],
                   -std::exp(-f.F(xu, y, z)) * d_ell[1]};
    }};
    return pair;
}

namespace {

void check_pair_invariants(const Mat& gp, const Vec& u, const Vec& l, double tol) {
    const double guu = geom::norm2(gp, u);
    const double gll = geom::norm2(gp, l);
    const double gul = geom::inner(gp, u, l);
    if (max_abs(u) < 1e-14) throw PairInvariantError("pair invariant violated: u vanishes");
    if (std::fabs(guu) > tol || std::fabs(gll - 1.0) > tol || std::fabs(gul) > tol)
        throw PairInvariantError("pair invariant violated: g(u,u)=0, g(l,l)=1, g(u,l)=0 fail");
}

}  // namespace

KillingResiduals killing_residuals(const MetricField& g, const ParabolicPairField& pair,
                                   double lambda, const SamplingPlan& plan, const FDConfig& cfg) {
    VectorField u_sharp{4, [&g, &pair](const Point& p) {
                            return matvec(inverse(g.comps(p)), pair.u.comps(p));
                        }};
    VectorField l_sharp{4, [&g, &pair](const Point& p) {
                            return matvec(inverse(g.comps(p)), pair.l.comps(p));
                        }};

    KillingResiduals out;
    // Invariants first (serial sweep so the exception carries the point).
    max_over_plan_serial(plan, [&](const Point& p) {
        check_pair_invariants(geom::metric_at(g, p), pair.u.comps(p), pair.l.comps(p),
                              50.0 * plan.tol);
        return 0.0;
    });

    out.lie_u = max_over_plan(plan, [&](const Point& p) {
        return max_abs(geom::lie_derivative_metric(u_sharp, g, p, cfg));
    });
    out.du_eq = max_over_plan(plan, [&](const Point& p) {
        Mat du = geom::exterior_d_oneform(pair.u, p, cfg);
        return max_abs(du - 2.0 * lambda * wedge(pair.u.comps(p), pair.l.comps(p)));
    });
    out.dl_eq = max_over_plan(plan, [&](const Point& p) {
        Mat dl = geom::exterior_d_oneform(pair.l, p, cfg);
        return max_abs(dl - wedge(pair.kappa.comps(p), pair.u.comps(p)));
    });
    out.lie_l = max_over_plan(plan, [&](const Point& p) {
        Mat gp = g.comps(p);
        Mat lie = geom::lie_derivative_metric(l_sharp, g, p, cfg);
        Vec l = pair.l.comps(p);
        Mat expect = sym_prod(pair.kappa.comps(p), pair.u.comps(p)) +
                     2.0 * lambda * (outer(l, l) - gp);
        return max_abs(lie - expect);
    });
    return out;
}

OpticalInvariants optical_invariants(const MetricField& g, const OneFormField& u,
                                     const SamplingPlan& plan, const FDConfig& cfg) {
    VectorField u_sharp{4, [&g, &u](const Point& p) {
                            return matvec(inverse(g.comps(p)), u.comps(p));
                        }};
    OpticalInvariants out;
    auto keep_extremal = [](double& slot, double v) {
        if (std::fabs(v) > std::fabs(slot)) slot = v;
    };
    max_over_plan_serial(plan, [&](const Point& p) {
        Mat gp = geom::metric_at(g, p);
        Vec up = u.comps(p);
        double uscale = std::max(1.0, dot(up, up));
        if (std::fabs(geom::norm2(gp, up)) > 100.0 * plan.tol * uscale)
            throw NotNullError("optical invariants: u is not null");
        double theta = 0.5 * geom::divergence(u, g, p, cfg);
        Mat du = geom::exterior_d_oneform(u, p, cfg);
        double om2 = 0.25 * geom::norm2_tensor2(gp, du);
        Mat lie = geom::lie_derivative_metric(u_sharp, g, p, cfg);
        double sig2 = 0.125 * geom::norm2_tensor2(gp, lie) - theta * theta;
        keep_extremal(out.theta, theta);
        keep_extremal(out.omega2, om2);
        keep_extremal(out.sigma2, sig2);
        return 0.0;
    });
    return out;
}

ParabolicPairField change_representative(const ParabolicPairField& pair, const ScalarField& f,
                                         double lambda, const FDConfig& cfg) {
    ParabolicPairField out;
    out.u = pair.u;
    auto u = pair.u;
    auto l = pair.l;
    auto kap = pair.kappa;
    auto fs = f;
    FDConfig c = cfg;
    out.l = {4, [u, l, fs](const Point& p) {
                 return l.comps(p) + fs.eval(p) * u.comps(p);
             }};
    out.kappa = {4, [u, l, kap, fs, lambda, c](const Point& p) {
                     const double fv = fs.eval(p);
                     Vec df(4);
                     for (int i = 0; i < 4; ++i)
                         df[i] = fd_d1([&](const Point& q) { return fs.eval(q); }, p, i, c);
                     Vec lhat = l.comps(p) + fv * u.comps(p);
                     return kap.comps(p) + df - 2.0 * lambda * fv * lhat -
                            lambda * fv * fv * u.comps(p);
                 }};
    return out;
}

// --- presets ------------------------------------------------------------------

KundtPreset preset(const std::string& name, const PresetOptions& opt) {
    KundtPreset p;
    p.name = name;
    p.perturb = opt.perturb;
    const double h_amp = opt.h_amp;

    if (name == "siklos" || name == "poincare-static") {
        // x_u-independent families: F = y (the rho coordinate), omega = dz.
        p.fam.lambda = opt.lambda != 0.0 ? opt.lambda : (name == "siklos" ? 0.5 : 1.0);
        p.fam.F = [](double, double y, double) { return y; };
        p.fam.gradF = [](double, double, double) { return Vec{1.0, 0.0}; };
        p.fam.dF_dxu = [](double, double, double) { return 0.0; };
        p.fam.omega = [](double, double, double) { return Vec{0.0, 1.0}; };
        p.fam.H = [h_amp](double xu, double y, double) {
            return h_amp * std::sin(xu) * std::exp(0.5 * y);
        };
        p.fam.beta = [](double, double, double) { return Vec{0.0, 0.0}; };
    } else if (name == "paper-example-constants") {
        // Constant-coefficient families on X = R^2 at lambda = 1/2:
        //   dF = a(x_u) dy, dG = f(x_u) dy + b(x_u) dz, F = a y + k.
        p.fam.lambda = opt.lambda != 0.0 ? opt.lambda : 0.5;
        auto a = [](double xu) { return std::exp(0.3 * xu); };
        auto da = [](double xu) { return 0.3 * std::exp(0.3 * xu); };
        auto b = [](double xu) { return 1.0 + 0.2 * xu * xu; };
        auto db = [](double xu) { return 0.4 * xu; };
        auto fc = [](double xu) { return 0.1 + 0.5 * xu; };
        auto dfc = [](double) { return 0.5; };
        auto k = [](double xu) { return 0.2 * xu; };
        p.fam.F = [a, k](double xu, double y, double) { return a(xu) * y + k(xu); };
        p.fam.gradF = [a](double xu, double, double) { return Vec{a(xu), 0.0}; };
        p.fam.dF_dxu = [da, k](double xu, double y, double) { return da(xu) * y + 0.2; };
        p.fam.omega = [fc, b](double xu, double, double) { return Vec{fc(xu), b(xu)}; };
        p.fam.H = [h_amp](double xu, double y, double z) {
            return h_amp * (0.3 * std::sin(xu) + 0.1 * y * z);
        };
        p.fam.beta = [b, db, fc, dfc](double xu, double y, double z) {
            double c = 0.5 * (b(xu) * dfc(xu) - fc(xu) * db(xu));
            return Vec{-c * z, c * y};
        };
    } else {
        throw std::invalid_argument("unknown kundt preset: " + name);
    }

    p.plan4 = SamplingPlan::box({{-0.5, 0.5}, {-0.5, 0.5}, {-0.5, 0.5}, {-0.5, 0.5}}, 4);
    p.plan3 = SamplingPlan::box({{-0.5, 0.5}, {-0.5, 0.5}, {-0.5, 0.5}}, 5);
    return p;
}

MetricField preset_metric(const KundtPreset& p, const FDConfig& cfg) {
    MetricField g = assemble_metric(p.fam, cfg);
    if (p.perturb == 0.0) return g;
    const double amp = p.perturb;
    auto base = g.comps;
    g.comps = [base, amp](const Point& q) {
        Mat m = base(q);
        m(0, 0) += amp * std::sin(q[1]);  // x_v-dependent, off-family
        return m;
    };
    return g;
}

}  // namespace kf::kundt
