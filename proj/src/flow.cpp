#include "kundtflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kundtflow/specfun.hpp"

namespace kf::flow {

namespace {

constexpr double kHalfPi = 1.57079632679489661923;

double sq(double x) { return x * x; }

}  // namespace

// --- Pchip / Lapse ------------------------------------------------------------

Pchip Pchip::fit(std::vector<double> t, std::vector<double> y) {
    if (t.size() != y.size() || t.size() < 2)
        throw std::invalid_argument("pchip needs >= 2 matching samples");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1])) throw std::invalid_argument("pchip knots must increase");

    Pchip p;
    p.t_ = std::move(t);
    p.y_ = std::move(y);
    const std::size_t n = p.t_.size();

    // Fritsch-Carlson tangents.
    std::vector<double> d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        d[i] = (p.y_[i + 1] - p.y_[i]) / (p.t_[i + 1] - p.t_[i]);
    p.slope_.assign(n, 0.0);
    p.slope_[0] = d[0];
    p.slope_[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i)
        p.slope_[i] = (d[i - 1] * d[i] > 0.0) ? 0.5 * (d[i - 1] + d[i]) : 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (d[i] == 0.0) {
            p.slope_[i] = p.slope_[i + 1] = 0.0;
            continue;
        }
        double a = p.slope_[i] / d[i], b = p.slope_[i + 1] / d[i];
        double r = a * a + b * b;
        if (r > 9.0) {
            double tau = 3.0 / std::sqrt(r);
            p.slope_[i] = tau * a * d[i];
            p.slope_[i + 1] = tau * b * d[i];
        }
    }

    p.Iknot_.assign(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double h = p.t_[i + 1] - p.t_[i];
        p.Iknot_[i + 1] = p.Iknot_[i] + h * (0.5 * (p.y_[i] + p.y_[i + 1]) +
                                             h * (p.slope_[i] - p.slope_[i + 1]) / 12.0);
    }
    return p;
}

double Pchip::eval(double t) const {
    if (t <= t_.front()) return y_.front();
    if (t >= t_.back()) return y_.back();
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - t_.begin()) - 1;
    double h = t_[i + 1] - t_[i];
    double u = (t - t_[i]) / h;
    double h00 = (2 * u - 3) * u * u + 1, h10 = ((u - 2) * u + 1) * u;
    double h01 = (3 - 2 * u) * u * u, h11 = (u - 1) * u * u;
    return y_[i] * h00 + h * slope_[i] * h10 + y_[i + 1] * h01 + h * slope_[i + 1] * h11;
}

double Pchip::integral(double t) const {
    if (t <= t_.front()) return y_.front() * (t - t_.front());
    if (t >= t_.back()) return Iknot_.back() + y_.back() * (t - t_.back());
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - t_.begin()) - 1;
    double h = t_[i + 1] - t_[i];
    double u = (t - t_[i]) / h;
    double i00 = ((0.5 * u - 1) * u * u + 1) * u;
    double i10 = (((0.25 * u - 2.0 / 3.0) * u) + 0.5) * u * u;
    double i01 = (1 - 0.5 * u) * u * u * u;
    double i11 = (0.25 * u - 1.0 / 3.0) * u * u * u;
    return Iknot_[i] +
           h * (y_[i] * i00 + h * slope_[i] * i10 + y_[i + 1] * i01 + h * slope_[i + 1] * i11);
}

double Pchip::max_spacing() const {
    double m = 0.0;
    for (std::size_t i = 1; i < t_.size(); ++i) m = std::max(m, t_[i] - t_[i - 1]);
    return m;
}

Lapse Lapse::constant(double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("lapse must be positive");
    Lapse l;
    l.kind_ = Kind::kConstant;
    l.value_ = beta;
    return l;
}

Lapse Lapse::sampled(std::vector<double> t, std::vector<double> beta) {
    for (double b : beta)
        if (b < 0.0) throw std::invalid_argument("lapse must be nonnegative");
    if (beta.empty() || (!(beta.front() > 0.0) && !(beta.back() > 0.0)))
        throw std::invalid_argument("lapse vanishes identically");
    Lapse l;
    l.kind_ = Kind::kSampled;
    l.interp_ = Pchip::fit(std::move(t), std::move(beta));
    l.B0_ = l.interp_.integral(0.0);
    return l;
}

double Lapse::beta(double t) const {
    return kind_ == Kind::kConstant ? value_ : interp_.eval(t);
}

double Lapse::B(double t) const {
    return kind_ == Kind::kConstant ? value_ * t : interp_.integral(t) - B0_;
}

// --- ODE right-hand sides ----------------------------------------------------

cauchy::CauchyPair theta_ode_rhs(const cauchy::CauchyPair& s, double beta) {
    const double lam = s.lambda;
    cauchy::CauchyPair d;
    d.lambda = 0.0;
    auto set = [&](int i, int j, double v) { d.theta[i][j] = v; d.theta[j][i] = v; };
    set(0, 0, beta * (lam * lam + 2.0 * lam * s.ul() + sq(s.uu()) + sq(s.ul())));
    set(0, 1, 0.0);
    set(1, 1, beta * (s.ll() * s.uu() + lam * lam - sq(s.ul())));
    set(2, 2, beta * (s.nn() * s.uu() + lam * lam + lam * s.ul()));
    set(0, 2, 0.0);
    set(1, 2, 0.0);
    return d;
}

Mat coframe_ode_rhs(const Mat& U, const cauchy::CauchyPair& s, double beta) {
    Mat M(3);  // -beta Theta + lambda beta A
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) M(i, j) = -beta * s.theta[i][j];
    M(0, 1) += s.lambda * beta;
    M(1, 0) -= s.lambda * beta;
    return matmul(M, U);
}

// --- closed forms ------------------------------------------------------------

std::pair<double, double> group_angle(const cauchy::CauchyPair& pair) {
    auto gc = cauchy::classify(pair);
    const double lam = pair.lambda;
    switch (gc.tag) {
        case cauchy::Group::Tau2R:
            return {std::atan(pair.uu() / (2.0 * lam)), 2.0 * lam};
        case cauchy::Group::E11:
            return {std::atan(pair.nn() / lam), 3.0 * lam};
        default:
            return {std::atan(pair.nn() / lam), pair.ul() + lam};
    }
}

namespace {

double angle_at(const std::pair<double, double>& ang, const Lapse& lapse, double t) {
    return ang.first + ang.second * lapse.B(t);
}

void require_inside(double a) {
    if (!(std::fabs(a) < kHalfPi)) throw IntervalExceededError("interval exceeded: |angle| >= pi/2");
}

}  // namespace

cauchy::CauchyPair theta_closed_form(const cauchy::CauchyPair& pair, const Lapse& lapse, double t) {
    auto gc = cauchy::classify(pair);
    const double lam = pair.lambda;
    auto ang = group_angle(pair);
    const double at = angle_at(ang, lapse, t);
    require_inside(at);

    cauchy::CauchyPair out = pair;
    auto set = [&](int i, int j, double v) { out.theta[i][j] = v; out.theta[j][i] = v; };
    switch (gc.tag) {
        case cauchy::Group::E11: {
            double nn = lam * std::tan(at);
            set(2, 2, nn);
            set(1, 1, -nn);
            set(0, 0, 3.0 * nn);
            break;
        }
        case cauchy::Group::Tau2R: {
            double uu = 2.0 * lam * std::tan(at);
            double c = (2.0 * pair.nn() - pair.uu()) / std::sqrt(4.0 + sq(pair.uu() / lam));
            double nn = c / std::cos(at) + lam * std::tan(at);
            set(0, 0, uu);
            set(2, 2, nn);
            break;
        }
        default: {
            double nn = lam * std::tan(at);
            double r = pair.ul() / lam;
            set(2, 2, nn);
            set(0, 0, (1.0 + r) * nn);
            set(1, 1, (1.0 - r) * nn);
            break;
        }
    }
    return out;
}

Mat closed_form_coframe(const cauchy::CauchyPair& pair, const Lapse& lapse, double t) {
    auto gc = cauchy::classify(pair);
    const double lam = pair.lambda;
    Mat U = Mat::identity(3);
    const double Bt = lapse.B(t);

    if (gc.tag == cauchy::Group::Tau2R) {
        auto ang = group_angle(pair);
        const double x0 = ang.first, xt = angle_at(ang, lapse, t);
        require_inside(xt);
        const double s = std::sqrt(1.0 + sq(pair.uu()) / (4.0 * lam * lam));
        U(0, 0) = s * std::cos(xt);
        U(1, 0) = pair.uu() / (2.0 * lam) - s * std::sin(xt);
        U(1, 1) = 1.0;
        const double gamma =
            (pair.uu() - 2.0 * pair.nn()) / (2.0 * lam * std::sqrt(4.0 + sq(pair.uu() / lam)));
        const double num = std::cos(0.5 * (xt + x0)) + std::sin(0.5 * (xt - x0));
        const double den = std::cos(0.5 * (xt + x0)) - std::sin(0.5 * (xt - x0));
        U(2, 2) = std::pow(s * s * sq(std::cos(xt)), 0.25) * std::pow(std::fabs(num / den), gamma);
        return U;
    }

    if (gc.tag == cauchy::Group::Tau3Mu && std::fabs(pair.ul() + lam) < 1e-12) {
        // theta_ul = -lambda: exponential solution of the coframe ODE.
        const double nn = pair.nn();
        U(0, 0) = 1.0;
        U(0, 1) = (nn == 0.0) ? 2.0 * lam * Bt : -(lam / nn) * std::expm1(-2.0 * nn * Bt);
        U(1, 1) = std::exp(-2.0 * nn * Bt);
        U(2, 2) = std::exp(-nn * Bt);
        return U;
    }

    // E(1,1) and generic tau3: hypergeometric profile with kappa = lambda/(ul+lambda).
    auto ang = group_angle(pair);
    const double a0 = ang.first, at = angle_at(ang, lapse, t);
    require_inside(at);
    const double kappa = lam / (pair.ul() + lam);
    const double R = specfun::frakR_kappa(at, kappa, a0);
    const double cosratio = std::cos(at) / std::cos(a0);
    U(0, 1) = R;
    U(0, 0) = (pair.nn() / lam) * R + std::pow(cosratio, 2.0 * kappa);
    U(1, 0) = pair.nn() / lam - std::tan(at) * U(0, 0);
    U(1, 1) = 1.0 - std::tan(at) * U(0, 1);
    U(2, 2) = std::pow(cosratio, kappa);
    return U;
}

double hamiltonian_numeric(const cauchy::CauchyPair& theta_t) {
    return cauchy::hamiltonian0(theta_t);
}

double hamiltonian_t(const cauchy::CauchyPair& pair, const Lapse& lapse, double t) {
    auto gc = cauchy::classify(pair);
    const double lam = pair.lambda;
    auto ang = group_angle(pair);
    const double at = angle_at(ang, lapse, t);
    require_inside(at);
    const double sec2 = 1.0 / sq(std::cos(at));
    const double H0 = cauchy::hamiltonian0(pair);
    switch (gc.tag) {
        case cauchy::Group::E11:
            return -4.0 * lam * lam * sec2;
        case cauchy::Group::Tau2R:
            return 4.0 * lam * lam * H0 / (sq(pair.uu()) + 4.0 * lam * lam) * sec2;
        default:
            return lam * lam * H0 / (lam * lam + sq(pair.nn())) * sec2;
    }
}

std::pair<double, double> maximal_interval(const cauchy::CauchyPair& pair, const Lapse& lapse) {
    auto ang = group_angle(pair);
    const double inf = std::numeric_limits<double>::infinity();
    if (ang.second == 0.0) return {-inf, inf};

    // Solve B(t) = Btarget by bisection; B is monotone nondecreasing.
    auto solve_B = [&](double Btarget) -> double {
        double sign = Btarget >= 0.0 ? 1.0 : -1.0;
        double T = 1.0;
        const double Tmax = 1e9;
        while (sign * (lapse.B(sign * T) - Btarget) < 0.0) {
            T *= 2.0;
            if (T > Tmax) return sign * inf;
        }
        double lo = 0.0, hi = sign * T;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            if (sign * (lapse.B(mid) - Btarget) < 0.0)
                lo = mid;
            else
                hi = mid;
            if (std::fabs(hi - lo) < 1e-15 * (1.0 + std::fabs(hi))) break;
        }
        return 0.5 * (lo + hi);
    };

    double Bplus = (kHalfPi - ang.first) / ang.second;
    double Bminus = (-kHalfPi - ang.first) / ang.second;
    if (ang.second < 0.0) std::swap(Bplus, Bminus);
    return {solve_B(Bminus), solve_B(Bplus)};
}

FlowTrajectory integrate(const cauchy::CauchyPair& pair, const Lapse& lapse, double t_end,
                         const IntegrateOptions& opt) {
    cauchy::validate(pair);
    if (!(opt.step > 0.0)) throw std::invalid_argument("integrate: step must be positive");

    FlowTrajectory traj;
    traj.pair = pair;
    traj.lapse = lapse;
    auto ang = group_angle(pair);

    cauchy::CauchyPair th = pair;
    Mat U = Mat::identity(3);
    double t = 0.0;
    const double dir = (t_end < 0.0) ? -1.0 : 1.0;
    const long nsteps = static_cast<long>(std::ceil(std::fabs(t_end) / opt.step - 1e-12));

    auto push = [&](double tt) {
        FlowState st;
        st.t = tt;
        st.B = lapse.B(tt);
        st.pair = th;
        st.U = U;
        st.H = hamiltonian_t(pair, lapse, tt);
        traj.states.push_back(st);
    };
    push(0.0);

    auto guard_hit = [&](double tt) {
        if (ang.second == 0.0) return false;
        return std::fabs(angle_at(ang, lapse, tt)) >= kHalfPi - opt.guard;
    };

    for (long k = 0; k < nsteps; ++k) {
        double h = dir * std::min(opt.step, std::fabs(t_end - t));
        if (guard_hit(t + h)) {
            traj.status = FlowStatus::singularity;
            break;
        }
        // classical RK4 on (Theta, U)
        auto eval = [&](const cauchy::CauchyPair& s, const Mat& u, double tt) {
            double b = lapse.beta(tt);
            return std::make_pair(theta_ode_rhs(s, b), coframe_ode_rhs(u, s, b));
        };
        auto advance = [&](const cauchy::CauchyPair& s, const Mat& u,
                           const std::pair<cauchy::CauchyPair, Mat>& d, double c) {
            cauchy::CauchyPair s2 = s;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) s2.theta[i][j] += c * d.first.theta[i][j];
            return std::make_pair(s2, u + c * d.second);
        };
        auto k1 = eval(th, U, t);
        auto [s2, u2] = advance(th, U, k1, 0.5 * h);
        auto k2 = eval(s2, u2, t + 0.5 * h);
        auto [s3, u3] = advance(th, U, k2, 0.5 * h);
        auto k3 = eval(s3, u3, t + 0.5 * h);
        auto [s4, u4] = advance(th, U, k3, h);
        auto k4 = eval(s4, u4, t + h);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                th.theta[i][j] += h / 6.0 *
                                  (k1.first.theta[i][j] + 2.0 * k2.first.theta[i][j] +
                                   2.0 * k3.first.theta[i][j] + k4.first.theta[i][j]);
        U = U + (h / 6.0) * (k1.second + 2.0 * k2.second + 2.0 * k3.second + k4.second);
        t += h;
        if ((k + 1) % opt.store_every == 0 || k + 1 == nsteps) push(t);
    }
    traj.interval = {std::min(0.0, t), std::max(0.0, t)};
    return traj;
}

double eta_einstein_residual(const cauchy::CauchyPair& theta_t, cauchy::Group group) {
    const double lam = theta_t.lambda;
    const double nn = theta_t.nn();
    const double s2 = lam * lam + nn * nn;
    Mat R = cauchy::ricci3(theta_t);
    Mat expect(3);
    if (group == cauchy::Group::E11) {
        Vec eta{nn / std::sqrt(s2), lam / std::sqrt(s2), 0.0};
        expect = (0.5 * (-4.0 * s2)) * outer(eta, eta);
    } else {
        Vec eta{lam / std::sqrt(s2), -nn / std::sqrt(s2), 0.0};
        expect = s2 * (outer(eta, eta) - Mat::identity(3));
    }
    return max_abs(R - expect);
}

}  // namespace kf::flow
