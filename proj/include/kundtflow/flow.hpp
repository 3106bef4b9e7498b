#pragma once

#include <optional>
#include <vector>

#include "kundtflow/cauchy.hpp"

// Left-invariant Killing spinorial flows: the integrability ODEs for Theta,
// the coframe ODE, their closed-form solutions per group, the Hamiltonian
// along the flow and the maximal interval of definition.

namespace kf::flow {

// Monotone cubic Hermite interpolant (Fritsch-Carlson tangents) with exact
// integral of the interpolant; constant extrapolation beyond the knots.
class Pchip {
  public:
    static Pchip fit(std::vector<double> t, std::vector<double> y);
    double eval(double t) const;
    double integral(double t) const;  // antiderivative, zero at the first knot
    double t_front() const { return t_.front(); }
    double t_back() const { return t_.back(); }
    double max_spacing() const;

  private:
    std::vector<double> t_, y_, slope_, Iknot_;
};

// Lapse family beta_t > 0 with B(t) = int_0^t beta. Tables are interpolated
// with monotone cubic Hermite and B by exact integration of the interpolant;
// beyond the table beta extrapolates as a constant.
class Lapse {
  public:
    static Lapse constant(double beta);
    static Lapse sampled(std::vector<double> t, std::vector<double> beta);

    double beta(double t) const;
    double B(double t) const;
    bool is_constant() const { return kind_ == Kind::kConstant; }

  private:
    enum class Kind { kConstant, kSampled } kind_ = Kind::kConstant;
    double value_ = 1.0;
    Pchip interp_;
    double B0_ = 0.0;
};

struct FlowState {
    double t = 0.0;
    double B = 0.0;
    cauchy::CauchyPair pair;  // Theta^t components (same lambda)
    Mat U;                    // coframe matrix, e^t = U(e), det > 0
    double H = 0.0;           // Hamiltonian, closed form
};

enum class FlowStatus { ok, singularity };

struct FlowTrajectory {
    cauchy::CauchyPair pair;  // initial datum
    Lapse lapse;
    std::vector<FlowState> states;
    FlowStatus status = FlowStatus::ok;
    std::pair<double, double> interval{0.0, 0.0};
};

struct IntervalExceededError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// d Theta/dt of the full integrability system; off-diagonal un/ln slots stay 0.
cauchy::CauchyPair theta_ode_rhs(const cauchy::CauchyPair& state, double beta);

// dU/dt = (-beta Theta + lambda beta A) U with A(e_u)=e_l, A(e_l)=-e_u, A(e_n)=0.
Mat coframe_ode_rhs(const Mat& U, const cauchy::CauchyPair& state, double beta);

// Group angle a_t = arctan(.) + rate * B_t driving every tan/sec closed form;
// returns {angle0, rate} so a_t = angle0 + rate * B(t).
std::pair<double, double> group_angle(const cauchy::CauchyPair& pair);

// Closed-form Theta^t; throws IntervalExceededError at/beyond a tan pole.
cauchy::CauchyPair theta_closed_form(const cauchy::CauchyPair& pair, const Lapse& lapse, double t);

// Closed-form coframe U^t (U^0 = Id). The tau3 branch with theta_ul = -lambda
// uses the exponential solution of the coframe ODE.
Mat closed_form_coframe(const cauchy::CauchyPair& pair, const Lapse& lapse, double t);

// Closed-form Hamiltonian H_t per group.
double hamiltonian_t(const cauchy::CauchyPair& pair, const Lapse& lapse, double t);

// Numeric Hamiltonian from the 3D curvature of the time-t pair.
double hamiltonian_numeric(const cauchy::CauchyPair& theta_t);

// Largest interval (t-, t+) around 0 on which the group angle stays inside
// (-pi/2, pi/2); +-infinity when the threshold is never reached.
std::pair<double, double> maximal_interval(const cauchy::CauchyPair& pair, const Lapse& lapse);

struct IntegrateOptions {
    double step = 1e-3;
    double guard = 1e-3;  // stop when the angle is this close to +-pi/2
    int store_every = 1;  // keep every k-th state
};

// Classical fixed-step RK4 on the joint (Theta, U) system from 0 to t_end
// (t_end may be negative). Terminates early with status singularity when the
// group angle enters the guard band.
FlowTrajectory integrate(const cauchy::CauchyPair& pair, const Lapse& lapse, double t_end,
                         const IntegrateOptions& opt = {});

// || ricci3(Theta^t) - (eta-Einstein closed form) || in the coframe basis.
double eta_einstein_residual(const cauchy::CauchyPair& theta_t, cauchy::Group group);

}  // namespace kf::flow
