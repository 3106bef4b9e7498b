#pragma once

#include <string>

#include "kundtflow/flow.hpp"
#include "kundtflow/kundt.hpp"

// Lifts of flows to 4D globally hyperbolic metrics g = -beta_t^2 dt x dt + h_t
// on the chart (t, x, y, z), the associated parabolic pair, and the 4D
// residual checks: the evolution system, the flow equations, the Ricci
// identity and constraint preservation.

namespace kf::spacetime {

// Coframe family on the spatial chart: t -> rows (e_u, e_l, e_n) at (x,y,z).
using CoframeFamily = std::function<std::array<Vec, 3>(double t, const Point& xyz)>;

struct GlobHypMetric {
    std::function<double(double, const Point&)> beta;  // beta_t(x,y,z) > 0
    CoframeFamily coframe;
    MetricField metric;           // assembled 4D field on (t,x,y,z)
    SamplingPlan plan;            // verification box
    double lambda = 1.0;
    std::function<double(double, const Point&)> hamiltonian;  // H(t, p)
    // Gauge exponent f with u = e^f (beta dt + e_u^t); df = -(Theta(e_u)+lambda e_l).
    std::function<double(double, const Point&)> f_gauge;
    kundt::ParabolicPairField pair;  // output of the Xi map
};

// Lift a left-invariant pair + lapse through the coordinate realization of its
// group; the coframe is evaluated through the closed-form U^t.
GlobHypMetric assemble_spacetime(const cauchy::CauchyPair& pair, const flow::Lapse& lapse);

// Lift a sampled trajectory; U^t interpolated by monotone cubic Hermite
// between states. Needs >= 4 states per FD stencil width.
GlobHypMetric assemble_spacetime(const flow::FlowTrajectory& traj, const FDConfig& cfg = {});

// Named presets: "ads4", "stationary-tau31", "rotating".
struct PresetOptions {
    double lambda = 1.0;
    double c1 = 0.0, c2 = 1.0;          // stationary-tau31
    double a = 0.0, b = 0.0, c = 1.0;   // rotating
};
GlobHypMetric preset(const std::string& name, const PresetOptions& opt = {});

// || Ric^g + 3 lambda^2 g - 1/2 H (beta dt + e_u^t) x (beta dt + e_u^t) || at p.
double ricci4_residual(const GlobHypMetric& g, const Point& p4, const FDConfig& cfg = {});
double ricci4_residual_max(const GlobHypMetric& g, const FDConfig& cfg = {});

// Residual maxima of the Killing spinorial flow equations over the plan.
struct FlowEquationResiduals {
    double ev_u = 0, ev_l = 0, ev_n = 0;      // the three coframe evolution equations
    double ev_theta = 0;                      // d_t(Theta(e_u)) + lambda d_t e_l + d(d beta(e_u))
    double ext_u = 0, ext_l = 0, ext_n = 0;   // the three exterior-derivative equations
    double closedness = 0;                    // d(Theta(e_u) + lambda e_l)
    double max() const;
};
FlowEquationResiduals flow_equation_residuals(const GlobHypMetric& g, const FDConfig& cfg = {});

// Orthogonally split pair data on Sigma.
struct SplitPairData {
    std::function<double(double, const Point&)> u0;
    std::function<Vec(double, const Point&)> u_perp, l_perp;
};

// Split data induced from the lift: u_perp = e^f e_u^t, l_perp = e_l^t, u0 = e^f.
SplitPairData induced_split(const GlobHypMetric& g);

// Residual maxima of the split evolution system plus the restriction
// identities d_t u0 - d beta(u_perp) and du0 + Theta(u_perp) + lambda u0 l_perp.
struct EvolutionResiduals {
    double ev_u = 0, ev_l = 0;    // time evolution of u_perp, l_perp
    double grad_u = 0, grad_l = 0;  // spatial covariant-derivative equations
    double dt_u0 = 0, du0 = 0;
    double max() const;
};
EvolutionResiduals evolution_residuals(const GlobHypMetric& g, const SplitPairData& split,
                                       const FDConfig& cfg = {});

// The parabolic pair of the Xi map (stored in g.pair); checks invariants.
kundt::ParabolicPairField xi_pair(const GlobHypMetric& g);

}  // namespace kf::spacetime
