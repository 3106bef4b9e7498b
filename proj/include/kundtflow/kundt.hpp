#pragma once

#include <string>
#include <vector>

#include "kundtflow/calculus.hpp"
#include "kundtflow/sampling.hpp"

// Standard conformally Brinkmann metrics on R^2 x X with chart (x_u, x_v, y, z):
//   g = H dx_u x dx_u + e^F dx_u (.) (dx_v + beta)
//       + (1/4 lambda^2) dF x dF + e^F omega x omega
// together with the adapted parabolic pair and the residuals of the full
// Killing differential system, the base-surface constraints, the beta
// equation and the optical invariants.

namespace kf::kundt {

// The x_u-parametrized families {F, omega, H, beta} plus the Killing constant.
// All families are closures in (x_u, y, z); x_u-derivatives are taken by FD
// stencils unless the analytic hook dF_dxu is supplied. gradF optionally
// supplies (d_y F, d_z F).
struct KundtFamilies {
    double lambda = 1.0;
    std::function<double(double, double, double)> F;
    std::function<Vec(double, double, double)> omega;  // closed one-forms on X
    std::function<double(double, double, double)> H;
    std::function<Vec(double, double, double)> beta;
    std::function<double(double, double, double)> dF_dxu;  // optional
    std::function<Vec(double, double, double)> gradF;      // optional
};

struct ParabolicPairField {
    OneFormField u, l, kappa;
};

struct PairInvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotNullError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// d_y F, d_z F at (xu,y,z): analytic hook or FD.
Vec grad_F(const KundtFamilies& fam, double xu, double y, double z, const FDConfig& cfg);

// Full 4D metric; signature -+++ is checked on evaluation.
MetricField assemble_metric(const KundtFamilies& fam, const FDConfig& cfg = {});

// Base metric q_{x_u} on X (dim 2, riemannian).
MetricField base_metric(const KundtFamilies& fam, double xu, const FDConfig& cfg = {});

// Maxima over a 3D (x_u, y, z) plan of the base constraint residuals:
//   |dF|^2_q - 4 lambda^2,
//   || nabla^q dF + 1/2 dF x dF - 2 lambda^2 q ||,
//   Delta_q F - 2 lambda^2   (trace consequence; the sign/eigenvalue reading
//                             of this equation differs in the source text,
//                             see flag_laplacian_form).
struct BaseConstraintReport {
    double norm_df2 = 0, hessian = 0, laplacian = 0;
    bool pass(double tol) const {
        return norm_df2 < tol && hessian < tol && laplacian < tol;
    }
    // The checked trace consequence is Delta F = 2 lambda^2 (a constant),
    // not an eigenvalue equation Delta F = 2 lambda^2 F.
    static constexpr const char* flag_laplacian_form =
        "laplacian residual checks Delta F - 2*lambda^2 = 0";
};
BaseConstraintReport check_base_constraints(const KundtFamilies& fam, const SamplingPlan& plan3,
                                            const FDConfig& cfg = {});

// Upsilon_{x_u}(y,z), the source term of the beta equation in local
// coordinates; sqrt(det q) is taken in the (y,z) chart.
double upsilon(const KundtFamilies& fam, double xu, double y, double z, const FDConfig& cfg = {});

struct RectGrid {
    double y0 = -0.5, y1 = 0.5, z0 = -0.5, z1 = 0.5;
    int ny = 33, nz = 33;
};

struct BetaSolution {
    std::function<Vec(double, double, double)> beta;  // (x_u, y, z) -> (beta_y, beta_z)
    double residual = 0;  // max |d beta - Upsilon dy^dz| over interior grid points
};

// Local solution beta = (gamma(y) + int_z0^z [d_y kappa - Upsilon] dz') dy + kappa dz
// by composite Simpson quadrature in z.
BetaSolution solve_beta_local(const KundtFamilies& fam, const RectGrid& grid,
                              const std::function<double(double)>& gamma,
                              const std::function<double(double, double)>& kappa_fn,
                              const std::vector<double>& xu_samples, const FDConfig& cfg = {});

// Adapted pair u = e^F dx_u, l = -(1/2 lambda) dF, kappa from the sigma_kappa
// identity. Throws std::invalid_argument when lambda = 0.
ParabolicPairField adapted_pair(const KundtFamilies& fam, const FDConfig& cfg = {});

// Maxima over the plan of the four Killing-system residuals. Pair invariants
// (u null, l unit, u _|_ l) are checked first; violations throw
// PairInvariantError.
struct KillingResiduals {
    double lie_u = 0;   // || L_{u#} g ||
    double du_eq = 0;   // || du - 2 lambda u ^ l ||
    double dl_eq = 0;   // || dl - kappa ^ u ||
    double lie_l = 0;   // || L_{l#} g - kappa (.) u - 2 lambda (l x l - g) ||
    double max() const { return std::max(std::max(lie_u, du_eq), std::max(dl_eq, lie_l)); }
};
KillingResiduals killing_residuals(const MetricField& g, const ParabolicPairField& pair,
                                   double lambda, const SamplingPlan& plan,
                                   const FDConfig& cfg = {});

// Expansion, twist and shear of the congruence of u; values of maximal
// magnitude over the plan, signed. Throws NotNullError when u fails to be
// null at a sample.
struct OpticalInvariants {
    double theta = 0, omega2 = 0, sigma2 = 0;
    double max_abs() const {
        return std::max(std::fabs(theta), std::max(std::fabs(omega2), std::fabs(sigma2)));
    }
};
OpticalInvariants optical_invariants(const MetricField& g, const OneFormField& u,
                                     const SamplingPlan& plan, const FDConfig& cfg = {});

// l -> l + f u with kappa -> kappa + df - 2 lambda f l_new - lambda f^2 u.
ParabolicPairField change_representative(const ParabolicPairField& pair, const ScalarField& f,
                                         double lambda, const FDConfig& cfg = {});

// --- preset registry ---------------------------------------------------------

struct PresetOptions {
    double lambda = 0.0;    // 0 = preset default
    double h_amp = 0.0;     // amplitude of a nontrivial (free) H family
    double perturb = 0.0;   // off-family x_v-dependent metric perturbation
};

struct KundtPreset {
    std::string name;
    KundtFamilies fam;
    SamplingPlan plan4;   // 4D verification box
    SamplingPlan plan3;   // (x_u, y, z) base box
    double perturb = 0.0;
};

// Known names: "siklos", "paper-example-constants", "poincare-static".
KundtPreset preset(const std::string& name, const PresetOptions& opt = {});

// Assembled preset metric with the perturbation (if any) applied.
MetricField preset_metric(const KundtPreset& p, const FDConfig& cfg = {});

}  // namespace kf::kundt
