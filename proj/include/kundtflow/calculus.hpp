#pragma once

#include "kundtflow/fd.hpp"
#include "kundtflow/fields.hpp"

// Chart-based finite-difference differential geometry: Christoffel symbols,
// curvature, Lie derivatives, Hodge duals and divergences evaluated pointwise
// on closed-form fields. This is the numerical oracle every verification in
// the repository runs through.

namespace kf::geom {

// Metric components at p with degeneracy and signature checks.
// Throws DegenerateMetricError when |det g| < 1e-12 or the eigenvalue signs
// do not match the declared signature.
Mat metric_at(const MetricField& g, const Point& p);

// Eigenvalues of a symmetric matrix (Jacobi sweeps), ascending order.
Vec sym_eigenvalues(Mat m);

// Levi-Civita connection coefficients Gamma^a_{bc}; symmetric in (b,c).
Ten3 christoffel(const MetricField& g, const Point& p, const FDConfig& cfg);

// Ricci tensor, convention R_bc = d_a Gamma^a_{bc} - d_b Gamma^a_{ac} + GG
// terms; fixed so the unit round 2-sphere has Ric = +g.
Mat ricci(const MetricField& g, const Point& p, const FDConfig& cfg);

double scalar_curvature(const MetricField& g, const Point& p, const FDConfig& cfg);

// (L_X g)_ab = X^c d_c g_ab + g_cb d_a X^c + g_ac d_b X^c
Mat lie_derivative_metric(const VectorField& X, const MetricField& g, const Point& p,
                          const FDConfig& cfg);

// Full unsymmetrized covariant derivative (nabla w)_ab = d_a w_b - Gamma^c_ab w_c.
Mat covderiv_oneform(const OneFormField& w, const MetricField& g, const Point& p,
                     const FDConfig& cfg);

// Exterior derivative of a one-form: (dw)_ab = d_a w_b - d_b w_a.
Mat exterior_d_oneform(const OneFormField& w, const Point& p, const FDConfig& cfg);

// 2D Hodge star on one-forms of an oriented Riemannian surface:
// (*w)_a = sqrt(det q) eps_{ba} q^{bc} w_c, orientation = +-1 flips the sign.
Vec hodge_star_2d(const OneFormField& w, const MetricField& q, int orientation, const Point& p);
Vec hodge_star_2d(const Vec& w_at_p, const Mat& q_at_p, int orientation);

// div w = g^{ab} (nabla w)_ab
double divergence(const OneFormField& w, const MetricField& g, const Point& p,
                  const FDConfig& cfg);

// Componentwise residual of nabla g (metric compatibility diagnostic).
double metric_compat_residual(const MetricField& g, const Point& p, const FDConfig& cfg);

// Raise an index with the inverse metric at p.
Vec raise(const Mat& g_at_p, const Vec& w);

// |w|^2_g and <v,w>_g with the inverse metric.
double norm2(const Mat& g_at_p, const Vec& w);
double inner(const Mat& g_at_p, const Vec& v, const Vec& w);

// Full double contraction |T|^2_g = T_ab T_cd g^ac g^bd (signed in Lorentzian
// signature).
double norm2_tensor2(const Mat& g_at_p, const Mat& T);

}  // namespace kf::geom
