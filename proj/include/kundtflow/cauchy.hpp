#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "kundtflow/fields.hpp"

// Algebra of left-invariant Killing Cauchy pairs on 3D Lie groups: the
// integrability relations, the group classification, structure constants,
// closed-form 3D curvature and the Hamiltonian/momentum constraints. The
// basis index order is (e_u, e_l, e_n) = (0, 1, 2) throughout.
//
// Everything polynomial is templated on the scalar type so the same algebra
// runs in doubles and in exact rational arithmetic (construction and the
// constraint-equivalence tests use the latter).

namespace kf::cauchy {

enum class Group { E11, Tau2R, Tau3Mu };

struct GroupClass {
    Group tag;
    double mu = 0.0;  // in (0,1], meaningful for Tau3Mu only
};

struct NotIntegrableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class T>
struct BasicPair {
    T lambda{};
    std::array<std::array<T, 3>, 3> theta{};  // symmetric, (u,l,n) basis

    T uu() const { return theta[0][0]; }
    T ul() const { return theta[0][1]; }
    T un() const { return theta[0][2]; }
    T ll() const { return theta[1][1]; }
    T ln() const { return theta[1][2]; }
    T nn() const { return theta[2][2]; }
};

using CauchyPair = BasicPair<double>;

template <class T>
BasicPair<T> make_pair_t(Group g, T lambda, T p1, T p2) {
    BasicPair<T> cp;
    cp.lambda = lambda;
    auto& th = cp.theta;
    auto set = [&](int i, int j, T v) { th[i][j] = v; th[j][i] = v; };
    switch (g) {
        case Group::E11:  // p1 = theta_nn
            set(0, 0, T(3) * p1);
            set(0, 1, T(2) * lambda);
            set(1, 1, -p1);
            set(2, 2, p1);
            break;
        case Group::Tau2R:  // p1 = theta_uu, p2 = theta_nn
            set(0, 0, p1);
            set(0, 1, lambda);
            set(1, 1, T(0));
            set(2, 2, p2);
            break;
        case Group::Tau3Mu: {  // p1 = theta_ul (!= lambda, 2 lambda), p2 = theta_nn
            if (p1 == lambda || p1 == T(2) * lambda)
                throw std::invalid_argument("tau3 needs theta_ul != lambda, 2*lambda");
            set(0, 0, (lambda + p1) * p2 / lambda);
            set(0, 1, p1);
            set(1, 1, (lambda - p1) * p2 / lambda);
            set(2, 2, p2);
            break;
        }
    }
    return cp;
}

// The two algebraic integrability relations (both vanish on valid pairs):
//   r1 = theta_uu theta_ul + lambda theta_ll + theta_ll theta_ul - lambda theta_uu
//   r2 = theta_nn theta_ul + lambda theta_ll - lambda theta_nn
template <class T>
std::array<T, 2> integrability_residuals(const BasicPair<T>& p) {
    return {p.uu() * p.ul() + p.lambda * p.ll() + p.ll() * p.ul() - p.lambda * p.uu(),
            p.nn() * p.ul() + p.lambda * p.ll() - p.lambda * p.nn()};
}

// Killing Cauchy connection coefficients: nabla_{e_b} e_a = Gam[c][b][a] e_c.
template <class T>
std::array<std::array<std::array<T, 3>, 3>, 3> frame_connection(const BasicPair<T>& p) {
    std::array<std::array<std::array<T, 3>, 3>, 3> G{};
    for (int c = 0; c < 3; ++c)
        for (int b = 0; b < 3; ++b)
            for (int a = 0; a < 3; ++a) {
                T v = T(0);
                if (c == 0) v = v + p.theta[a][b];
                if (a == 0) v = v - p.theta[b][c];
                if (a == b && c == 1) v = v + p.lambda;
                if (a == 1 && c == b) v = v - p.lambda;
                G[c][b][a] = v;
            }
    return G;
}

// (nabla_{e_d} Theta)_{bc}; theta components are constant, so only the
// connection terms survive.
template <class T>
std::array<std::array<T, 3>, 3> covderiv_theta(const BasicPair<T>& p, int d) {
    auto G = frame_connection(p);
    std::array<std::array<T, 3>, 3> M{};
    for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
            T s = T(0);
            for (int a = 0; a < 3; ++a)
                s = s - G[a][d][b] * p.theta[a][c] - G[a][d][c] * p.theta[b][a];
            M[b][c] = s;
        }
    return M;
}

// div Theta components along (e_u, e_l, e_n).
template <class T>
std::array<T, 3> div_theta(const BasicPair<T>& p) {
    std::array<T, 3> out{};
    for (int d = 0; d < 3; ++d) {
        auto M = covderiv_theta(p, d);
        for (int c = 0; c < 3; ++c) out[c] = out[c] + M[d][c];
    }
    return out;
}

// dTr(Theta) - div(Theta); dTr vanishes for left-invariant data, and the e_l,
// e_n components vanish identically on valid pairs.
template <class T>
std::array<T, 3> momentum_residual(const BasicPair<T>& p) {
    auto d = div_theta(p);
    return {-d[0], -d[1], -d[2]};
}

// Constrained-Einstein display, equal to div(Theta)(e_u) on valid pairs.
template <class T>
T einstein_residual(const BasicPair<T>& p) {
    return p.ll() * p.ll() + T(2) * p.ln() * p.ln() + p.nn() * p.nn() +
           T(2) * p.ul() * p.ul() + T(2) * p.un() * p.un() - p.ll() * p.uu() -
           p.nn() * p.uu() - T(3) * p.ul() * p.lambda;
}

template <class T>
T norm2_theta(const BasicPair<T>& p) {
    T s = T(0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s = s + p.theta[i][j] * p.theta[i][j];
    return s;
}

template <class T>
T trace_theta(const BasicPair<T>& p) {
    return p.theta[0][0] + p.theta[1][1] + p.theta[2][2];
}

// Scal = |Theta|^2 - Tr^2 + 2 (dTr(e_u) - div(e_u)) - 6 lambda^2.
template <class T>
T scalar3(const BasicPair<T>& p) {
    auto d = div_theta(p);
    return norm2_theta(p) - trace_theta(p) * trace_theta(p) - T(2) * d[0] -
           T(6) * p.lambda * p.lambda;
}

// Hamiltonian constraint at t = 0: Scal - |Theta|^2 + Tr^2 + 6 lambda^2.
template <class T>
T hamiltonian0(const BasicPair<T>& p) {
    return scalar3(p) - norm2_theta(p) + trace_theta(p) * trace_theta(p) +
           T(6) * p.lambda * p.lambda;
}

// Ric = Theta o Theta - Tr(Theta) Theta + (dTr - div) x e_u
//       + nabla_{e_u} Theta - (nabla Theta)(e_u) - 2 lambda^2 h.
template <class T>
std::array<std::array<T, 3>, 3> ricci3_t(const BasicPair<T>& p) {
    auto mom = momentum_residual(p);
    auto nab_u = covderiv_theta(p, 0);
    std::array<std::array<T, 3>, 3> R{};
    for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
            T s = T(0);
            for (int a = 0; a < 3; ++a) s = s + p.theta[b][a] * p.theta[a][c];
            s = s - trace_theta(p) * p.theta[b][c];
            if (c == 0) s = s + mom[b];
            s = s + nab_u[b][c] - covderiv_theta(p, b)[0][c];
            if (b == c) s = s - T(2) * p.lambda * p.lambda;
            R[b][c] = s;
        }
    return R;
}

// Structure constants c^a_{bc} with de_a = -1/2 c^a_{bc} e_b ^ e_c.
template <class T>
struct StructureConstantsT {
    std::array<std::array<std::array<T, 3>, 3>, 3> c{};
    void set(int a, int b, int cc, T v) {
        c[a][b][cc] = v;
        c[a][cc][b] = -v;
    }
};

template <class T>
StructureConstantsT<T> structure_constants_t(const BasicPair<T>& p) {
    StructureConstantsT<T> sc;
    sc.set(0, 0, 1, p.ul() - p.lambda);  // de_u = (Theta(e_u) - lambda e_l) ^ e_u
    sc.set(0, 0, 2, p.un());
    sc.set(1, 0, 1, p.ll());             // de_l = Theta(e_l) ^ e_u
    sc.set(1, 0, 2, p.ln());
    sc.set(2, 0, 1, p.ln());             // de_n = Theta(e_n) ^ e_u + lambda e_n ^ e_l
    sc.set(2, 0, 2, p.nn());
    sc.set(2, 1, 2, p.lambda);
    return sc;
}

// Coefficient of e_u ^ e_l ^ e_n in d(de_a); zero exactly by Jacobi.
template <class T>
std::array<T, 3> d_squared_residual(const StructureConstantsT<T>& sc) {
    // d(de_a) = 1/2 c^a_{bc} c^b_{de} e_d ^ e_e ^ e_c
    static const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                    {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
    static const int signs[6] = {1, 1, 1, -1, -1, -1};
    std::array<T, 3> out{};
    for (int a = 0; a < 3; ++a) {
        T s = T(0);
        for (int k = 0; k < 6; ++k) {
            int d = perms[k][0], e = perms[k][1], c = perms[k][2];
            for (int b = 0; b < 3; ++b) s = s + T(signs[k]) * sc.c[a][b][c] * sc.c[b][d][e];
        }
        out[a] = s / T(2);
    }
    return out;
}

// --- double-precision front end -------------------------------------------

// Asserts theta_un = theta_ln = 0 and the two integrability relations; throws
// NotIntegrableError naming the failing relation.
const CauchyPair& validate(const CauchyPair& p, double tol = 1e-9);
bool is_valid(const CauchyPair& p, double tol = 1e-9);

GroupClass classify(const CauchyPair& p, double tol = 1e-9);

CauchyPair make_pair(Group g, double lambda, double p1, double p2 = 0.0);

Mat ricci3(const CauchyPair& p);

// Coordinate realization of the coframe on a global (x,y,z) chart, plus the
// gauge function f with df = -(Theta(e_u) + lambda e_l) used by the 4D lift.
struct Realization {
    std::array<OneFormField, 3> coframe;  // e_u, e_l, e_n
    MetricField h;                        // e_u^2 + e_l^2 + e_n^2
    ScalarField f_gauge;
};

Realization realize(const CauchyPair& p);

}  // namespace kf::cauchy
