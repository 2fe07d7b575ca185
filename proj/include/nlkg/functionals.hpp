#pragma once

#include "nlkg/operators.hpp"
#include "nlkg/params.hpp"

namespace nlkg {

/// Re int u1^2 conj(u2) dx, the quadratic interaction term.
inline double interaction_G(const Field& u1, const Field& u2) {
    require_same_grid(u1, u2, "interaction_G");
    const auto& w = u1.grid->w;
    double acc = 0.0;
    for (int j = 0; j < u1.size(); ++j)
        acc += w[j] * (u1[j] * u1[j] * std::conj(u2[j])).real();
    return acc;
}

/// Q = (v1, i u1) + 2 (v2, i u2); conserved and invariant under scale_state.
inline double charge_Q(const State& s) {
    return l2_inner_imag(s.v1, s.u1) + 2.0 * l2_inner_imag(s.v2, s.u2);
}

/// The quadrature sums every functional is assembled from. Evaluating them once
/// per state keeps the linear identities between functionals exact to rounding.
struct QuadSums {
    double nu1, nu2;  // ||u_j||^2
    double nv1, nv2;  // ||v_j||^2
    double ng1, ng2;  // ||grad u_j||^2
    double G;
    double q;         // charge
};

inline QuadSums collect_sums(const State& s) {
    return {l2_norm_sq(s.u1), l2_norm_sq(s.u2),
            l2_norm_sq(s.v1), l2_norm_sq(s.v2),
            grad_norm_sq(s.u1), grad_norm_sq(s.u2),
            interaction_G(s.u1, s.u2),
            charge_Q(s)};
}

struct KML {
    double K, M, L;
};

inline KML kml_from_sums(const QuadSums& q, const Params& p) {
    return {0.5 * (q.nv1 + q.nv2),
            0.5 * (p.m1 * p.m1 * q.nu1 + p.m2 * p.m2 * q.nu2),
            -0.5 * (q.ng1 + q.ng2) + q.G};
}

/// K = (1/2) sum ||v_j||^2, M = (1/2) sum m_j^2 ||u_j||^2, L = -(1/2) sum ||grad u_j||^2 + G.
inline KML kml(const State& s, const Params& p) { return kml_from_sums(collect_sums(s), p); }

inline double energy_from_sums(const QuadSums& q, const Params& p) {
    return 0.5 * (q.nv1 + q.ng1 + p.m1 * p.m1 * q.nu1) +
           0.5 * (q.nv2 + q.ng2 + p.m2 * p.m2 * q.nu2) - q.G;
}

/// E = (1/2) sum (||v_j||^2 + ||grad u_j||^2 + m_j^2 ||u_j||^2) - G.
inline double energy_E(const State& s, const Params& p) {
    return energy_from_sums(collect_sums(s), p);
}

/// H = -alpha K + alpha M - (alpha+2) L; the lambda-derivative of E along scale_state.
inline double dilation_H(const State& s, const Params& p) {
    const KML k = kml(s, p);
    const double a = p.alpha();
    return -a * k.K + a * k.M - (a + 2.0) * k.L;
}

struct VariationalSuite {
    double Jomega, Momega, Komega, Pomega;
};

inline VariationalSuite variational_from_sums(double nu1, double nu2, double ng1,
                                              double ng2, double G, const Params& p) {
    const double a = p.alpha();
    const double Mw = 0.5 * (p.mu1() * nu1 + p.mu2() * nu2);
    const double L = -0.5 * (ng1 + ng2) + G;
    return {Mw - L, Mw, 2.0 * Mw + (ng1 + ng2) - 3.0 * G, a * Mw - (a + 2.0) * L};
}

/// J_omega, M_omega, the Nehari functional K_omega and the Pohozaev-type P_omega
/// of a profile pair.
inline VariationalSuite variational_suite(const FieldPair& u, const Params& p) {
    return variational_from_sums(l2_norm_sq(u.u1), l2_norm_sq(u.u2),
                                 grad_norm_sq(u.u1), grad_norm_sq(u.u2),
                                 interaction_G(u.u1, u.u2), p);
}

/// S_omega = E - omega Q, plus the Nehari-side decomposition
/// J_omega(u) + (1/2)||v1 - i omega u1||^2 + (1/2)||v2 - 2 i omega u2||^2,
/// which must agree with the direct value to rounding.
struct ActionValue {
    double direct;
    double decomposed;
};

inline ActionValue action_S(const State& s, const Params& p) {
    const QuadSums q = collect_sums(s);
    const double direct = energy_from_sums(q, p) - p.omega * q.q;
    const VariationalSuite vs = variational_from_sums(q.nu1, q.nu2, q.ng1, q.ng2, q.G, p);
    const double om = p.omega;
    // ||v - i c u||^2 = ||v||^2 - 2c Im<v, conj(u)> + c^2 ||u||^2 with the same sums
    const double im1 = l2_inner_imag(s.v1, s.u1);
    const double im2 = l2_inner_imag(s.v2, s.u2);
    const double dec = vs.Jomega +
                       0.5 * (q.nv1 - 2.0 * om * im1 + om * om * q.nu1) +
                       0.5 * (q.nv2 - 4.0 * om * im2 + 4.0 * om * om * q.nu2);
    return {direct, dec};
}

/// Every scalar functional of one state, assembled from a single sums pass.
struct FunctionalReport {
    double E, Q, G, K, M, L, H;
    double Jomega, Momega, Komega, Pomega, Somega;
    Params params;
};

inline FunctionalReport evaluate_report(const State& s, const Params& p) {
    const QuadSums q = collect_sums(s);
    const KML k = kml_from_sums(q, p);
    const VariationalSuite vs = variational_from_sums(q.nu1, q.nu2, q.ng1, q.ng2, q.G, p);
    const double a = p.alpha();
    FunctionalReport rep;
    rep.E = energy_from_sums(q, p);
    rep.Q = q.q;
    rep.G = q.G;
    rep.K = k.K;
    rep.M = k.M;
    rep.L = k.L;
    rep.H = -a * k.K + a * k.M - (a + 2.0) * k.L;
    rep.Jomega = vs.Jomega;
    rep.Momega = vs.Momega;
    rep.Komega = vs.Komega;
    rep.Pomega = vs.Pomega;
    rep.Somega = rep.E - p.omega * rep.Q;
    rep.params = p;
    return rep;
}

} // namespace nlkg
