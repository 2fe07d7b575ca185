#pragma once

#include <cmath>
#include <string>

#include "nlkg/functionals.hpp"
#include "nlkg/groundstate.hpp"
#include "nlkg/scaling.hpp"

namespace nlkg {

/// g(s) = s^beta - 1 - beta (s-1) - (beta(beta-1)/2) s^{beta-1} (s-1)^2,
/// positive on (0,1) for every beta > 1.
inline double g_function(double s, double beta) {
    if (s <= 0.0) throw std::domain_error("g_function: s must be positive");
    const double sm1 = s - 1.0;
    return std::pow(s, beta) - 1.0 - beta * sm1 -
           0.5 * beta * (beta - 1.0) * std::pow(s, beta - 1.0) * sm1 * sm1;
}

struct GScanResult {
    bool all_positive;
    double min_value;
    double argmin;
};

/// Evaluate g at s = k/(npts+1), k = 1..npts, and report positivity.
inline GScanResult g_positivity_scan(double beta, int npts) {
    if (beta <= 1.0) throw std::domain_error("g_positivity_scan: beta must exceed 1");
    if (npts < 1) throw std::domain_error("g_positivity_scan: npts must be >= 1");
    GScanResult out{true, std::numeric_limits<double>::infinity(), 0.0};
    for (int k = 1; k <= npts; ++k) {
        const double s = static_cast<double>(k) / (npts + 1);
        const double v = g_function(s, beta);
        if (v < out.min_value) {
            out.min_value = v;
            out.argmin = s;
        }
        if (v <= 0.0) out.all_positive = false;
    }
    return out;
}

/// The unique positive root of K_omega(u^lambda) = 0:
///   lambda_0 = sqrt(2 M_omega / (3G - sum ||grad u_j||^2)).
inline double nehari_root(const FieldPair& u, const Params& p) {
    const double ng = grad_norm_sq(u.u1) + grad_norm_sq(u.u2);
    const double G = interaction_G(u.u1, u.u2);
    const double Mw = 0.5 * (p.mu1() * l2_norm_sq(u.u1) + p.mu2() * l2_norm_sq(u.u2));
    const double den = 3.0 * G - ng;
    if (den <= 0.0)
        throw PreconditionError("nehari_root: 3G - sum ||grad u||^2 must be positive "
                                "(no root on the scaling ray)");
    return std::sqrt(2.0 * Mw / den);
}

/// The positive root of P_omega(u^lambda) = 0:
///   lambda_0 = sqrt(alpha M_omega / ((alpha+2) L)).
inline double pomega_root(const FieldPair& u, const Params& p) {
    const VariationalSuite vs = variational_suite(u, p);
    const double L = vs.Momega - vs.Jomega;
    if (L <= 0.0)
        throw PreconditionError("pomega_root: L(u) must be positive (no positive root)");
    return std::sqrt(p.alpha() * vs.Momega / ((p.alpha() + 2.0) * L));
}

struct Vc3Report {
    double dMomega;  // M_omega(u) - M_omega(phi)
    double dL;       // L(u) - L(phi)
    bool pass;       // both strictly positive
};

/// Lemma-style comparison against the ground state: P_omega(u) < 0 implies
/// M_omega(phi) < M_omega(u) and L(phi) < L(u).
inline Vc3Report check_vc3(const FieldPair& u, const GroundState& gs) {
    const Params& p = gs.params;
    const VariationalSuite vu = variational_suite(u, p);
    if (!(vu.Pomega < 0.0))
        throw PreconditionError("check_vc3: requires P_omega(u) < 0, got " +
                                std::to_string(vu.Pomega));
    const VariationalSuite vg = variational_suite({gs.phi1, gs.phi2}, p);
    const double Lu = vu.Momega - vu.Jomega;
    const double Lg = vg.Momega - vg.Jomega;
    Vc3Report rep{vu.Momega - vg.Momega, Lu - Lg, false};
    rep.pass = rep.dMomega > 0.0 && rep.dL > 0.0;
    return rep;
}

/// Membership in the invariant sets around the standing wave. The A-set asks
/// S_omega(s) < S_omega(standing wave) and P_omega(u) < 0; the B-set asks
/// E(s) < E(standing wave), Q(s) = Q(standing wave) (relative tolerance),
/// H(s) < 0 and P_omega(u) < 0. Slacks are reported so callers can apply their
/// own margins; the flags themselves use strict inequalities with zero margin.
struct SetMembership {
    bool in_A;
    bool in_B;
    double action_slack;    // S_omega(standing wave) - S_omega(s)
    double neg_Pomega;      // -P_omega(u)
    double energy_slack;    // E(standing wave) - E(s)
    double charge_gap;      // Q(s) - Q(standing wave)
    double neg_H;           // -H(s)
};

inline SetMembership membership(const State& s, const GroundState& gs,
                                double charge_rel_tol = 1e-6) {
    const Params& p = gs.params;
    const FunctionalReport fs = evaluate_report(s, p);
    const FunctionalReport fg = evaluate_report(standing_wave(gs), p);
    SetMembership m;
    m.action_slack = fg.Somega - fs.Somega;
    m.neg_Pomega = -fs.Pomega;
    m.energy_slack = fg.E - fs.E;
    m.charge_gap = fs.Q - fg.Q;
    m.neg_H = -fs.H;
    const bool q_equal = std::abs(m.charge_gap) <=
                         charge_rel_tol * std::max(std::abs(fg.Q), 1e-300);
    m.in_A = m.action_slack > 0.0 && m.neg_Pomega > 0.0;
    m.in_B = m.energy_slack > 0.0 && q_equal && m.neg_H > 0.0 && m.neg_Pomega > 0.0;
    return m;
}

/// f(lambda) = alpha E(u^lambda, v_lambda) - lambda^alpha H(u, v), in closed form:
///   alpha (lambda^{-alpha} + lambda^alpha) K - {alpha lambda^{alpha+2} - (alpha+2) lambda^alpha} L.
inline double f_function(const State& s, const Params& p, double lambda) {
    if (lambda <= 0.0) throw std::domain_error("f_function: lambda must be positive");
    const KML k = kml(s, p);
    const double a = p.alpha();
    return a * (std::pow(lambda, -a) + std::pow(lambda, a)) * k.K -
           (a * std::pow(lambda, a + 2.0) - (a + 2.0) * std::pow(lambda, a)) * k.L;
}

struct KeyPropositionReport {
    double slack;  // alpha E(s) - H(s) - alpha E(standing wave)
    bool pass;
};

/// Check of the key inequality alpha E(phi, psi) <= alpha E(u, v) - H(u, v)
/// under the hypotheses H <= 0, Q-equality, P_omega < 0. Hypothesis violations
/// raise PreconditionError naming every failed condition.
inline KeyPropositionReport check_key_proposition(const State& s, const GroundState& gs,
                                                  double charge_rel_tol = 1e-6,
                                                  double slack_rel_tol = 1e-6) {
    const Params& p = gs.params;
    const FunctionalReport fs = evaluate_report(s, p);
    const FunctionalReport fg = evaluate_report(standing_wave(gs), p);
    std::string failed;
    if (!(fs.H <= 0.0)) failed += " H<=0";
    if (std::abs(fs.Q - fg.Q) > charge_rel_tol * std::max(std::abs(fg.Q), 1e-300))
        failed += " Q-equality";
    if (!(fs.Pomega < 0.0)) failed += " P_omega<0";
    if (!failed.empty())
        throw PreconditionError("check_key_proposition: hypothesis failed:" + failed);
    const double a = p.alpha();
    KeyPropositionReport rep;
    rep.slack = a * fs.E - fs.H - a * fg.E;
    rep.pass = rep.slack >= -slack_rel_tol * std::abs(a * fg.E);
    return rep;
}

} // namespace nlkg
