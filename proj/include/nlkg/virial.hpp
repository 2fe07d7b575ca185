#pragma once

#include <cmath>
#include <vector>

#include "nlkg/operators.hpp"
#include "nlkg/trajectory.hpp"

namespace nlkg {

/// The cutoff pair (Phi_rho, Psi_rho) sampled on a grid. The profile Phi is the
/// cubic smoothstep N (1 - 3 tau^2 + 2 tau^3), tau = r/rho - 1, on [rho, 2 rho]:
/// C^1, non-increasing, plateau N on [0, rho], support [0, 2 rho]. Psi_rho is the
/// weighted primitive (1/r^{N-1}) int_0^r Phi_rho(s) s^{N-1} ds, so Psi_rho(r) = r
/// on [0, rho] and 0 <= Psi_rho <= 2 rho everywhere.
struct VirialCutoff {
    double rho;
    GridPtr grid;
    std::vector<double> phi, psi;
};

namespace detail {

/// The smoothstep plateau profile in the scaled variable x = r/rho.
inline double cutoff_profile(double x, int N) {
    if (x <= 1.0) return N;
    if (x >= 2.0) return 0.0;
    const double tau = x - 1.0;
    return N * (1.0 - 3.0 * tau * tau + 2.0 * tau * tau * tau);
}

} // namespace detail

inline VirialCutoff make_cutoff(double rho, const GridPtr& grid) {
    if (rho <= 0.0) throw std::domain_error("make_cutoff: rho must be positive");
    const RadialGrid& g = *grid;
    const int N = g.dim;
    VirialCutoff c{rho, grid, std::vector<double>(g.npts), std::vector<double>(g.npts)};
    for (int j = 0; j < g.npts; ++j)
        c.phi[j] = detail::cutoff_profile(g.r[j] / rho, N);
    // Cumulative quadrature of Phi_rho(s) s^{N-1} by two-point Gauss per cell
    // (exact through cubics, hence exact on the plateau where the integrand is
    // N s^{N-1}); the removable singularity at r = 0 gives Psi_rho(0) = 0.
    constexpr double offset = 0.28867513459481287;  // 1/(2 sqrt(3))
    double acc = 0.0;
    c.psi[0] = 0.0;
    for (int j = 1; j < g.npts; ++j) {
        const double mid = 0.5 * (g.r[j - 1] + g.r[j]);
        for (const double s : {mid - offset * g.h, mid + offset * g.h})
            acc += 0.5 * g.h * detail::cutoff_profile(s / rho, N) * std::pow(s, N - 1);
        c.psi[j] = acc / std::pow(g.r[j], N - 1);
    }
    return c;
}

/// I_rho(u, v) = sum_j Re int [ Psi_rho(r) d_r u_j conj(v_j)
///                             + (1/2)(Phi_rho(r) + 4 - N) u_j conj(v_j) ] dx.
/// The first integrand vanishes at r = 0 since Psi_rho(0) = 0.
inline double I_rho(const State& s, const VirialCutoff& cutoff) {
    if (!same_grid(*s.grid(), *cutoff.grid))
        throw GridMismatchError("I_rho: state and cutoff live on different grids");
    const RadialGrid& g = *s.grid();
    const int N = g.dim;
    double acc = 0.0;
    const Field du1 = radial_derivative(s.u1);
    const Field du2 = radial_derivative(s.u2);
    for (int j = 0; j < g.npts; ++j) {
        const double m = 0.5 * (cutoff.phi[j] + 4.0 - N);
        const double t1 = (du1[j] * std::conj(s.v1[j])).real() * cutoff.psi[j] +
                          (s.u1[j] * std::conj(s.v1[j])).real() * m;
        const double t2 = (du2[j] * std::conj(s.v2[j])).real() * cutoff.psi[j] +
                          (s.u2[j] * std::conj(s.v2[j])).real() * m;
        acc += g.w[j] * (t1 + t2);
    }
    return acc;
}

struct VirialCheckReport {
    double max_rel_deviation;
    double rho;
    double support_radius;
    bool pass;
    int n_interior;  // interior record times the derivative was formed at
};

/// On a trajectory whose support stays inside {r < rho} (rho >= support radius
/// plus elapsed time), the localized identity is exact: -dI_rho/dt = H. This
/// forms -dI_rho/dt by central differences of the recorded I_rho values and
/// reports the maximum deviation from the recorded H, relative to max |H|
/// (absolute if H vanishes identically).
inline VirialCheckReport check_virial_identity(const EvolveResult& traj,
                                               double support_radius, double rho,
                                               double tol = 1e-2) {
    std::vector<const TrajectoryRecord*> recs;
    for (const auto& r : traj.records)
        if (std::isfinite(r.I_rho)) recs.push_back(&r);
    if (recs.size() < 3)
        throw InsufficientDataError("check_virial_identity: need at least 3 records "
                                    "with I_rho values");
    double max_dev = 0.0, max_h = 0.0;
    int used = 0;
    for (size_t k = 1; k + 1 < recs.size(); ++k) {
        const double dt = recs[k + 1]->t - recs[k - 1]->t;
        const double didt = (recs[k + 1]->I_rho - recs[k - 1]->I_rho) / dt;
        max_dev = std::max(max_dev, std::abs(-didt - recs[k]->H));
        max_h = std::max(max_h, std::abs(recs[k]->H));
        ++used;
    }
    const double rel = max_h > 0.0 ? max_dev / max_h : max_dev;
    return {rel, rho, support_radius, rel <= tol, used};
}

} // namespace nlkg
