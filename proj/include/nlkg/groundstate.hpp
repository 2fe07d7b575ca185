#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "nlkg/functionals.hpp"
#include "nlkg/operators.hpp"
#include "nlkg/params.hpp"

namespace nlkg {

namespace detail {

struct Tridiagonal {
    std::vector<double> lower, diag, upper;  // lower[0] and upper[n-1] unused

    int size() const { return static_cast<int>(diag.size()); }

    std::vector<double> solve(std::vector<double> d) const {
        const int n = size();
        std::vector<double> cp(n);
        cp[0] = upper[0] / diag[0];
        d[0] /= diag[0];
        for (int i = 1; i < n; ++i) {
            const double m = diag[i] - lower[i] * cp[i - 1];
            cp[i] = upper[i] / m;
            d[i] = (d[i] - lower[i] * d[i - 1]) / m;
        }
        for (int i = n - 2; i >= 0; --i) d[i] -= cp[i] * d[i + 1];
        return d;
    }

    std::vector<double> apply(const std::vector<double>& x) const {
        const int n = size();
        std::vector<double> y(n);
        for (int i = 0; i < n; ++i) {
            double v = diag[i] * x[i];
            if (i > 0) v += lower[i] * x[i - 1];
            if (i + 1 < n) v += upper[i] * x[i + 1];
            y[i] = v;
        }
        return y;
    }
};

/// Fourth-order tridiagonal discretization of -phi'' - (N-1)/r phi' + mu phi = s
/// with regularity at r = 0 and phi(R) = 0.
///
/// N=2: compact (HOC) scheme in the phi variable; the h^2-correction terms are
/// linear in phi and fold into the matrix, the source corrections into a
/// compact 3-point right-hand side. The r = 0 row eliminates phi'''' (0) through
/// the even expansion of the equation itself.
///
/// N=3: the substitution w = r phi turns the operator into -w'' + mu w = r s on
/// (0, R) with w(0) = w(R) = 0, handled by the classical Numerov scheme.
class StationarySystem {
public:
    StationarySystem(GridPtr grid, double mu) : grid_(std::move(grid)), mu_(mu) {
        const RadialGrid& g = *grid_;
        const double h = g.h;
        const int n = g.npts;
        if (g.dim == 2) {
            const int m = n - 1;  // unknowns phi_0 .. phi_{M-2}
            A_.lower.assign(m, 0.0);
            A_.diag.assign(m, 0.0);
            A_.upper.assign(m, 0.0);
            A_.diag[0] = 4.0 / (h * h) + 0.75 * mu;
            A_.upper[0] = -4.0 / (h * h) + 0.25 * mu;
            for (int j = 1; j < m; ++j) {
                const double r = g.r[j];
                const double p = 1.0 / r + h * h / (6.0 * r * r * r);
                A_.diag[j] = 2.0 / (h * h) + mu + (h * h * mu / 12.0) * (1.0 / (r * r) + mu);
                A_.upper[j] = -1.0 / (h * h) - p / (2.0 * h);
                A_.lower[j] = -1.0 / (h * h) + p / (2.0 * h);
            }
        } else {
            const int m = n - 2;  // unknowns w_1 .. w_{M-2}
            A_.lower.assign(m, -1.0 / (h * h) + mu / 12.0);
            A_.diag.assign(m, 2.0 / (h * h) + 10.0 * mu / 12.0);
            A_.upper.assign(m, -1.0 / (h * h) + mu / 12.0);
        }
    }

    const GridPtr& grid() const { return grid_; }

    /// Compact right-hand side B s from nonlinearity samples s (full field size).
    std::vector<double> compact_rhs(const std::vector<double>& s) const {
        const RadialGrid& g = *grid_;
        const double h = g.h;
        const int n = g.npts;
        if (g.dim == 2) {
            std::vector<double> d(n - 1);
            d[0] = 0.75 * s[0] + 0.25 * s[1];
            for (int j = 1; j < n - 1; ++j) {
                const double r = g.r[j];
                d[j] = s[j] * (5.0 / 6.0 + (h * h / 12.0) * (1.0 / (r * r) + mu_)) +
                       s[j + 1] * (1.0 / 12.0 + h / (24.0 * r)) +
                       s[j - 1] * (1.0 / 12.0 - h / (24.0 * r));
            }
            return d;
        }
        // Numerov: source is r*s; s[0]*r[0] = 0 enters the j=1 row naturally.
        std::vector<double> d(n - 2);
        for (int j = 1; j < n - 1; ++j)
            d[j - 1] = (g.r[j + 1] * s[j + 1] + 10.0 * g.r[j] * s[j] + g.r[j - 1] * s[j - 1]) / 12.0;
        return d;
    }

    /// Unknown vector of the tridiagonal system for a given profile.
    std::vector<double> unknowns(const std::vector<double>& phi) const {
        const RadialGrid& g = *grid_;
        const int n = g.npts;
        if (g.dim == 2) return {phi.begin(), phi.begin() + (n - 1)};
        std::vector<double> x(n - 2);
        for (int j = 1; j < n - 1; ++j) x[j - 1] = g.r[j] * phi[j];
        return x;
    }

    /// Full profile from the unknown vector (Dirichlet value restored; for N=3
    /// phi(0) = w'(0) by a one-sided 4th-order stencil).
    std::vector<double> to_profile(const std::vector<double>& x) const {
        const RadialGrid& g = *grid_;
        const int n = g.npts;
        std::vector<double> phi(n, 0.0);
        if (g.dim == 2) {
            for (int j = 0; j < n - 1; ++j) phi[j] = x[j];
            return phi;
        }
        for (int j = 1; j < n - 1; ++j) phi[j] = x[j - 1] / g.r[j];
        phi[0] = (48.0 * x[0] - 36.0 * x[1] + 16.0 * x[2] - 3.0 * x[3]) / (12.0 * g.h);
        return phi;
    }

    std::vector<double> solve(const std::vector<double>& rhs) const { return A_.solve(rhs); }
    std::vector<double> apply(const std::vector<double>& x) const { return A_.apply(x); }

    /// Weighted L2 norm, in profile units, of the solved system's residual
    /// A x - B s over the equation rows.
    double residual_norm(const std::vector<double>& phi, const std::vector<double>& s) const {
        const RadialGrid& g = *grid_;
        const std::vector<double> rows = residual_rows(phi, s);
        const int off = g.dim == 2 ? 0 : 1;
        double acc = 0.0;
        for (size_t i = 0; i < rows.size(); ++i) {
            double v = rows[i];
            if (g.dim == 3) v /= g.r[i + off];  // w-row = r * (phi-equation)
            acc += g.w[i + off] * v * v;
        }
        return std::sqrt(acc);
    }

    std::vector<double> residual_rows(const std::vector<double>& phi,
                                      const std::vector<double>& s) const {
        std::vector<double> lhs = A_.apply(unknowns(phi));
        const std::vector<double> rhs = compact_rhs(s);
        for (size_t i = 0; i < lhs.size(); ++i) lhs[i] -= rhs[i];
        return lhs;
    }

private:
    GridPtr grid_;
    double mu_;
    Tridiagonal A_;
};

/// Second-order counterpart of StationarySystem built on the same stencil the
/// evolution module steps with; used to re-converge profiles on a dynamics grid.
class StationarySystem2nd {
public:
    StationarySystem2nd(GridPtr grid, double mu) : grid_(std::move(grid)) {
        const RadialGrid& g = *grid_;
        const double h = g.h;
        const int n = g.npts;
        const int N = g.dim;
        const int m = n - 1;
        A_.lower.assign(m, 0.0);
        A_.diag.assign(m, 0.0);
        A_.upper.assign(m, 0.0);
        A_.diag[0] = 2.0 * N / (h * h) + mu;
        A_.upper[0] = -2.0 * N / (h * h);
        for (int j = 1; j < m; ++j) {
            const double r = g.r[j];
            A_.lower[j] = -1.0 / (h * h) + (N - 1) / (2.0 * h * r);
            A_.diag[j] = 2.0 / (h * h) + mu;
            A_.upper[j] = -1.0 / (h * h) - (N - 1) / (2.0 * h * r);
        }
    }

    std::vector<double> compact_rhs(const std::vector<double>& s) const {
        return {s.begin(), s.begin() + (grid_->npts - 1)};
    }
    std::vector<double> unknowns(const std::vector<double>& phi) const {
        return {phi.begin(), phi.begin() + (grid_->npts - 1)};
    }
    std::vector<double> to_profile(const std::vector<double>& x) const {
        std::vector<double> phi(grid_->npts, 0.0);
        for (size_t j = 0; j < x.size(); ++j) phi[j] = x[j];
        return phi;
    }
    std::vector<double> solve(const std::vector<double>& rhs) const { return A_.solve(rhs); }
    std::vector<double> apply(const std::vector<double>& x) const { return A_.apply(x); }

    double residual_norm(const std::vector<double>& phi, const std::vector<double>& s) const {
        std::vector<double> lhs = A_.apply(unknowns(phi));
        const std::vector<double> rhs = compact_rhs(s);
        double acc = 0.0;
        for (size_t i = 0; i < lhs.size(); ++i) {
            const double v = lhs[i] - rhs[i];
            acc += grid_->w[i] * v * v;
        }
        return std::sqrt(acc);
    }

private:
    GridPtr grid_;
    Tridiagonal A_;
};

inline double weighted_norm(const RadialGrid& g, const std::vector<double>& f) {
    double acc = 0.0;
    for (int j = 0; j < g.npts; ++j) acc += g.w[j] * f[j] * f[j];
    return std::sqrt(acc);
}

inline double max_abs(const std::vector<double>& f) {
    double m = 0.0;
    for (double v : f) m = std::max(m, std::abs(v));
    return m;
}

/// Damped Petviashvili iteration for the coupled stationary system. The plain
/// update phi_j <- S^2 A_j^{-1} N_j leaves the component-ratio mode with
/// multiplier -1 (for proportional profiles the ratio obeys kappa -> 2/kappa),
/// so each step is averaged with the previous iterate; theta = 1/2 makes that
/// mode superlinearly contractive.
struct PetviashviliResult {
    std::vector<double> phi1, phi2;
    double residual;
    int iterations;
    bool converged;
};

template <class System>
PetviashviliResult petviashvili(const System& sys1, const System& sys2,
                                        const RadialGrid& g, double mu1, double mu2,
                                        std::vector<double> p1, std::vector<double> p2,
                                        double tol, int max_iter, double theta = 0.5) {
    const int n = g.npts;
    p1[n - 1] = 0.0;
    p2[n - 1] = 0.0;
    std::vector<double> N1(n), N2(n);
    double res = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
        for (int j = 0; j < n; ++j) {
            N1[j] = 2.0 * p1[j] * p2[j];
            N2[j] = p1[j] * p1[j];
        }
        const std::vector<double> x1 = sys1.unknowns(p1);
        const std::vector<double> x2 = sys2.unknowns(p2);
        const std::vector<double> d1 = sys1.compact_rhs(N1);
        const std::vector<double> d2 = sys2.compact_rhs(N2);
        const std::vector<double> Ax1 = sys1.apply(x1);
        const std::vector<double> Ax2 = sys2.apply(x2);
        double num = 0.0, den = 0.0;
        for (size_t i = 0; i < x1.size(); ++i) num += Ax1[i] * x1[i];
        for (size_t i = 0; i < x2.size(); ++i) num += Ax2[i] * x2[i];
        for (size_t i = 0; i < x1.size(); ++i) den += d1[i] * x1[i];
        for (size_t i = 0; i < x2.size(); ++i) den += d2[i] * x2[i];
        if (den <= 0.0 || num <= 0.0)
            throw DegenerateIterateError("petviashvili: stabilizer became non-positive "
                                         "(collapsed iterate) at iteration " + std::to_string(it));
        const double S = num / den;
        std::vector<double> rhs1(d1), rhs2(d2);
        for (double& v : rhs1) v *= S * S;
        for (double& v : rhs2) v *= S * S;
        const std::vector<double> c1 = sys1.to_profile(sys1.solve(rhs1));
        const std::vector<double> c2 = sys2.to_profile(sys2.solve(rhs2));
        double diff = 0.0, scale = 0.0;
        for (int j = 0; j < n; ++j) {
            const double n1 = (1.0 - theta) * p1[j] + theta * c1[j];
            const double n2 = (1.0 - theta) * p2[j] + theta * c2[j];
            diff = std::max(diff, std::max(std::abs(n1 - p1[j]), std::abs(n2 - p2[j])));
            p1[j] = n1;
            p2[j] = n2;
            scale = std::max(scale, std::max(std::abs(n1), std::abs(n2)));
        }
        for (int j = 0; j < n; ++j) {
            N1[j] = 2.0 * p1[j] * p2[j];
            N2[j] = p1[j] * p1[j];
        }
        const double nr = sys1.residual_norm(p1, N1) + sys2.residual_norm(p2, N2);
        const double den_norm = mu1 * weighted_norm(g, p1) + mu2 * weighted_norm(g, p2);
        res = nr / den_norm;
        if (res <= tol && diff / scale <= tol)
            return {std::move(p1), std::move(p2), res, it, true};
    }
    return {std::move(p1), std::move(p2), res, max_iter, false};
}

} // namespace detail

/// A converged radial ground state of the stationary problem.
struct GroundState {
    Field phi1, phi2;   // real-valued, stored as complex with zero imaginary part
    Params params;
    double residual;
    int iterations;

    const GridPtr& grid() const { return phi1.grid; }
};

namespace detail {

inline Field real_to_field(const GridPtr& g, const std::vector<double>& v) {
    Field f(g);
    for (int j = 0; j < g->npts; ++j) f[j] = Complex{v[j], 0.0};
    return f;
}

inline std::vector<double> gaussian_seed(const RadialGrid& g, double amplitude, double width) {
    std::vector<double> s(g.npts);
    for (int j = 0; j < g.npts; ++j) s[j] = amplitude * std::exp(-width * g.r[j] * g.r[j]);
    s[g.npts - 1] = 0.0;
    return s;
}

template <class System>
GroundState run_solver(const Params& p, const GridPtr& grid, std::vector<double> seed1,
                       std::vector<double> seed2, double tol, int max_iter) {
    p.validate();
    if (tol <= 0.0) throw std::domain_error("solve_sp: tol must be positive");
    const System sys1(grid, p.mu1());
    const System sys2(grid, p.mu2());
    auto out = detail::petviashvili(sys1, sys2, *grid, p.mu1(), p.mu2(),
                                    std::move(seed1), std::move(seed2), tol, max_iter);
    if (!out.converged)
        throw ConvergenceError("solve_sp: no convergence after " + std::to_string(max_iter) +
                               " iterations (residual " + std::to_string(out.residual) + ")",
                               out.residual, out.iterations);
    return {real_to_field(grid, out.phi1), real_to_field(grid, out.phi2),
            p, out.residual, out.iterations};
}

} // namespace detail

/// Solve the stationary problem by Petviashvili iteration from explicit seeds.
inline GroundState solve_sp_seeded(const Params& p, const GridPtr& grid,
                                   const std::vector<double>& seed1,
                                   const std::vector<double>& seed2,
                                   double tol = 1e-10, int max_iter = 2000) {
    return detail::run_solver<detail::StationarySystem>(p, grid, seed1, seed2, tol, max_iter);
}

/// Solve the stationary problem
///   -lap phi1 + mu1 phi1 = 2 phi1 phi2,  -lap phi2 + mu2 phi2 = phi1^2
/// from the default Gaussian seed A exp(-mu_j r^2/4), A = max(mu1, mu2).
inline GroundState solve_sp(const Params& p, const GridPtr& grid,
                            double tol = 1e-10, int max_iter = 2000) {
    const double A = std::max(p.mu1(), p.mu2());
    return solve_sp_seeded(p, grid,
                           detail::gaussian_seed(*grid, A, p.mu1() / 4.0),
                           detail::gaussian_seed(*grid, A, p.mu2() / 4.0), tol, max_iter);
}

/// Re-converge profiles against the second-order operator of a (typically
/// coarser) grid, so that they are stationary for the evolution module's
/// discrete flow. Seeds usually come from resampling a fine-grid solution.
inline GroundState refine_ground_state(const Params& p, const GridPtr& grid,
                                       const std::vector<double>& seed1,
                                       const std::vector<double>& seed2,
                                       double tol = 1e-11, int max_iter = 2000) {
    return detail::run_solver<detail::StationarySystem2nd>(p, grid, seed1, seed2, tol, max_iter);
}

/// The standing-wave phase-space point (phi1, phi2, i omega phi1, 2 i omega phi2).
inline State standing_wave(const GroundState& gs) {
    const Params& p = gs.params;
    Field v1(gs.grid()), v2(gs.grid());
    for (int j = 0; j < gs.grid()->npts; ++j) {
        v1[j] = Complex{0.0, p.omega} * gs.phi1[j];
        v2[j] = Complex{0.0, 2.0 * p.omega} * gs.phi2[j];
    }
    return {gs.phi1, gs.phi2, std::move(v1), std::move(v2)};
}

/// The three equivalent quantities of the second-derivative test at lambda = 1:
///   (i)  d^2/dlambda^2 E of the scaled standing wave, via the closed form
///        alpha(alpha+1) K + alpha(alpha-1) M - (alpha+1)(alpha+2) L;
///   (ii) {m1^2-(5-N)w^2}||phi1||^2 + {m2^2-4(5-N)w^2}||phi2||^2;
///   (iii) the gap (alpha+2) L - alpha^2 K(psi).
/// At a converged ground state (i) = -alpha (ii) = -2 (iii).
struct Blowup2Report {
    double second_deriv_E;     // (i)
    double mass_combination;   // (ii)
    double gap;                // (iii)
};

inline Blowup2Report check_blowup2(const GroundState& gs) {
    const Params& p = gs.params;
    const State sw = standing_wave(gs);
    const KML k = kml(sw, p);
    const double a = p.alpha();
    const double nu1 = l2_norm_sq(gs.phi1);
    const double nu2 = l2_norm_sq(gs.phi2);
    Blowup2Report rep;
    rep.second_deriv_E = a * (a + 1.0) * k.K + a * (a - 1.0) * k.M - (a + 1.0) * (a + 2.0) * k.L;
    rep.mass_combination = (p.m1 * p.m1 - (5.0 - p.dim) * p.omega * p.omega) * nu1 +
                           (p.m2 * p.m2 - 4.0 * (5.0 - p.dim) * p.omega * p.omega) * nu2;
    rep.gap = (a + 2.0) * k.L - a * a * k.K;
    return rep;
}

/// Numerical check of condition (SC2): the mass combination (ii) is nonnegative.
inline bool sc2_satisfied(const GroundState& gs) {
    return check_blowup2(gs).mass_combination >= 0.0;
}

/// Ground states from `count` random positive Gaussian seeds (deterministic in
/// `seed`); used to cross-check that independent initializations reach the same
/// action level.
inline std::vector<GroundState> multi_init_ground_states(const Params& p, const GridPtr& grid,
                                                         int count, unsigned seed,
                                                         double tol = 1e-10,
                                                         int max_iter = 2000) {
    std::mt19937_64 rng(seed);
    const double A = std::max(p.mu1(), p.mu2());
    std::uniform_real_distribution<double> amp(0.5 * A, 2.0 * A);
    std::uniform_real_distribution<double> w1(p.mu1() / 8.0, p.mu1() / 2.0);
    std::uniform_real_distribution<double> w2(p.mu2() / 8.0, p.mu2() / 2.0);
    std::vector<GroundState> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k)
        out.push_back(solve_sp_seeded(p, grid,
                                      detail::gaussian_seed(*grid, amp(rng), w1(rng)),
                                      detail::gaussian_seed(*grid, amp(rng), w2(rng)),
                                      tol, max_iter));
    return out;
}

} // namespace nlkg
