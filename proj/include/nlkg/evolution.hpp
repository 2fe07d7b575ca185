#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "nlkg/functionals.hpp"
#include "nlkg/operators.hpp"
#include "nlkg/trajectory.hpp"
#include "nlkg/virial.hpp"

namespace nlkg {

struct EvolveConfig {
    double dt = 0.01;
    double t_end = 10.0;
    int record_every = 1;
    double blowup_factor = 1e4;
    double cfl_limit = 0.5;

    void validate(const RadialGrid& g) const {
        if (dt <= 0.0 || t_end <= 0.0)
            throw std::domain_error("evolve: dt and t_end must be positive");
        if (record_every < 1)
            throw std::domain_error("evolve: record_every must be >= 1");
        if (blowup_factor <= 1.0)
            throw std::domain_error("evolve: blowup_factor must exceed 1");
        if (dt > cfl_limit * g.h)
            throw std::domain_error("evolve: dt violates the CFL bound dt <= " +
                                    std::to_string(cfl_limit) + " * h = " +
                                    std::to_string(cfl_limit * g.h));
    }
};

/// Right-hand side of the second-order system:
///   (lap u1 - m1^2 u1 + 2 conj(u1) u2,  lap u2 - m2^2 u2 + u1^2).
inline FieldPair rhs(const State& s, const Params& p) {
    Field r1 = laplacian(s.u1);
    Field r2 = laplacian(s.u2);
    const double m1sq = p.m1 * p.m1, m2sq = p.m2 * p.m2;
    for (int j = 0; j < s.u1.size(); ++j) {
        r1[j] += -m1sq * s.u1[j] + 2.0 * std::conj(s.u1[j]) * s.u2[j];
        r2[j] += -m2sq * s.u2[j] + s.u1[j] * s.u1[j];
    }
    return {std::move(r1), std::move(r2)};
}

/// Two-layer leapfrog for the second-order form:
///   u^{n+1} = 2 u^n - u^{n-1} + dt^2 rhs(u^n),   v^n = (u^{n+1} - u^{n-1})/(2 dt),
/// bootstrapped by u^{-1} = u^0 - dt v^0 + (dt^2/2) rhs(u^0). Equivalent to
/// velocity Verlet on (u, v), hence exactly time-reversible through the
/// (u, v) interface.
class LeapfrogStepper {
public:
    LeapfrogStepper(const State& s0, const Params& p, double dt)
        : params_(p), dt_(dt), steps_done_(0),
          prev1_(s0.u1), prev2_(s0.u2), cur1_(s0.u1), cur2_(s0.u2) {
        const FieldPair r = rhs(s0, p);
        for (int j = 0; j < cur1_.size(); ++j) {
            prev1_[j] = s0.u1[j] - dt * s0.v1[j] + 0.5 * dt * dt * r.u1[j];
            prev2_[j] = s0.u2[j] - dt * s0.v2[j] + 0.5 * dt * dt * r.u2[j];
        }
    }

    /// One leapfrog update. Returns the completed state (u^n, v^n) at the
    /// pre-advance time n*dt; the centered velocity needs u^{n+1}, so it
    /// becomes available exactly when the layer advances.
    State advance() {
        const State cur{cur1_, cur2_, cur1_, cur2_};  // velocities unused by rhs
        const FieldPair r = rhs(cur, params_);
        const int n = cur1_.size();
        Field next1(cur1_.grid), next2(cur1_.grid);
        Field v1(cur1_.grid), v2(cur1_.grid);
        for (int j = 0; j < n; ++j) {
            next1[j] = 2.0 * cur1_[j] - prev1_[j] + dt_ * dt_ * r.u1[j];
            next2[j] = 2.0 * cur2_[j] - prev2_[j] + dt_ * dt_ * r.u2[j];
            v1[j] = (next1[j] - prev1_[j]) / (2.0 * dt_);
            v2[j] = (next2[j] - prev2_[j]) / (2.0 * dt_);
        }
        next1[n - 1] = {};
        next2[n - 1] = {};
        State out{cur1_, cur2_, std::move(v1), std::move(v2)};
        prev1_ = std::move(cur1_);
        prev2_ = std::move(cur2_);
        cur1_ = std::move(next1);
        cur2_ = std::move(next2);
        ++steps_done_;
        return out;
    }

    /// Time of the layer the next advance() call completes.
    double time() const { return (steps_done_) * dt_; }

private:
    Params params_;
    double dt_;
    long steps_done_;
    Field prev1_, prev2_, cur1_, cur2_;
};

/// Evolve initial data to t_end or until the blow-up criterion fires
/// (X-norm >= blowup_factor x initial X-norm, or non-finite values). Functional
/// diagnostics are recorded every record_every steps; if rho is given, the
/// localized virial quantity I_rho is recorded alongside. Non-finite values
/// without preceding norm growth are reported as numerical_failure.
inline EvolveResult evolve(const State& s0, const Params& p, const EvolveConfig& cfg,
                           std::optional<double> rho = std::nullopt) {
    p.validate();
    cfg.validate(*s0.grid());
    std::optional<VirialCutoff> cutoff;
    if (rho) cutoff = make_cutoff(*rho, s0.grid());

    EvolveResult result;
    const long nsteps = std::lround(cfg.t_end / cfg.dt);
    result.records.reserve(static_cast<size_t>(nsteps / cfg.record_every) + 2);

    LeapfrogStepper stepper(s0, p, cfg.dt);
    const double xn0 = xnorm(s0);
    double last_finite_t = 0.0;
    bool grew = false;

    for (long n = 0; n <= nsteps; ++n) {
        const double t = n * cfg.dt;
        const State cur = stepper.advance();
        const double xn = xnorm(cur);
        if (!std::isfinite(xn)) {
            result.outcome = grew ? Outcome::blowup_detected : Outcome::numerical_failure;
            result.t_final = last_finite_t;
            return result;
        }
        last_finite_t = t;
        if (xn0 > 0.0 && xn >= 0.5 * cfg.blowup_factor * xn0) grew = true;
        const bool blown = xn0 > 0.0 && xn >= cfg.blowup_factor * xn0;
        if (n % cfg.record_every == 0 || blown) {
            const FunctionalReport f = evaluate_report(cur, p);
            const double ir = cutoff ? I_rho(cur, *cutoff)
                                     : std::numeric_limits<double>::quiet_NaN();
            result.records.push_back({t, f.E, f.Q, f.H, f.Pomega, f.Somega, xn, ir});
        }
        if (blown) {
            result.outcome = Outcome::blowup_detected;
            result.t_final = t;
            return result;
        }
    }
    result.outcome = Outcome::completed;
    result.t_final = cfg.t_end;
    return result;
}

} // namespace nlkg
