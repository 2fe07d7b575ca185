// Acceptance suite: one check per criterion, each printed as a PASS/FAIL line
// with its measured values. Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "nlkg/nlkg.hpp"
#include "support/oracles.hpp"

using namespace nlkg;
using oracle::rel;

namespace {

int g_failures = 0;

class Criterion {
public:
    Criterion(int id, std::string name) : id_(id), name_(std::move(name)), pass_(true) {
        start_ = std::chrono::steady_clock::now();
    }

    void require(bool ok, const std::string& what, double value, double threshold) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%s=%.3e (limit %.1e)%s", what.c_str(), value,
                      threshold, ok ? "" : " <-- FAIL");
        details_.push_back(buf);
        pass_ = pass_ && ok;
    }

    void require_below(const std::string& what, double value, double threshold) {
        require(value <= threshold, what, value, threshold);
    }

    void fail(const std::string& why) {
        details_.push_back(why);
        pass_ = false;
    }

    ~Criterion() {
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        std::printf("[%s] criterion %d: %s (%.1f s)\n", pass_ ? "PASS" : "FAIL", id_,
                    name_.c_str(), secs);
        for (const auto& d : details_) std::printf("        %s\n", d.c_str());
        std::fflush(stdout);
        if (!pass_) ++g_failures;
    }

private:
    int id_;
    std::string name_;
    bool pass_;
    std::vector<std::string> details_;
    std::chrono::steady_clock::time_point start_;
};

template <class Fn>
void run_criterion(int id, const std::string& name, Fn&& fn) {
    Criterion c(id, name);
    try {
        fn(c);
    } catch (const std::exception& e) {
        c.fail(std::string("exception: ") + e.what());
    }
}

/// Fine-grid solve, transfer to the dynamics grid, re-converge there.
struct Pipeline {
    GroundState fine;
    GroundState dynamics;
    State wave;  // standing wave on the dynamics grid
};

Pipeline make_pipeline(const Params& p, GridSpec ground, GridSpec dyn) {
    Pipeline out{solve_sp(p, make_grid(p.dim, ground.rmax, ground.npts)),
                 GroundState{Field{}, Field{}, p, 0, 0}, State(make_grid(p.dim, 1, 16))};
    const GridPtr dgrid = make_grid(p.dim, dyn.rmax, dyn.npts);
    const Field r1 = resample(out.fine.phi1, dgrid);
    const Field r2 = resample(out.fine.phi2, dgrid);
    std::vector<double> s1(dgrid->npts), s2(dgrid->npts);
    for (int j = 0; j < dgrid->npts; ++j) {
        s1[j] = r1[j].real();
        s2[j] = r2[j].real();
    }
    out.dynamics = refine_ground_state(p, dgrid, s1, s2);
    out.wave = standing_wave(out.dynamics);
    return out;
}

void criterion_1(Criterion& c) {
    const Params p2{1.0, 2.0, 0.45, 2};
    const Params p3{1.0, 2.0, 0.45, 3};
    std::mt19937_64 rng(2024);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const Params& p = trial % 2 == 0 ? p2 : p3;
        const GridPtr g = make_grid(p.dim, 25.0, 1024);
        const State s = oracle::random_state(g, rng);
        const FunctionalReport f = evaluate_report(s, p);
        const ActionValue a = action_S(s, p);
        const double al = p.alpha();
        const double scale = std::max({1.0, std::abs(f.E), std::abs(f.Momega), std::abs(f.K)});
        for (double d : {f.E - (f.K + f.M - f.L),
                         f.H - (-al * f.K + al * f.M - (al + 2.0) * f.L),
                         f.Somega - (f.E - p.omega * f.Q),
                         (al + 2.0) * f.Jomega - f.Pomega - 2.0 * f.Momega,
                         al * f.Jomega - f.Pomega - 2.0 * f.L,
                         a.direct - a.decomposed})
            worst = std::max(worst, std::abs(d) / scale);
    }
    c.require_below("max identity residual over 20 states", worst, 1e-10);
}

void criterion_2(Criterion& c) {
    for (int dim : {2, 3}) {
        const Params p{1.0, 2.0, 0.45, dim};
        const GridPtr g = make_grid(dim, 20.0, 4096);
        State s(g);
        s.u1 = oracle::gaussian(g, Complex{1.3, 0.1}, 1.0);
        s.u2 = oracle::gaussian(g, Complex{0.7, -0.2}, 0.8);
        s.v1 = oracle::gaussian(g, Complex{0.1, 0.4}, 1.1);
        s.v2 = oracle::gaussian(g, Complex{0.25, 0.05}, 0.6);
        const KML k = kml(s, p);
        const double a = p.alpha();
        const double q0 = charge_Q(s);
        double worst_q = 0.0, worst_e = 0.0;
        for (double lam : {0.5, 0.9, 1.1, 2.0}) {
            const State scaled = scale_state(s, lam);
            worst_q = std::max(worst_q, rel(charge_Q(scaled), q0));
            const double want = std::pow(lam, -a) * k.K + std::pow(lam, a) * k.M -
                                std::pow(lam, a + 2.0) * k.L;
            worst_e = std::max(worst_e, rel(energy_E(scaled, p), want));
        }
        const double eps = 1e-4;
        const double fd = (energy_E(scale_state(s, 1.0 + eps), p) -
                           energy_E(scale_state(s, 1.0 - eps), p)) /
                          (2.0 * eps);
        const std::string tag = "N=" + std::to_string(dim) + " ";
        c.require_below(tag + "charge invariance", worst_q, 1e-6);
        c.require_below(tag + "energy expansion", worst_e, 1e-4);
        c.require_below(tag + "H vs dE/dlambda", rel(dilation_H(s, p), fd), 1e-5);
    }
}

void criterion_3(Criterion& c) {
    for (auto [dim, m2, om] : {std::tuple{2, 2.0, 0.5}, std::tuple{3, 2.0, 0.4}}) {
        const Params p{1.0, m2, om, dim};
        const GridPtr g = make_grid(dim, 20.0, 4096);
        const GroundState gs = solve_sp(p, g, 1e-10, 2000);
        const std::string tag = "N=" + std::to_string(dim) + " ";
        c.require_below(tag + "residual", gs.residual, 1e-8);
        const VariationalSuite vs = variational_suite({gs.phi1, gs.phi2}, p);
        c.require_below(tag + "|P_omega|/M_omega", std::abs(vs.Pomega) / vs.Momega, 1e-6);
        c.require_below(tag + "|K_omega|/M_omega", std::abs(vs.Komega) / vs.Momega, 1e-6);
        const Blowup2Report b = check_blowup2(gs);
        const double scale = std::abs(b.second_deriv_E);
        c.require_below(tag + "(i)+alpha(ii) consistency",
                        std::abs(b.second_deriv_E + p.alpha() * b.mass_combination) / scale,
                        1e-8);
        c.require_below(tag + "(i)+2(iii) consistency",
                        std::abs(b.second_deriv_E + 2.0 * b.gap) / scale, 1e-8);
        const State sw = standing_wave(gs);
        const double eps = 1e-3;
        double E[5];
        for (int k = -2; k <= 2; ++k)
            E[k + 2] = energy_E(scale_state(sw, 1.0 + k * eps), p);
        const double fd = (-E[0] + 16.0 * E[1] - 30.0 * E[2] + 16.0 * E[3] - E[4]) /
                          (12.0 * eps * eps);
        c.require_below(tag + "d2E/dlambda2 vs closed form", rel(b.second_deriv_E, fd), 1e-3);
    }
}

void criterion_4(Criterion& c) {
    const double m1 = 1.0, om = 0.5;
    const Params p{m1, std::sqrt(m1 * m1 + 3.0 * om * om), om, 2};
    const GridPtr g = make_grid(2, 20.0, 4096);
    const GroundState gs = solve_sp(p, g, 1e-10, 4000);
    double peak = 0.0;
    for (int j = 0; j < g->npts; ++j) peak = std::max(peak, gs.phi1[j].real());
    double worst = 0.0;
    for (int j = 0; j < g->npts - 1; ++j) {
        if (gs.phi1[j].real() <= 1e-8 * peak) continue;
        worst = std::max(worst,
                         std::abs(gs.phi1[j].real() / gs.phi2[j].real() - std::numbers::sqrt2));
    }
    c.require_below("pointwise |phi1/phi2 - sqrt(2)|", worst, 1e-6);
    const std::vector<double> w = oracle::scalar_ground_state(p.mu1(), g);
    Field f1(g), f2(g);
    for (int j = 0; j < g->npts; ++j) {
        f1[j] = w[j] / std::numbers::sqrt2;
        f2[j] = 0.5 * w[j];
    }
    const double j_coupled = variational_suite({gs.phi1, gs.phi2}, p).Jomega;
    const double j_scalar = variational_suite({f1, f2}, p).Jomega;
    c.require_below("J_omega coupled vs scalar route", rel(j_coupled, j_scalar), 1e-5);
}

void criterion_5(Criterion& c) {
    c.require(g_function(1.0, 2.0) == 0.0 && g_function(1.0, 3.0) == 0.0, "g(1) exactly zero",
              std::abs(g_function(1.0, 2.0)) + std::abs(g_function(1.0, 3.0)), 0.0);
    const GScanResult s2 = g_positivity_scan(2.0, 999);
    const GScanResult s3 = g_positivity_scan(3.0, 999);
    c.require(s2.all_positive, "beta=2 positive on (0,1), min", s2.min_value, 0.0);
    c.require(s3.all_positive, "beta=3 positive on (0,1), min", s3.min_value, 0.0);
    double worst = 0.0;
    for (int k = 1; k <= 999; ++k) {
        const double s = k / 1000.0;
        worst = std::max(worst, std::abs(g_function(s, 2.0) - (s - 1) * (s - 1) * (1 - s)));
    }
    c.require_below("beta=2 closed-form match", worst, 1e-14);
}

void criterion_6(Criterion& c) {
    const Params p{1.0, 2.0, 0.5, 2};
    const Pipeline pipe = make_pipeline(p, {20.0, 4096}, {60.0, 2048});
    const double phi0 = pipe.dynamics.phi1[0].real();

    // dt = 0.01 over [0, 10]: record E, Q and the origin modulus each step
    const double dt = 0.01;
    LeapfrogStepper stepper(pipe.wave, p, dt);
    double drift_e = 0.0, drift_q = 0.0, mod_dev = 0.0;
    double E0 = 0.0, Q0 = 0.0;
    const long steps = std::lround(10.0 / dt);
    for (long n = 0; n <= steps; ++n) {
        const State cur = stepper.advance();
        mod_dev = std::max(mod_dev, std::abs(std::abs(cur.u1[0]) - phi0) / phi0);
        if (n % 10 == 0) {
            const FunctionalReport f = evaluate_report(cur, p);
            if (n == 0) {
                E0 = f.E;
                Q0 = f.Q;
            } else {
                drift_e = std::max(drift_e, std::abs(f.E - E0) / std::abs(E0));
                drift_q = std::max(drift_q, std::abs(f.Q - Q0) / std::abs(Q0));
            }
        }
    }
    c.require_below("E drift over [0,10]", drift_e, 1e-4);
    c.require_below("Q drift over [0,10]", drift_q, 1e-4);
    c.require_below("origin modulus deviation", mod_dev, 1e-2);

    EvolveConfig half;
    half.dt = 0.005;
    half.t_end = 10.0;
    half.record_every = 20;
    const EvolveResult fine = evolve(pipe.wave, p, half);
    double drift_half = 0.0;
    for (const auto& r : fine.records)
        drift_half = std::max(drift_half, std::abs(r.E - fine.records.front().E) /
                                              std::abs(fine.records.front().E));
    c.require(drift_e / drift_half >= 3.5, "drift reduction at dt/2", drift_e / drift_half, 3.5);
}

void criterion_7(Criterion& c) {
    // omega near the admissibility edge slows the blow-up so the lambda = 1.05
    // trajectory spans [0, 5] inside the exactness cone rho = 50
    const Params p{1.0, 2.0, 0.575, 2};
    const Pipeline pipe = make_pipeline(p, {20.0, 4096}, {60.0, 2048});
    const State data = scale_state(pipe.wave, 1.05);
    EvolveConfig cfg;
    cfg.dt = 0.005;
    cfg.t_end = 5.5;
    cfg.record_every = 10;
    const EvolveResult traj = evolve(data, p, cfg, 50.0);
    EvolveResult window;
    window.outcome = traj.outcome;
    window.t_final = traj.t_final;
    for (const auto& r : traj.records)
        if (r.t <= 5.0 + 1e-12) window.records.push_back(r);
    if (window.records.size() < 3) {
        c.fail("trajectory ended before t = 5 (t_final " + std::to_string(traj.t_final) + ")");
        return;
    }
    const VirialCheckReport rep = check_virial_identity(window, 30.0, 50.0, 1e-2);
    c.require_below("max |-dI/dt - H| / max|H| over [0,5]", rep.max_rel_deviation, 1e-2);
}

void criterion_8(Criterion& c) {
    struct Case {
        Params params;
        double dt;
        const char* tag;
    };
    // one mass-resonant pair (m2 = 2 m1) and one detuned pair; the detuned
    // N = 3 wave has a fast physical instability, so its lambda = 1 run needs
    // the smaller step to keep the discretization seed harmless over [0, 10]
    const Case cases[] = {{{1.0, 2.0, 0.5, 2}, 0.005, "resonant N=2"},
                          {{1.0, 2.3, 0.4, 3}, 0.00075, "detuned N=3"}};
    for (const Case& k : cases) {
        ExperimentConfig cfg;
        cfg.params = k.params;
        cfg.ground_grid = {20.0, 4096};
        cfg.dynamics_grid = {60.0, 2048};
        cfg.lambdas = {1.0, 1.05};
        cfg.evolve.dt = k.dt;
        cfg.evolve.t_end = 10.0;
        cfg.evolve.record_every = 10;
        cfg.rho = 50.0;
        const ExperimentReport rep = run_instability(cfg);
        const std::string tag = std::string(k.tag) + " ";
        c.require(rep.sc1 && rep.sc2, tag + "instability conditions hold",
                  rep.sc1 && rep.sc2 ? 1.0 : 0.0, 1.0);

        const LambdaEntry& at = rep.entries[0];
        c.require(at.outcome == Outcome::completed, tag + "lambda=1 completes",
                  at.outcome == Outcome::completed ? 1.0 : 0.0, 1.0);
        c.require_below(tag + "lambda=1 norm deviation", at.norm_dev_t10, 0.10);

        const LambdaEntry& out = rep.entries[1];
        c.require(out.in_B, tag + "lambda=1.05 in B", out.in_B ? 1.0 : 0.0, 1.0);
        c.require(out.outcome == Outcome::blowup_detected, tag + "lambda=1.05 blows up",
                  out.outcome == Outcome::blowup_detected ? 1.0 : 0.0, 1.0);
        c.require(out.t_final < cfg.evolve.t_end, tag + "t_final", out.t_final,
                  cfg.evolve.t_end);
        c.require(out.max_H < 0.0, tag + "H(t) < 0 at every record", out.max_H, 0.0);
        c.require(out.max_P < 0.0, tag + "P_omega(t) < 0 at every record", out.max_P, 0.0);
        c.require(out.reliable && at.reliable, tag + "conservation gate",
                  out.reliable && at.reliable ? 1.0 : 0.0, 1.0);
    }
}

void criterion_9(Criterion& c) {
    const Params p{1.0, 2.0, 0.5, 2};
    const GridPtr g = make_grid(2, 20.0, 4096);
    const GroundState gs = solve_sp(p, g);
    const State sw = standing_wave(gs);
    const double aE = p.alpha() * energy_E(sw, p);
    for (double lam : {1.05, 1.1, 1.5}) {
        const State s = scale_state(sw, lam);
        const KeyPropositionReport rep = check_key_proposition(s, gs);
        char what[64];
        std::snprintf(what, sizeof(what), "lambda=%.2f slack/(alpha E)", lam);
        c.require(rep.pass, what, rep.slack / std::abs(aE), -1e-6);
        const Vc3Report vc = check_vc3({s.u1, s.u2}, gs);
        std::snprintf(what, sizeof(what), "lambda=%.2f comparison gaps positive", lam);
        c.require(vc.pass, what, std::min(vc.dMomega, vc.dL), 0.0);
    }
}

} // namespace

int main() {
    std::printf("acceptance suite\n================\n");
    run_criterion(1, "functional identities on random states", criterion_1);
    run_criterion(2, "charge-invariant scaling suite", criterion_2);
    run_criterion(3, "ground-state suite", criterion_3);
    run_criterion(4, "equal-mass-parameter oracle", criterion_4);
    run_criterion(5, "g-function positivity", criterion_5);
    run_criterion(6, "conservation along the standing wave", criterion_6);
    run_criterion(7, "virial identity saturation", criterion_7);
    run_criterion(8, "strong-instability experiment", criterion_8);
    run_criterion(9, "key inequality for scaled waves", criterion_9);
    if (g_failures == 0)
        std::printf("================\nall criteria passed\n");
    else
        std::printf("================\n%d criteria FAILED\n", g_failures);
    return g_failures;
}
