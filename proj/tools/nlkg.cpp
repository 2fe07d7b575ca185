// Command-line front end: ground states, functional reports, time evolution,
// the instability experiment, virial-identity checks and the g-function scan,
// driven by a JSON config with flag overrides. See README.md for the schema.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nlkg/nlkg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "nlkg 1.0.0 (config/format version 1)";

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitNumerical = 4;

struct CliOptions {
    std::string config_path;
    std::optional<double> omega, m1, m2, lambda, rho;
    std::optional<int> dim;
    std::optional<std::string> out;
};

json load_config(const CliOptions& opt) {
    json cfg = json::object();
    if (!opt.config_path.empty()) {
        std::ifstream in(opt.config_path);
        if (!in) throw std::runtime_error("cannot open config " + opt.config_path);
        in >> cfg;
    }
    if (opt.omega) cfg["params"]["omega"] = *opt.omega;
    if (opt.m1) cfg["params"]["m1"] = *opt.m1;
    if (opt.m2) cfg["params"]["m2"] = *opt.m2;
    if (opt.dim) cfg["params"]["dim"] = *opt.dim;
    if (opt.rho) cfg["rho"] = *opt.rho;
    if (opt.out) cfg["output_dir"] = *opt.out;
    if (opt.lambda) cfg["lambda_list"] = json::array({*opt.lambda});
    return cfg;
}

nlkg::Params params_from(const json& cfg) {
    nlkg::Params p;
    if (cfg.contains("params")) {
        const json& j = cfg.at("params");
        p.m1 = j.value("m1", p.m1);
        p.m2 = j.value("m2", p.m2);
        p.omega = j.value("omega", p.omega);
        p.dim = j.value("dim", p.dim);
    }
    p.validate();
    return p;
}

nlkg::GridSpec grid_spec_from(const json& cfg, const char* key, nlkg::GridSpec def) {
    if (cfg.contains(key)) {
        const json& j = cfg.at(key);
        def.rmax = j.value("rmax", def.rmax);
        def.npts = j.value("npts", def.npts);
    }
    return def;
}

nlkg::EvolveConfig evolve_config_from(const json& cfg) {
    nlkg::EvolveConfig e;
    if (cfg.contains("evolve")) {
        const json& j = cfg.at("evolve");
        e.dt = j.value("dt", e.dt);
        e.t_end = j.value("t_end", e.t_end);
        e.record_every = j.value("record_every", e.record_every);
        e.blowup_factor = j.value("blowup_factor", e.blowup_factor);
        e.cfl_limit = j.value("cfl_limit", e.cfl_limit);
    }
    return e;
}

fs::path output_dir(const json& cfg) {
    return fs::path(cfg.value("output_dir", std::string("out")));
}

void write_json(const fs::path& path, const json& j) {
    nlkg::atomic_write_text(path, j.dump(2) + "\n");
}

json report_to_json(const nlkg::FunctionalReport& r) {
    return json{{"E", r.E},           {"Q", r.Q},           {"G", r.G},
                {"K", r.K},           {"M", r.M},           {"L", r.L},
                {"H", r.H},           {"J_omega", r.Jomega}, {"M_omega", r.Momega},
                {"K_omega", r.Komega}, {"P_omega", r.Pomega}, {"S_omega", r.Somega}};
}

std::string lambda_tag(double lam) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", lam);
    return buf;
}

int cmd_ground_state(const json& cfg) {
    const nlkg::Params p = params_from(cfg);
    const nlkg::GridSpec gspec = grid_spec_from(cfg, "ground_grid", {20.0, 4096});
    double tol = 1e-10;
    int max_iter = 2000, multi_init = 0;
    unsigned seed = 42;
    if (cfg.contains("solver")) {
        const json& j = cfg.at("solver");
        tol = j.value("tol", tol);
        max_iter = j.value("max_iter", max_iter);
        multi_init = j.value("multi_init", multi_init);
        seed = j.value("seed", seed);
    }
    const nlkg::GridPtr grid = nlkg::make_grid(p.dim, gspec.rmax, gspec.npts);
    const nlkg::GroundState gs = nlkg::solve_sp(p, grid, tol, max_iter);
    const nlkg::State sw = nlkg::standing_wave(gs);
    const nlkg::FunctionalReport f = nlkg::evaluate_report(sw, p);
    const nlkg::Blowup2Report b2 = nlkg::check_blowup2(gs);

    const fs::path out = output_dir(cfg);
    nlkg::write_state_csv(out / "ground_state.csv", sw);
    json rep{{"residual", gs.residual},
             {"iterations", gs.iterations},
             {"J_omega", f.Jomega},
             {"M_omega", f.Momega},
             {"L", f.L},
             {"K_psi", f.K},
             {"blowup2_i", b2.second_deriv_E},
             {"blowup2_ii", b2.mass_combination},
             {"blowup2_iii", b2.gap},
             {"sc1_satisfied", p.sc1()},
             {"sc2_satisfied", b2.mass_combination >= 0.0}};
    if (multi_init > 0) {
        const auto runs = nlkg::multi_init_ground_states(p, grid, multi_init, seed, tol, max_iter);
        json values = json::array();
        double lo = f.Jomega, hi = f.Jomega;
        for (const auto& g : runs) {
            const double jw = nlkg::variational_suite({g.phi1, g.phi2}, p).Jomega;
            values.push_back(jw);
            lo = std::min(lo, jw);
            hi = std::max(hi, jw);
        }
        rep["multi_init"] = json{{"count", multi_init},
                                 {"seed", seed},
                                 {"J_omega_values", values},
                                 {"max_rel_spread", (hi - lo) / std::abs(f.Jomega)}};
    }
    write_json(out / "ground_state.json", rep);
    std::cout << "ground state: residual " << gs.residual << " after " << gs.iterations
              << " iterations; J_omega = " << f.Jomega << "\n"
              << "wrote " << (out / "ground_state.csv").string() << " and ground_state.json\n";
    return kExitOk;
}

int cmd_functionals(const json& cfg) {
    const nlkg::Params p = params_from(cfg);
    if (!cfg.contains("state_csv"))
        throw std::runtime_error("functionals: config needs state_csv");
    const nlkg::State s = nlkg::read_state_csv(cfg.at("state_csv").get<std::string>(), p.dim);
    const json rep = report_to_json(nlkg::evaluate_report(s, p));
    write_json(output_dir(cfg) / "functionals.json", rep);
    std::cout << rep.dump(2) << "\n";
    return kExitOk;
}

int cmd_evolve(const json& cfg, const CliOptions& opt) {
    const nlkg::Params p = params_from(cfg);
    if (!cfg.contains("state_csv"))
        throw std::runtime_error("evolve: config needs state_csv");
    nlkg::State s = nlkg::read_state_csv(cfg.at("state_csv").get<std::string>(), p.dim);
    if (opt.lambda) s = nlkg::scale_state(s, *opt.lambda);
    const nlkg::EvolveConfig ecfg = evolve_config_from(cfg);
    std::optional<double> rho;
    if (cfg.contains("rho")) rho = cfg.at("rho").get<double>();

    const nlkg::EvolveResult res = nlkg::evolve(s, p, ecfg, rho);

    double max_xnorm = 0.0, drift_E = 0.0, drift_Q = 0.0;
    if (!res.records.empty()) {
        const double E0 = res.records.front().E, Q0 = res.records.front().Q;
        for (const auto& r : res.records) {
            max_xnorm = std::max(max_xnorm, r.xnorm);
            drift_E = std::max(drift_E, std::abs(r.E - E0) / std::max(std::abs(E0), 1e-300));
            drift_Q = std::max(drift_Q, std::abs(r.Q - Q0) / std::max(std::abs(Q0), 1e-300));
        }
    }
    const fs::path out = output_dir(cfg);
    nlkg::write_trajectory_csv(out / "trajectory.csv", res.records);
    write_json(out / "summary.json", json{{"outcome", nlkg::to_string(res.outcome)},
                                          {"t_final", res.t_final},
                                          {"max_xnorm", max_xnorm},
                                          {"drift_E", drift_E},
                                          {"drift_Q", drift_Q}});
    std::cout << "evolve: " << nlkg::to_string(res.outcome) << " at t = " << res.t_final
              << " (" << res.records.size() << " records)\n";
    return res.outcome == nlkg::Outcome::numerical_failure ? kExitNumerical : kExitOk;
}

int cmd_virial_check(const json& cfg) {
    if (!cfg.contains("trajectory_csv"))
        throw std::runtime_error("virial-check: config needs trajectory_csv");
    if (!cfg.contains("rho"))
        throw std::runtime_error("virial-check: config needs rho");
    if (!cfg.contains("support_radius"))
        throw std::runtime_error("virial-check: config needs support_radius");
    nlkg::EvolveResult traj;
    traj.records = nlkg::read_trajectory_csv(cfg.at("trajectory_csv").get<std::string>());
    const double rho = cfg.at("rho").get<double>();
    const double support = cfg.at("support_radius").get<double>();
    const double tol = cfg.value("virial_tol", 1e-2);
    const nlkg::VirialCheckReport rep = nlkg::check_virial_identity(traj, support, rho, tol);
    const json j{{"max_rel_deviation", rep.max_rel_deviation},
                 {"rho", rep.rho},
                 {"support_radius", rep.support_radius},
                 {"pass", rep.pass}};
    write_json(output_dir(cfg) / "virial.json", j);
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_instability(const json& cfg) {
    nlkg::ExperimentConfig ecfg;
    ecfg.params = params_from(cfg);
    ecfg.ground_grid = grid_spec_from(cfg, "ground_grid", ecfg.ground_grid);
    ecfg.dynamics_grid = grid_spec_from(cfg, "dynamics_grid", ecfg.dynamics_grid);
    ecfg.evolve = evolve_config_from(cfg);
    if (cfg.contains("lambda_list"))
        ecfg.lambdas = cfg.at("lambda_list").get<std::vector<double>>();
    for (double lam : ecfg.lambdas)
        if (lam <= 0.0) throw std::domain_error("instability: lambda values must be positive");
    ecfg.rho = cfg.value("rho", ecfg.rho);
    if (cfg.contains("solver")) {
        ecfg.gs_tol = cfg.at("solver").value("tol", ecfg.gs_tol);
        ecfg.gs_max_iter = cfg.at("solver").value("max_iter", ecfg.gs_max_iter);
    }

    const nlkg::ExperimentReport rep = nlkg::run_instability(ecfg);

    const fs::path out = output_dir(cfg);
    json entries = json::array();
    for (const auto& e : rep.entries) {
        const std::string csv = "lambda_" + lambda_tag(e.lambda) + ".csv";
        nlkg::write_trajectory_csv(out / csv, e.trajectory.records);
        const nlkg::SetMembership& m = e.membership;
        json keyprop;  // null when the hypotheses do not hold
        if (e.key_proposition)
            keyprop = json{{"slack", e.key_proposition->slack},
                           {"pass", e.key_proposition->pass}};
        entries.push_back(json{{"lambda", e.lambda},
                               {"in_A", e.in_A},
                               {"in_B", e.in_B},
                               {"membership", json{{"in_A", m.in_A},
                                                   {"in_B", m.in_B},
                                                   {"action_slack", m.action_slack},
                                                   {"neg_P_omega", m.neg_Pomega},
                                                   {"energy_slack", m.energy_slack},
                                                   {"charge_gap", m.charge_gap},
                                                   {"neg_H", m.neg_H}}},
                               {"key_proposition", keyprop},
                               {"outcome", nlkg::to_string(e.outcome)},
                               {"t_final", e.t_final},
                               {"min_H", e.min_H},
                               {"max_H", e.max_H},
                               {"min_P_omega", e.min_P},
                               {"max_P_omega", e.max_P},
                               {"drift_E", e.drift_E},
                               {"drift_Q", e.drift_Q},
                               {"norm_dev_t10", e.norm_dev_t10},
                               {"reliable", e.reliable},
                               {"trajectory_csv", csv}});
    }
    const json j{{"sc1", rep.sc1},
                 {"sc2", rep.sc2},
                 {"blowup2", json{{"i", rep.blowup2.second_deriv_E},
                                  {"ii", rep.blowup2.mass_combination},
                                  {"iii", rep.blowup2.gap}}},
                 {"ground_state", json{{"residual", rep.gs_residual},
                                       {"iterations", rep.gs_iterations},
                                       {"J_omega", rep.J_omega},
                                       {"polish_residual", rep.polish_residual}}},
                 {"virial", json{{"lambda", rep.virial_lambda},
                                 {"max_rel_deviation", rep.virial_max_dev},
                                 {"support_radius", rep.support_radius}}},
                 {"entries", entries}};
    write_json(out / "report.json", j);
    std::cout << "instability experiment: " << rep.entries.size() << " runs";
    for (const auto& e : rep.entries)
        std::cout << "\n  lambda " << e.lambda << ": " << nlkg::to_string(e.outcome)
                  << " (t_final " << e.t_final << ", in_B " << (e.in_B ? "yes" : "no") << ")";
    std::cout << "\nwrote " << (out / "report.json").string() << "\n";
    return kExitOk;
}

int cmd_g_scan(double beta, int npts) {
    const nlkg::GScanResult res = nlkg::g_positivity_scan(beta, npts);
    std::printf("min g(s) = %.12g at s = %.6g over %d points (beta = %g): %s\n",
                res.min_value, res.argmin, npts, beta, res.all_positive ? "PASS" : "FAIL");
    return res.all_positive ? kExitOk : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coupled Klein-Gordon laboratory: ground states, conserved functionals, "
                 "time evolution and the standing-wave instability experiment"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    CliOptions opt;
    double beta = 2.0;
    int npts = 999;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* c = sub->add_option("--config", opt.config_path, "JSON config file");
        if (config_required) c->required();
        sub->add_option("--omega", [&](const CLI::results_t& v) {
            opt.omega = std::stod(v[0]); return true; }, "override params.omega");
        sub->add_option("--m1", [&](const CLI::results_t& v) {
            opt.m1 = std::stod(v[0]); return true; }, "override params.m1");
        sub->add_option("--m2", [&](const CLI::results_t& v) {
            opt.m2 = std::stod(v[0]); return true; }, "override params.m2");
        sub->add_option("--dim", [&](const CLI::results_t& v) {
            opt.dim = std::stoi(v[0]); return true; }, "override params.dim");
        sub->add_option("--lambda", [&](const CLI::results_t& v) {
            opt.lambda = std::stod(v[0]); return true; }, "override the lambda list / scale input");
        sub->add_option("--rho", [&](const CLI::results_t& v) {
            opt.rho = std::stod(v[0]); return true; }, "override the virial cutoff radius");
        sub->add_option("--out", [&](const CLI::results_t& v) {
            opt.out = v[0]; return true; }, "override output_dir");
    };

    auto* gs = app.add_subcommand("ground-state", "solve the stationary problem");
    add_common(gs, true);
    auto* fn = app.add_subcommand("functionals", "evaluate all functionals of a state CSV");
    add_common(fn, true);
    auto* ev = app.add_subcommand("evolve", "time-evolve a state CSV");
    add_common(ev, true);
    auto* inst = app.add_subcommand("instability", "run the scaled standing-wave experiment");
    add_common(inst, true);
    auto* vc = app.add_subcommand("virial-check", "check -dI_rho/dt = H on a trajectory CSV");
    add_common(vc, true);
    auto* gsc = app.add_subcommand("g-scan", "scan g(s) for positivity on (0,1)");
    gsc->add_option("--beta", beta, "exponent beta > 1")->required();
    gsc->add_option("--npts", npts, "number of sample points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (gsc->parsed()) return cmd_g_scan(beta, npts);
        const json cfg = load_config(opt);
        if (gs->parsed()) return cmd_ground_state(cfg);
        if (fn->parsed()) return cmd_functionals(cfg);
        if (ev->parsed()) return cmd_evolve(cfg, opt);
        if (inst->parsed()) return cmd_instability(cfg);
        if (vc->parsed()) return cmd_virial_check(cfg);
        return kExitValidation;
    } catch (const nlkg::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const nlkg::DegenerateIterateError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const nlkg::PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
