// Command-line front end: solve | poly | verify | figures.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "mothersolve/pipeline.hpp"

using namespace msv;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitPhase = 2;
constexpr int kExitPrecision = 3;
constexpr int kExitUsage = 64;

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    int precision = 0;
    std::string n_list;
    unsigned seed = 0;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--config", a.config_path, "configuration file (JSON)");
    cmd->add_option("--out", a.out_dir, "output directory (overrides config)");
    cmd->add_option("--precision", a.precision, "working precision in decimal digits");
    cmd->add_option("--n-list", a.n_list, "comma-separated N values (overrides config)");
    cmd->add_option("--seed", a.seed, "probe-point jitter seed");
}

RunConfig load_config(const CommonArgs& a) {
    RunConfig cfg = a.config_path.empty() ? RunConfig{} : RunConfig::from_json_file(a.config_path);
    if (!a.out_dir.empty()) cfg.out_dir = a.out_dir;
    if (a.precision > 0) cfg.precision_digits = a.precision;
    if (a.seed != 0) cfg.seed = a.seed;
    if (!a.n_list.empty()) {
        cfg.N_list.clear();
        std::stringstream ss(a.n_list);
        std::string tok;
        while (std::getline(ss, tok, ',')) cfg.N_list.push_back(std::stoi(tok));
    }
    cfg.validate();
    return cfg;
}

int run_solve(const RunConfig& cfg) {
    const Phase ph = classify_phase(ModelParams{cfg.Q0, cfg.Q1, cfg.w, 1, 1}, cfg.crit_tol);
    if (ph.tag != PhaseTag::PreCritical) {
        std::cerr << "error: " << to_string(ph.tag) << " phase (w = " << cfg.w
                  << ", w_cri = " << ph.w_cri << "); the pre-critical pipeline does not apply\n";
        return kExitPhase;
    }
    PotentialData pd = solve_geometry(cfg.Q0, cfg.Q1, cfg.w);
    write_solve_bundle(cfg, pd, cfg.out_dir);
    std::ofstream(cfg.out_dir + "/config.json", std::ios::binary) << cfg.to_json() << "\n";
    std::cout << "solve: wrote geometry bundle to " << cfg.out_dir << "\n";
    return kExitOk;
}

int run_poly(const RunConfig& cfg) {
    const Phase ph = classify_phase(ModelParams{cfg.Q0, cfg.Q1, cfg.w, 1, 1}, cfg.crit_tol);
    if (ph.tag != PhaseTag::PreCritical) {
        std::cerr << "error: " << to_string(ph.tag) << " phase\n";
        return kExitPhase;
    }
    std::filesystem::create_directories(cfg.out_dir);
    std::ofstream(cfg.out_dir + "/config.json", std::ios::binary) << cfg.to_json() << "\n";
    for (int N : cfg.N_list) {
        PolyBundle pb = solve_poly(cfg, N);
        write_poly_bundle(cfg, pb, cfg.out_dir);
        std::cout << "poly: N=" << N << " n=" << pb.sol.params.n << " digits=" << pb.sol.digits
                  << " h=" << pb.sol.h_planar.re << "\n";
    }
    return kExitOk;
}

int run_verify(const RunConfig& cfg, bool perturb) {
    const Phase ph = classify_phase(ModelParams{cfg.Q0, cfg.Q1, cfg.w, 1, 1}, cfg.crit_tol);
    if (ph.tag != PhaseTag::PreCritical) {
        std::cerr << "error: " << to_string(ph.tag) << " phase\n";
        return kExitPhase;
    }
    Report rep;
    if (perturb) {
        // deliberate corruption harness: rho scaled by 1.01 must break the
        // closed-form curve invariants
        PotentialData pd = solve_geometry(cfg.Q0, cfg.Q1, cfg.w);
        auto m = pd.curve.map;
        m.rho *= 1.01;
        const double lhs = m.b * m.rho * m.rho / m.a;
        const double rhs = (1.0 + cfg.Q1) / cfg.Q0;
        CheckRecord rec{"perturbed-curve-invariant", "b rho^2/a after rho := 1.01 rho",
                        std::abs(lhs - rhs) / rhs, 0.0, 1e-12,
                        std::abs(lhs - rhs) / rhs < 1e-12};
        rep.checks.push_back(rec);
        rep.config_echo = cfg.to_json();
    } else {
        rep = run_verification(cfg, false, cfg.out_dir);
    }
    std::filesystem::create_directories(cfg.out_dir);
    std::ofstream(cfg.out_dir + "/report.json", std::ios::binary) << rep.to_json();
    std::cout << rep.to_text();
    return rep.all_pass() ? kExitOk : kExitVerifyFailed;
}

int run_figures(const RunConfig& cfg) {
    write_figures(cfg, cfg.out_dir);
    std::cout << "figures: wrote per-w bundles to " << cfg.out_dir << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pre-critical droplet geometry, mother body and planar orthogonal polynomials"};
    app.require_subcommand(1);

    CommonArgs args;
    bool perturb = false;
    CLI::App* c_solve = app.add_subcommand("solve", "solve the spectral curve and mother body");
    CLI::App* c_poly = app.add_subcommand("poly", "compute polynomials, norms and zeros");
    CLI::App* c_verify = app.add_subcommand("verify", "run the verification suite");
    CLI::App* c_figures = app.add_subcommand("figures", "emit figure data for each w");
    for (CLI::App* c : {c_solve, c_poly, c_verify, c_figures}) add_common(c, args);
    c_verify->add_flag("--selftest-perturb", perturb,
                       "corrupt the solved parameters and require the invariants to fail");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const RunConfig cfg = load_config(args);
        if (c_solve->parsed()) return run_solve(cfg);
        if (c_poly->parsed()) return run_poly(cfg);
        if (c_verify->parsed()) return run_verify(cfg, perturb);
        if (c_figures->parsed()) return run_figures(cfg);
        return kExitUsage;
    } catch (const solver_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPhase;
    } catch (const precision_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecision;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
