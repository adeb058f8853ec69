#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "berg/ball.hpp"
#include "berg/ball_distance.hpp"
#include "berg/halfplane.hpp"
#include "berg/hp_distance.hpp"
#include "berg/report.hpp"
#include "berg/suite.hpp"
#include "berg/whitney.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace berg;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot read config: " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

struct Cli {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;

    RunConfig load(const std::string& command) const {
        RunConfig cfg;
        if (!config_path.empty()) cfg = config_from_json(slurp(config_path));
        cfg.command = command;
        if (seed_set) cfg.seed = seed;
        if (threads > 0) cfg.threads = threads;  // affects speed only
        return cfg;
    }
};

void add_common(CLI::App* cmd, Cli& cli) {
    cmd->add_option("--config", cli.config_path, "JSON configuration file");
    cmd->add_option("--out", cli.out_dir, "artifact output directory");
    cmd->add_option("--seed", cli.seed, "override the config seed")
        ->each([&cli](const std::string&) { cli.seed_set = true; });
    cmd->add_option("--threads", cli.threads,
                    "worker threads (speed only, never results)");
}

void emit(const RunConfig& cfg, const std::string& out_dir,
          const std::string& name, const std::string& bytes) {
    fs::create_directories(out_dir);
    write_file((fs::path(out_dir) / name).string(), bytes);
}

double weight_power(const RunConfig& cfg) {
    return cfg.domain == "ball" ? cfg.s : (cfg.nu + 2.0) / cfg.q;
}

json report_to_json(const quad::LadderReport& rep) {
    return json{{"verdict", quad::to_string(rep.verdict)},
                {"total", rep.total()},
                {"levels", rep.values.size()},
                {"tail_estimate", rep.tail_estimate}};
}

int cmd_norm(const Cli& cli) {
    RunConfig cfg = cli.load("norm");
    json j;
    if (cfg.domain == "ball") {
        const NormResult nr =
            norm_q_s_ball(cfg.f, cfg.q, cfg.s, cfg.ladder, cfg.quad_opt,
                          cfg.classify, {.seed = cfg.seed});
        const SupNormResult sup = norm_inf_ball(cfg.f, cfg.s);
        j["norm_q_s"] = {{"verdict", quad::to_string(nr.verdict)},
                         {"value", nr.value}};
        j["norm_inf"] = {{"value", sup.value}, {"unbounded", sup.unbounded}};
    } else {
        const NormResult nr = norm_p_alpha(cfg.f, cfg.p, cfg.alpha, cfg.ladder,
                                           cfg.quad_opt, cfg.classify);
        const SupNormResult sup = norm_inf(cfg.f, weight_power(cfg));
        j["norm_p_alpha"] = {{"verdict", quad::to_string(nr.verdict)},
                             {"value", nr.value}};
        j["norm_inf"] = {{"value", sup.value}, {"unbounded", sup.unbounded}};
    }
    j["config"] = config_hash_hex(cfg);
    j["seed"] = cfg.seed;
    const std::string text = j.dump(2) + "\n";
    emit(cfg, cli.out_dir, "norm.json", text);
    std::cout << text;
    return 0;
}

int cmd_kernel_verify(const Cli& cli) {
    RunConfig cfg = cli.load("kernel-verify");
    json rows = json::array();
    double worst = 0.0;
    if (cfg.domain == "ball") {
        for (double rr : {0.0, 0.2, 0.4, 0.6, 0.8}) {
            for (double th : {0.5, 2.4}) {
                const cplx z{rr * std::cos(th), rr * std::sin(th)};
                const cplx rep = reproduce_ball(cfg.f, z, cfg.t, cfg.ladder,
                                                cfg.quad_opt);
                const cplx fv = cfg.f.eval(z);
                const double err = std::abs(rep - fv) / (1.0 + std::abs(fv));
                worst = std::max(worst, err);
                rows.push_back({{"z_re", z.real()},
                                {"z_im", z.imag()},
                                {"residual", err}});
            }
        }
    } else {
        for (double rr : {0.25, 0.5, 1.0, 2.0, 4.0}) {
            for (double th : {M_PI / 6, M_PI / 3, 2 * M_PI / 3, 5 * M_PI / 6}) {
                const cplx z{rr * std::cos(th), rr * std::sin(th)};
                const cplx rep = reproduce(cfg.f, cfg.p, cfg.alpha, cfg.beta, z,
                                           cfg.ladder, cfg.quad_opt);
                const cplx fv = cfg.f.eval(z);
                const double err = std::abs(rep - fv) / (1.0 + std::abs(fv));
                worst = std::max(worst, err);
                rows.push_back({{"z_re", z.real()},
                                {"z_im", z.imag()},
                                {"residual", err}});
            }
        }
    }
    json j{{"rows", rows},
           {"max_residual", worst},
           {"config", config_hash_hex(cfg)},
           {"seed", cfg.seed}};
    const std::string text = j.dump(2) + "\n";
    emit(cfg, cli.out_dir, "kernel_verify.json", text);
    std::cout << text;
    return 0;
}

int cmd_whitney(const Cli& cli) {
    RunConfig cfg = cli.load("whitney");
    const double rlo = std::pow(cfg.ladder.base, -cfg.ladder.min_exp - 2);
    const double rhi = std::pow(cfg.ladder.base, cfg.ladder.min_exp + 2);
    const auto squares = squares_meeting_annulus(rlo, rhi);
    std::string csv = "# config " + config_hash_hex(cfg) + " seed " +
                      std::to_string(cfg.seed) + "\nj,k,x0,y0,side\n";
    char buf[160];
    for (const WhitneySquare& sq : squares) {
        std::snprintf(buf, sizeof buf, "%lld,%d,%.17g,%.17g,%.17g\n", sq.j,
                      sq.k, sq.x0(), sq.y0(), sq.side());
        csv += buf;
    }
    emit(cfg, cli.out_dir, "whitney_squares.csv", csv);
    const int overlap = overlap_multiplicity_annulus(rlo, rhi, 1.5);
    json j{{"squares", squares.size()},
           {"annulus", {rlo, rhi}},
           {"overlap_multiplicity", overlap},
           {"config", config_hash_hex(cfg)},
           {"seed", cfg.seed}};
    if (cfg.domain != "ball") {
        const double ratio = subharmonic_bound_ratio(cfg.f, cfg.p, cfg.alpha,
                                                     {0, 0}, 1.5);
        j["subharmonic_ratio"] = ratio;
    }
    const std::string text = j.dump(2) + "\n";
    emit(cfg, cli.out_dir, "whitney.json", text);
    std::cout << text;
    return 0;
}

int cmd_lemma3(const Cli& cli) {
    RunConfig cfg = cli.load("lemma3");
    const double lambda_exp = cfg.beta + 2.0;
    json rows = json::array();
    for (cplx w : {cplx{0, 1}, cplx{0, 2}, cplx{1, 1}, cplx{0, 0.1}, cplx{0, 4}}) {
        const double v =
            lemma3_ratio(w, cfg.alpha, lambda_exp, cfg.ladder, cfg.quad_opt);
        rows.push_back(
            {{"w_re", w.real()}, {"w_im", w.imag()}, {"ratio", v}});
    }
    json j{{"alpha", cfg.alpha},
           {"lambda_exp", lambda_exp},
           {"rows", rows},
           {"config", config_hash_hex(cfg)},
           {"seed", cfg.seed}};
    const std::string text = j.dump(2) + "\n";
    emit(cfg, cli.out_dir, "lemma3.json", text);
    std::cout << text;
    return 0;
}

int cmd_levelset(const Cli& cli) {
    RunConfig cfg = cli.load("levelset");
    const double w = weight_power(cfg);
    const Image8 img =
        render_heatmap(cfg.f, w, cfg.eps, cfg.view_x0, cfg.view_x1, cfg.view_y0,
                       cfg.view_y1, cfg.res_x, cfg.res_y);
    emit(cfg, cli.out_dir, "levelset.png", encode_png_gray(img));
    emit(cfg, cli.out_dir, "levelset.csv",
         heatmap_members_csv(cfg.f, w, cfg.eps, cfg.view_x0, cfg.view_x1,
                             cfg.view_y0, cfg.view_y1, cfg.res_x, cfg.res_y,
                             cfg));
    std::cout << "levelset artifacts written to " << cli.out_dir << "\n";
    return 0;
}

int cmd_phi(const Cli& cli) {
    RunConfig cfg = cli.load("phi");
    const HalfPlaneParams p = validate_halfplane(cfg.q, cfg.nu, cfg.beta);
    const quad::LadderReport rep =
        phi_functional(cfg.f, cfg.eps, p, cfg.ladder);
    emit(cfg, cli.out_dir, "phi.csv",
         ladder_artifact_csv(rep, cfg, cfg.ladder.min_exp));
    std::cout << report_to_json(rep).dump(2) << "\n";
    return 0;
}

int cmd_psi(const Cli& cli) {
    RunConfig cfg = cli.load("psi");
    const BallParams p = validate_ball(cfg.n, cfg.q, cfg.s, cfg.t);
    PsiOptions po;
    po.seed = cfg.seed;
    const quad::LadderReport rep =
        psi_functional(cfg.f, cfg.eps, p, cfg.ladder, po);
    emit(cfg, cli.out_dir, "psi.csv",
         ladder_artifact_csv(rep, cfg, cfg.ladder.min_exp));
    std::cout << report_to_json(rep).dump(2) << "\n";
    return 0;
}

int cmd_dist(const Cli& cli) {
    RunConfig cfg = cli.load("dist");
    DistanceEstimate est;
    if (cfg.domain == "ball") {
        const BallParams p = validate_ball(cfg.n, cfg.q, cfg.s, cfg.t);
        PsiOptions po;
        po.seed = cfg.seed;
        est = estimate_omega2(cfg.f, p, cfg.ladder, {}, po);
    } else {
        const HalfPlaneParams p = validate_halfplane(cfg.q, cfg.nu, cfg.beta);
        est = estimate_l2(cfg.f, p,
                          {.base = cfg.ladder.base,
                           .min_exp = cfg.ladder.min_exp,
                           .max_exp = std::max(cfg.ladder.max_exp, 14)});
    }
    std::vector<std::string> refs;
    for (size_t i = 0; i < est.probes.size(); ++i) {
        char name[48];
        std::snprintf(name, sizeof name, "probe_%03zu.csv", i);
        refs.push_back(name);
        emit(cfg, cli.out_dir, name,
             ladder_artifact_csv(est.probes[i].report, cfg,
                                 cfg.ladder.min_exp));
    }
    const std::string text = distance_artifact_json(est, cfg, refs);
    emit(cfg, cli.out_dir, "dist.json", text);
    std::cout << text;
    return 0;
}

int cmd_decompose(const Cli& cli) {
    RunConfig cfg = cli.load("decompose");
    std::string text;
    if (cfg.domain == "ball") {
        const BallParams p = validate_ball(cfg.n, cfg.q, cfg.s, cfg.t);
        PsiOptions po;
        po.seed = cfg.seed;
        const BallDecompositionReport rep =
            check_ball_decomposition(cfg.f, cfg.eps, p, cfg.ladder, po);
        json j{{"eps", rep.eps},
               {"f1_sup_weighted", rep.f1_sup_weighted},
               {"f1_ratio", rep.f1_ratio},
               {"f2_norm_verdict", quad::to_string(rep.f2_norm_verdict)},
               {"f2_norm", rep.f2_norm},
               {"max_residual", rep.max_residual},
               {"config", config_hash_hex(cfg)},
               {"seed", cfg.seed}};
        text = j.dump(2) + "\n";
    } else {
        const HalfPlaneParams p = validate_halfplane(cfg.q, cfg.nu, cfg.beta);
        const DecompositionReport rep =
            check_decomposition(cfg.f, cfg.eps, p, cfg.ladder);
        text = decomposition_artifact_json({rep}, cfg);
    }
    emit(cfg, cli.out_dir, "decompose.json", text);
    std::cout << text;
    return 0;
}

int cmd_fr_check(const Cli& cli) {
    RunConfig cfg = cli.load("fr-check");
    json be2rows = json::array();
    for (int m = 0; m <= 8; m += 2) {
        const cplx xi{1.0 - std::ldexp(1.0, -m), 0.0};
        const double v = be2_ratio(xi, 4.0, 1.0, {.max_exp = 14},
                                   {.tol = 1e-4, .max_cells = 200000});
        be2rows.push_back({{"xi", xi.real()}, {"ratio", v}});
    }
    json be1rows = json::array();
    for (int m = 1; m <= 6; ++m) {
        const cplx z{1.0 - std::ldexp(1.0, -m), 0.0};
        const Be1Result b =
            be1_ratio(ball_pole(1.0), 2.0, 1.0, 0.5, z, {.max_exp = 14},
                      {.tol = 1e-4, .max_cells = 200000});
        be1rows.push_back({{"z", z.real()},
                           {"ratio", b.ratio},
                           {"degenerate", b.degenerate}});
    }
    json j{{"be2", be2rows},
           {"be1", be1rows},
           {"config", config_hash_hex(cfg)},
           {"seed", cfg.seed}};
    const std::string text = j.dump(2) + "\n";
    emit(cfg, cli.out_dir, "fr_check.json", text);
    std::cout << text;
    return 0;
}

int cmd_suite(const Cli& cli) {
    RunConfig cfg = cli.load("suite");
    fs::create_directories(cli.out_dir);
    const auto results = run_acceptance(cli.out_dir, cfg.seed, cfg.threads);
    const std::string text = format_results(results);
    std::cout << text;
    write_file((fs::path(cli.out_dir) / "suite.txt").string(), text);
    for (const CriterionResult& r : results)
        if (!r.pass) return 4;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"extremal-distance machinery for weighted Bergman spaces"};
    app.require_subcommand(1);
    Cli cli;

    struct Entry {
        const char* name;
        const char* help;
        int (*fn)(const Cli&);
    };
    const Entry entries[] = {
        {"norm", "integral and sup norms with verdicts", cmd_norm},
        {"kernel-verify", "reproducing-formula residual table", cmd_kernel_verify},
        {"whitney", "square listing, overlap and subharmonic ratios", cmd_whitney},
        {"lemma3", "scale-invariant kernel integral ratios", cmd_lemma3},
        {"levelset", "membership heatmap PNG + CSV", cmd_levelset},
        {"phi", "half-plane level-set functional ladder", cmd_phi},
        {"psi", "ball level-set functional ladder", cmd_psi},
        {"dist", "distance estimate (bisection) JSON", cmd_dist},
        {"decompose", "constructive decomposition check report", cmd_decompose},
        {"fr-check", "kernel-estimate ratio tables", cmd_fr_check},
        {"suite", "full acceptance run", cmd_suite},
    };
    for (const Entry& e : entries) {
        CLI::App* sub = app.add_subcommand(e.name, e.help);
        add_common(sub, cli);
        sub->callback([&cli, &e]() {
            const int rc = e.fn(cli);
            if (rc != 0) std::exit(rc);
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const HypothesisViolation& e) {
        std::cout << json{{"error", e.what()}, {"type", "hypothesis_violation"}}
                         .dump()
                  << "\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        std::cout << json{{"error", e.what()},
                          {"type", "budget_exceeded"},
                          {"best_estimate", e.best_estimate},
                          {"cells_used", e.cells_used}}
                         .dump()
                  << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cout << json{{"error", e.what()}, {"type", "error"}}.dump() << "\n";
        return 1;
    }
    return 0;
}
