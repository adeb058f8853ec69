#include "berg/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "berg/ball.hpp"
#include "berg/ball_distance.hpp"
#include "berg/halfplane.hpp"
#include "berg/hp_distance.hpp"
#include "berg/report.hpp"
#include "berg/whitney.hpp"

namespace berg {

namespace {

struct Uniform {
    std::mt19937_64 eng;
    explicit Uniform(std::uint64_t seed) : eng(seed) {}
    double operator()() { return double(eng() >> 11) * 0x1.0p-53; }
};

std::vector<cplx> fixed_points20() {
    std::vector<cplx> pts;
    for (double r : {0.25, 0.5, 1.0, 2.0, 4.0})
        for (double th : {M_PI / 6, M_PI / 3, 2 * M_PI / 3, 5 * M_PI / 6})
            pts.push_back({r * std::cos(th), r * std::sin(th)});
    return pts;
}

// R^2 of the least-squares line through (i, y[i]) over the last `tail`
// entries.
double linear_fit_r2(const std::vector<double>& y, size_t tail) {
    if (y.size() < tail) return 0.0;
    const size_t off = y.size() - tail;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < tail; ++i) {
        sx += double(i);
        sy += y[off + i];
        sxx += double(i) * double(i);
        sxy += double(i) * y[off + i];
    }
    const double n = double(tail);
    const double b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double a = (sy - b * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double mean = sy / n;
    for (size_t i = 0; i < tail; ++i) {
        const double fit = a + b * double(i);
        ss_res += (y[off + i] - fit) * (y[off + i] - fit);
        ss_tot += (y[off + i] - mean) * (y[off + i] - mean);
    }
    if (ss_tot == 0.0) return 0.0;
    return 1.0 - ss_res / ss_tot;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::string& out_dir,
                                            std::uint64_t seed, int threads) {
    std::vector<CriterionResult> results;
    const HalfPlaneParams hp = validate_halfplane(2.0, 0.0, 1.0);
    const BallParams bp = validate_ball(1, 2.0, 1.0, 2.0);

    // Estimates shared between criteria.
    std::optional<DistanceEstimate> l2_ps2, om_bp05;

    auto run = [&](int id, const std::string& name, auto&& body) {
        CriterionResult r;
        r.id = id;
        r.name = name;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            body(r);
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        results.push_back(std::move(r));
    };

    run(1, "reproducing-formula", [&](CriterionResult& r) {
        const TestFunction f = power_shift(2.0);
        double worst = 0.0;
        for (cplx z : fixed_points20()) {
            const cplx rep = reproduce(f, 2.0, 0.0, 1.0, z);
            const cplx fv = f.eval(z);
            worst = std::max(worst, std::abs(rep - fv) / std::abs(fv));
        }
        r.pass = worst <= 1e-3;
        r.detail = fmt("max rel err %.3g (tol 1e-3, 20 points)", worst);
    });

    run(2, "scale-invariant-integral", [&](CriterionResult& r) {
        const cplx ws[4] = {{0, 1}, {0, 2}, {1, 1}, {0, 0.1}};
        double lo = 1e300, hi = 0.0, worst = 0.0;
        for (cplx w : ws) {
            const double v = lemma3_ratio(w, 0.0, 4.0);
            worst = std::max(worst, std::abs(v - M_PI / 4));
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const double spread = (hi - lo) / (0.5 * (hi + lo));
        r.pass = worst <= 1e-3 && spread <= 0.005;
        r.detail = fmt("max |ratio - pi/4| %.3g, spread %.3g%%", worst,
                       100.0 * spread);
    });

    run(3, "whitney-overlap", [&](CriterionResult& r) {
        Uniform u(seed);
        int max_overlap = 0;
        for (int i = 0; i < 100000; ++i) {
            const double x = (2.0 * u() - 1.0) * 1024.0;
            const double y = std::exp2(20.0 * u() - 10.0);
            max_overlap = std::max(max_overlap, overlap_count_at({x, y}, 1.5));
        }
        long violations = 0;
        for (int i = 0; i < 10000; ++i) {
            const double x = (2.0 * u() - 1.0) * 1024.0;
            const double y = std::exp2(20.0 * u() - 10.0);
            const cplx z{x, y};
            const WhitneySquare sq = square_of(z);
            if (!sq.contains(z)) {
                ++violations;
                continue;
            }
            // Uniqueness: no neighboring square may also contain z.
            int hits = 0;
            for (int dk = -1; dk <= 1; ++dk)
                for (long long dj = -1; dj <= 1; ++dj)
                    if (WhitneySquare{sq.j + dj, sq.k + dk}.contains(z)) ++hits;
            if (hits != 1) ++violations;
        }
        r.pass = max_overlap <= 9 && violations == 0;
        r.detail = fmt("max overlap %d (limit 9), partition violations %ld",
                       max_overlap, violations);
    });

    run(4, "norm-oracle", [&](CriterionResult& r) {
        const NormResult a = norm_p_alpha(power_shift(2.0), 2.0, 0.0);
        const double target = std::sqrt(M_PI) / 2.0;
        const NormResult b = norm_p_alpha(pure_power(1.0), 2.0, 0.0);
        r.pass = a.verdict == quad::Verdict::Convergent &&
                 std::abs(a.value - target) <= 1e-3 &&
                 b.verdict == quad::Verdict::Divergent;
        r.detail = fmt("||power_shift(2)|| = %.6f (sqrt(pi)/2 = %.6f), "
                       "pure_power(1) verdict %s",
                       a.value, target, quad::to_string(b.verdict).c_str());
    });

    run(5, "distance-homogeneous", [&](CriterionResult& r) {
        const DistanceEstimate est = estimate_l2(pure_power(1.0), hp);
        const quad::LadderReport phi =
            phi_functional(pure_power(1.0), 0.5, hp, {.max_exp = 14});
        const double r2 = linear_fit_r2(phi.values, 5);
        r.pass = est.eps_lo >= 0.85 && est.eps_hi <= 1.05 && r2 >= 0.99;
        r.detail = fmt("bracket [%.4f, %.4f] (target within [0.85, 1.05]), "
                       "phi(0.5) linear fit R^2 = %.5f",
                       est.eps_lo, est.eps_hi, r2);
    });

    run(6, "distance-membership", [&](CriterionResult& r) {
        l2_ps2 = estimate_l2(power_shift(2.0), hp);
        r.pass = l2_ps2->eps_lo == 0.0 &&
                 l2_ps2->eps_hi <= 0.1 * l2_ps2->sup_norm;
        r.detail = fmt("bracket [%.4f, %.4f], norm_inf %.4f",
                       l2_ps2->eps_lo, l2_ps2->eps_hi, l2_ps2->sup_norm);
    });

    run(7, "scaling-equivariance", [&](CriterionResult& r) {
        if (!l2_ps2) l2_ps2 = estimate_l2(power_shift(2.0), hp);
        om_bp05 = estimate_omega2(ball_pole(0.5), bp);
        const double tol = std::ldexp(1.0, -7);
        double worst = 0.0;
        for (double lam : {0.5, 2.0, 5.0}) {
            const DistanceEstimate a =
                estimate_l2(power_shift(2.0, lam), hp);
            worst = std::max(worst,
                             std::abs(a.eps_hi - lam * l2_ps2->eps_hi) /
                                 (lam * std::max(l2_ps2->sup_norm, 1e-300)));
            worst = std::max(worst,
                             std::abs(a.eps_lo - lam * l2_ps2->eps_lo) /
                                 (lam * std::max(l2_ps2->sup_norm, 1e-300)));
            const DistanceEstimate b =
                estimate_omega2(ball_pole(0.5, 1, lam), bp);
            worst = std::max(worst,
                             std::abs(b.eps_hi - lam * om_bp05->eps_hi) /
                                 (lam * std::max(om_bp05->sup_norm, 1e-300)));
            worst = std::max(worst,
                             std::abs(b.eps_lo - lam * om_bp05->eps_lo) /
                                 (lam * std::max(om_bp05->sup_norm, 1e-300)));
        }
        r.pass = worst <= tol;
        r.detail = fmt("max bracket deviation %.3g (tol 2^-7 = %.3g)", worst,
                       tol);
    });

    run(8, "decomposition", [&](CriterionResult& r) {
        const std::vector<double> eps_list{0.03, 0.06, 0.12, 0.24};
        const auto reports =
            decomposition_sweep(power_shift(2.0), eps_list, hp);
        double worst_res = 0.0, ratio_lo = 1e300, ratio_hi = 0.0;
        bool norms_ok = true;
        for (const DecompositionReport& rep : reports) {
            worst_res = std::max(worst_res, rep.max_residual);
            ratio_lo = std::min(ratio_lo, rep.f1_ratio);
            ratio_hi = std::max(ratio_hi, rep.f1_ratio);
            norms_ok =
                norms_ok && rep.f2_norm_verdict == quad::Verdict::Convergent;
        }
        const double spread = ratio_lo > 0.0 ? ratio_hi / ratio_lo : 1e300;
        r.pass = worst_res <= 2e-3 && spread <= 10.0 && norms_ok;
        r.detail = fmt("max residual %.3g (tol 2e-3), f1 ratio spread x%.2f "
                       "(limit x10), f2 norms %s",
                       worst_res, spread, norms_ok ? "convergent" : "FAILED");
    });

    run(9, "ball-reproduction", [&](CriterionResult& r) {
        Uniform u(seed + 9);
        double worst1 = 0.0;
        const TestFunction fns1[] = {constant(1.0, FnDomain::Ball, 1),
                                     monomial(1, 0, 1), monomial(2, 0, 1)};
        for (const TestFunction& f : fns1) {
            for (int i = 0; i < 10; ++i) {
                const double rr = 0.8 * std::sqrt(u());
                const double th = 2.0 * M_PI * u();
                const cplx z{rr * std::cos(th), rr * std::sin(th)};
                const cplx rep = reproduce_ball(f, z, 2.0);
                worst1 = std::max(worst1, std::abs(rep - f.eval(z)));
            }
        }
        double worst2 = 0.0;
        const TestFunction fns2[] = {constant(1.0, FnDomain::Ball, 2),
                                     monomial(1, 0, 2), monomial(0, 1, 2),
                                     monomial(1, 1, 2), monomial(2, 0, 2)};
        std::vector<cplx2> pts2;
        for (int i = 0; i < 10; ++i) {
            // Radius <= 0.45 keeps the kernel moderate for the Monte Carlo
            // estimate.
            double g[4];
            for (double& gi : g) {
                const double a = u(), b = u();
                gi = std::sqrt(-2.0 * std::log(std::max(a, 1e-12))) *
                     std::cos(2.0 * M_PI * b);
            }
            const double nrm = std::sqrt(g[0] * g[0] + g[1] * g[1] +
                                         g[2] * g[2] + g[3] * g[3]);
            const double rr = 0.45 * std::pow(u(), 0.25) / std::max(nrm, 1e-12);
            pts2.push_back({cplx{g[0] * rr, g[1] * rr},
                            cplx{g[2] * rr, g[3] * rr}});
        }
        for (const TestFunction& f : fns2) {
            for (const cplx2& z : pts2) {
                for (int sd = 0; sd < 3; ++sd) {
                    McOptions mc;
                    mc.seed = seed + 100 + std::uint64_t(sd);
                    const cplx rep = reproduce_ball2(f, z, 2.0, {}, mc);
                    worst2 = std::max(worst2, std::abs(rep - f.eval2(z)));
                }
            }
        }
        r.pass = worst1 <= 1e-3 && worst2 <= 1e-2;
        r.detail = fmt("n=1 max err %.3g (tol 1e-3), n=2 max err %.3g "
                       "(tol 1e-2, 3 seeds)",
                       worst1, worst2);
    });

    run(10, "forelli-rudin", [&](CriterionResult& r) {
        const quad::Options opt{.tol = 1e-4, .max_cells = 200000};
        const double at0 = be2_ratio({0.0, 0.0}, 4.0, 1.0, {}, opt);
        double lo = 1e300, hi = 0.0;
        for (int m = 5; m <= 8; ++m) {
            const double v = be2_ratio({1.0 - std::ldexp(1.0, -m), 0.0}, 4.0,
                                       1.0, {.max_exp = 14}, opt);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        r.pass = std::abs(at0 - M_PI) <= 1e-3 && hi / lo <= 2.0;
        r.detail = fmt("ratio at 0 = %.6f (pi = %.6f), plateau max/min %.3f "
                       "(limit 2)",
                       at0, M_PI, hi / lo);
    });

    run(11, "kernel-weight-inequality", [&](CriterionResult& r) {
        std::vector<double> vals;
        for (int m = 1; m <= 8; ++m) {
            const cplx z{1.0 - std::ldexp(1.0, -m), 0.0};
            const Be1Result b = be1_ratio(ball_pole(1.0), 2.0, 1.0, 0.5, z,
                                          {.max_exp = 14},
                                          {.tol = 1e-4, .max_cells = 200000});
            if (b.degenerate || !std::isfinite(b.ratio)) {
                r.pass = false;
                r.detail = "degenerate or non-finite ratio";
                return;
            }
            vals.push_back(b.ratio);
        }
        double mean = 0.0;
        for (double v : vals) mean += v;
        mean /= double(vals.size());
        bool ok = true;
        for (double v : vals) ok = ok && v >= 0.7 * mean && v <= 1.3 * mean;
        r.pass = ok;
        r.detail = fmt("radial ratios within [%.3f, %.3f], mean %.3f "
                       "(band +/-30%%)",
                       *std::min_element(vals.begin(), vals.end()),
                       *std::max_element(vals.begin(), vals.end()), mean);
    });

    run(12, "ball-distance", [&](CriterionResult& r) {
        if (!om_bp05) om_bp05 = estimate_omega2(ball_pole(0.5), bp);
        const DistanceEstimate far = estimate_omega2(ball_pole(1.0), bp);
        r.pass = om_bp05->eps_lo == 0.0 && far.eps_lo >= 0.2;
        r.detail = fmt("ball_pole(0.5) bracket [%.4f, %.4f]; ball_pole(1) "
                       "eps_lo %.4f (needs >= 0.2)",
                       om_bp05->eps_lo, om_bp05->eps_hi, far.eps_lo);
    });

    run(13, "determinism", [&](CriterionResult& r) {
        namespace fs = std::filesystem;
        const fs::path base =
            out_dir.empty() ? fs::temp_directory_path() / "berg-determinism"
                            : fs::path(out_dir) / "determinism";
        // Two runs with the same seed but different thread settings must
        // produce byte-identical artifacts.
        auto produce = [&](const fs::path& dir, int nthreads) {
            fs::create_directories(dir);
            RunConfig cfg;
            cfg.seed = seed;
            cfg.threads = nthreads;

            cfg.command = "phi";
            cfg.f = power_shift(2.0);
            cfg.eps = 0.5;
            const quad::LadderReport phi =
                phi_functional(cfg.f, cfg.eps, hp, cfg.ladder);
            write_file((dir / "phi.csv").string(),
                       ladder_artifact_csv(phi, cfg, cfg.ladder.min_exp));

            cfg.command = "psi";
            cfg.domain = "ball";
            cfg.f = ball_pole(0.5);
            PsiOptions po;
            po.seed = seed;
            const quad::LadderReport psi =
                psi_functional(cfg.f, cfg.eps, bp, cfg.ladder, po);
            write_file((dir / "psi.csv").string(),
                       ladder_artifact_csv(psi, cfg, cfg.ladder.min_exp));

            cfg.command = "levelset";
            cfg.domain = "halfplane";
            cfg.f = pure_power(1.0);
            cfg.view_x0 = -2.0;
            cfg.view_x1 = 2.0;
            cfg.view_y0 = 0.0625;
            cfg.view_y1 = 2.0;
            cfg.res_x = 128;
            cfg.res_y = 64;
            const Image8 img =
                render_heatmap(cfg.f, 1.0, 0.5, cfg.view_x0, cfg.view_x1,
                               cfg.view_y0, cfg.view_y1, cfg.res_x, cfg.res_y);
            write_file((dir / "levelset.png").string(), encode_png_gray(img));
            write_file((dir / "levelset.csv").string(),
                       heatmap_members_csv(cfg.f, 1.0, 0.5, cfg.view_x0,
                                           cfg.view_x1, cfg.view_y0,
                                           cfg.view_y1, cfg.res_x, cfg.res_y,
                                           cfg));

            // A Monte Carlo value exercises the seeded n=2 path.
            McOptions mc;
            mc.seed = seed;
            const cplx v =
                reproduce_ball2(monomial(1, 0, 2), {cplx{0.3, 0.1}, cplx{0.2, 0.0}},
                                2.0, {}, mc);
            char buf[96];
            std::snprintf(buf, sizeof buf, "{\"re\": %.17g, \"im\": %.17g}\n",
                          v.real(), v.imag());
            write_file((dir / "mc.json").string(), buf);
        };
        produce(base / "run1", threads);
        produce(base / "run2", threads == 1 ? 4 : 1);

        auto slurp = [](const fs::path& p) {
            std::ifstream is(p, std::ios::binary);
            std::stringstream ss;
            ss << is.rdbuf();
            return ss.str();
        };
        bool same = true;
        for (const char* f :
             {"phi.csv", "psi.csv", "levelset.png", "levelset.csv", "mc.json"})
            same = same && slurp(base / "run1" / f) == slurp(base / "run2" / f);
        r.pass = same;
        r.detail = same ? "all artifacts byte-identical across thread settings"
                        : "artifact mismatch between runs";
    });

    return results;
}

std::string format_results(const std::vector<CriterionResult>& results) {
    std::string out;
    for (const CriterionResult& r : results) {
        char buf[640];
        std::snprintf(buf, sizeof buf, "%s %2d %-26s (%.1fs) %s\n",
                      r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                      r.seconds, r.detail.c_str());
        out += buf;
    }
    return out;
}

}  // namespace berg
