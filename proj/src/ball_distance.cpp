#include "berg/ball_distance.hpp"

#include <algorithm>
#include <climits>
#include <cmath>

#include "berg/detail/pows.hpp"

namespace berg {

namespace {

using detail::inv_abs_pow;
using detail::qpow;

bool member_raw(double eos, double s, double delta, double abs_f) {
    return abs_f * std::pow(delta, s) >= eos;
}

}  // namespace

bool omega_member(const TestFunction& f, double eps, double s, cplx z) {
    if (!(std::norm(z) < 1.0))
        throw OutOfDomain("omega membership requires a point of the open disk");
    TestFunction base = f;
    base.scale = 1.0;
    return member_raw(eps / f.scale, s, 1.0 - std::norm(z),
                      std::abs(base.eval_unchecked(z)));
}

bool omega_member2(const TestFunction& f, double eps, double s,
                   const cplx2& z) {
    const double d = 1.0 - std::norm(z[0]) - std::norm(z[1]);
    if (!(d > 0.0))
        throw OutOfDomain("omega membership requires a point of the open ball");
    TestFunction base = f;
    base.scale = 1.0;
    return member_raw(eps / f.scale, s, d,
                      std::abs(base.eval2_unchecked(z)));
}

namespace {

struct InnerNode {
    cplx2 xi;   // xi[1] unused for n = 1
    double w;   // c_{n,t} delta^{t-s} dV
};

struct OuterNode {
    cplx2 z;
    double w;       // delta^{sq-n-1} dV
    double inner;   // running inner sum over the cloud built so far
};

// Arc [a, b] of the circle, 0 <= a < b <= 2 pi after normalization.
struct Arc {
    double a, b;
    double width() const { return b - a; }
};

struct CloudBuilder {
    const TestFunction base;  // unscaled copy for membership
    double eos;               // eps / scale
    const BallParams& params;
    const quad::Ladder& lad;
    const PsiOptions& opt;
    double kc;                // c_{n,t}
    std::uint64_t seed;

    CloudBuilder(TestFunction b, double e, const BallParams& p,
                 const quad::Ladder& l, const PsiOptions& o, double k,
                 std::uint64_t sd)
        : base(std::move(b)), eos(e), params(p), lad(l), opt(o), kc(k),
          seed(sd) {}

    // Appends the nodes of shell level m (delta in [b^-m, b^-(m-1)], the
    // first level reaching the center). For n = 1 the level set is resolved
    // per sub-shell as a union of theta-arcs: a uniform scan seeded with the
    // previous sub-shell's arcs (level sets that pinch toward a boundary
    // point narrow geometrically with delta, so a fixed grid would lose
    // them), edges located by bisection, and nodes laid per arc. That keeps
    // boundary-pinched level sets resolved at every depth with node counts
    // that stay bounded per shell.
    void inner_shell(int m, std::vector<InnerNode>& out) {
        if (params.n == 1)
            product_inner(m, out);
        else
            mc_shell(m, true, out);
    }
    void outer_shell(int m, std::vector<OuterNode>& out) {
        if (params.n == 1) {
            product_outer(m, out);
        } else {
            std::vector<InnerNode> tmp;
            mc_shell(m, false, tmp);
            for (const InnerNode& nd : tmp) out.push_back({nd.xi, nd.w, 0.0});
        }
    }

    // Member arcs of the most recently resolved sub-shell, used to seed the
    // scan of the next (finer) one.
    std::vector<Arc> last_arcs_;
    // Arcs per sub-shell of the level currently being expanded; filled by
    // inner_shell(m), reused by outer_shell(m).
    int cached_m_ = INT_MIN;
    std::vector<std::vector<Arc>> cached_arcs_;

    bool member1(cplx xi, double delta) const {
        return member_raw(eos, params.s, delta,
                          std::abs(base.eval_unchecked(xi)));
    }
    bool member2(const cplx2& xi, double delta) const {
        return member_raw(eos, params.s, delta,
                          std::abs(base.eval2_unchecked(xi)));
    }
    bool member_polar(double theta, double r, double delta) const {
        return member1({r * std::cos(theta), r * std::sin(theta)}, delta);
    }
    double node_weight(bool inner, double delta) const {
        return inner ? kc * std::pow(delta, params.t - params.s)
                     : std::pow(delta, params.s * params.q - params.n - 1.0);
    }

    struct SubShell {
        double v, delta, r, dv;
    };
    std::vector<SubShell> sub_shells(int m, int boost) const {
        const double v1 = double(m);
        const double v0 = m == lad.min_exp ? 0.0 : double(m - 1);
        const int nv =
            std::max(1, int(std::lround(opt.per_v * (v1 - v0)))) * boost;
        const double dv = (v1 - v0) / nv;
        std::vector<SubShell> out;
        for (int iv = 0; iv < nv; ++iv) {
            const double v = v0 + (iv + 0.5) * dv;
            const double delta = std::pow(lad.base, -v);
            out.push_back({v, delta, std::sqrt(std::max(0.0, 1.0 - delta)), dv});
        }
        return out;
    }
    int boost_of(int m) const {
        return std::pow(lad.base, -double(m)) <=
                       std::ldexp(1.0, -opt.boost_level)
                   ? 2
                   : 1;
    }

    static double wrap2pi(double t) {
        t = std::fmod(t, 2.0 * M_PI);
        return t < 0.0 ? t + 2.0 * M_PI : t;
    }

    // Bisect the membership edge between an inside and an outside angle.
    double edge(double th_in, double th_out, double r, double delta) const {
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (th_in + th_out);
            if (member_polar(mid, r, delta))
                th_in = mid;
            else
                th_out = mid;
        }
        return 0.5 * (th_in + th_out);
    }

    // Member arcs {theta : |f(r e^{i theta})| delta^s >= eps} of one
    // sub-shell. Scan angles: uniform grid plus seeds from the parent arcs.
    std::vector<Arc> member_arcs(double r, double delta) {
        std::vector<double> scan;
        const int nscan = opt.n_theta;
        scan.reserve(nscan + 8 * last_arcs_.size());
        for (int k = 0; k < nscan; ++k)
            scan.push_back(2.0 * M_PI * (k + 0.5) / nscan);
        for (const Arc& p : last_arcs_) {
            const double w = p.width();
            for (double t : {p.a - 0.5 * w, p.a, p.a + 0.25 * w,
                             0.5 * (p.a + p.b), p.b - 0.25 * w, p.b,
                             p.b + 0.5 * w})
                scan.push_back(wrap2pi(t));
        }
        std::sort(scan.begin(), scan.end());
        scan.erase(std::unique(scan.begin(), scan.end()), scan.end());

        std::vector<char> in(scan.size());
        size_t n_in = 0;
        for (size_t i = 0; i < scan.size(); ++i) {
            in[i] = member_polar(scan[i], r, delta) ? 1 : 0;
            n_in += in[i];
        }
        std::vector<Arc> arcs;
        if (n_in == 0) {
            last_arcs_ = arcs;
            return arcs;
        }
        if (n_in == scan.size()) {
            arcs.push_back({0.0, 2.0 * M_PI});
            last_arcs_ = arcs;
            return arcs;
        }
        // Walk the circle once starting from an outside sample, on an
        // unrolled (monotone) angle axis so wrap pairs stay ordered. Each
        // out->in transition opens an arc, the matching in->out closes it.
        size_t start = 0;
        while (in[start]) ++start;
        const size_t n = scan.size();
        auto pos = [&](size_t step) {
            const size_t idx = (start + step) % n;
            return scan[idx] + (start + step >= n ? 2.0 * M_PI : 0.0);
        };
        double open = -1.0;
        for (size_t step = 0; step < n; ++step) {
            const bool ci = in[(start + step) % n];
            const bool cj = in[(start + step + 1) % n];
            if (ci == cj) continue;
            const double ti = pos(step), tj = pos(step + 1);
            if (!ci)
                open = edge(tj, ti, r, delta);  // out at ti, in at tj
            else
                arcs.push_back({open, edge(ti, tj, r, delta)});
        }
        // Normalize into [0, 2 pi), splitting arcs that cross 0.
        std::vector<Arc> norm;
        for (Arc& s : arcs) {
            double a = wrap2pi(s.a);
            double b = a + s.width();
            if (b <= 2.0 * M_PI) {
                norm.push_back({a, b});
            } else {
                norm.push_back({a, 2.0 * M_PI});
                norm.push_back({0.0, b - 2.0 * M_PI});
            }
        }
        std::sort(norm.begin(), norm.end(),
                  [](const Arc& x, const Arc& y) { return x.a < y.a; });
        last_arcs_ = norm;
        return norm;
    }

    const std::vector<std::vector<Arc>>& arcs_for(int m) {
        if (cached_m_ != m) {
            cached_arcs_.clear();
            for (const SubShell& ss : sub_shells(m, boost_of(m)))
                cached_arcs_.push_back(member_arcs(ss.r, ss.delta));
            cached_m_ = m;
        }
        return cached_arcs_;
    }

    void product_inner(int m, std::vector<InnerNode>& out) {
        const double lnb = std::log(lad.base);
        const int boost = boost_of(m);
        const double dth_native = 2.0 * M_PI / (opt.n_theta * boost);
        const auto shells = sub_shells(m, boost);
        const auto& arcs = arcs_for(m);
        for (size_t iv = 0; iv < shells.size(); ++iv) {
            const SubShell& ss = shells[iv];
            const double wbase =
                node_weight(true, ss.delta) * 0.5 * lnb * ss.delta * ss.dv;
            for (const Arc& s : arcs[iv]) {
                const double w = s.width();
                const int cnt =
                    std::max(16, int(std::ceil(w / dth_native)));
                const double h = w / cnt;
                for (int j = 0; j < cnt; ++j) {
                    const double th = s.a + (j + 0.5) * h;
                    const cplx xi{ss.r * std::cos(th), ss.r * std::sin(th)};
                    if (!member1(xi, ss.delta)) continue;
                    out.push_back({{xi, cplx{}}, wbase * h});
                }
            }
        }
    }

    void product_outer(int m, std::vector<OuterNode>& out) {
        const double lnb = std::log(lad.base);
        const int boost = boost_of(m);
        const double dth_native = 2.0 * M_PI / (opt.outer_n_theta * boost);
        const auto shells = sub_shells(m, boost);
        const auto& arcs = arcs_for(m);
        for (size_t iv = 0; iv < shells.size(); ++iv) {
            const SubShell& ss = shells[iv];
            const double wbase =
                node_weight(false, ss.delta) * 0.5 * lnb * ss.delta * ss.dv;
            // Refinement windows: member arcs enlarged 3x about their
            // centers (the inner integral stays large in a neighborhood of
            // the level set), merged, complement covered at native density.
            std::vector<Arc> win;
            for (const Arc& s : arcs[iv]) {
                const double w3 = 3.0 * s.width();
                if (w3 >= 2.0 * M_PI) {
                    win.assign(1, {0.0, 2.0 * M_PI});
                    break;
                }
                double a = wrap2pi(0.5 * (s.a + s.b) - 0.5 * w3);
                double b = a + w3;
                if (b <= 2.0 * M_PI) {
                    win.push_back({a, b});
                } else {
                    win.push_back({a, 2.0 * M_PI});
                    win.push_back({0.0, b - 2.0 * M_PI});
                }
            }
            std::sort(win.begin(), win.end(),
                      [](const Arc& x, const Arc& y) { return x.a < y.a; });
            std::vector<Arc> merged;
            for (const Arc& s : win) {
                if (!merged.empty() && s.a <= merged.back().b)
                    merged.back().b = std::max(merged.back().b, s.b);
                else
                    merged.push_back(s);
            }
            auto emit = [&](double a, double b, int min_cnt) {
                const double w = b - a;
                if (!(w > 0.0)) return;
                const int cnt =
                    std::max(min_cnt, int(std::ceil(w / dth_native)));
                const double h = w / cnt;
                for (int j = 0; j < cnt; ++j) {
                    const double th = a + (j + 0.5) * h;
                    out.push_back({{cplx{ss.r * std::cos(th),
                                         ss.r * std::sin(th)},
                                    cplx{}},
                                   wbase * h, 0.0});
                }
            };
            double cursor = 0.0;
            for (const Arc& s : merged) {
                emit(cursor, s.a, 1);   // complement segment
                emit(s.a, s.b, 16);     // refined window
                cursor = s.b;
            }
            emit(cursor, 2.0 * M_PI, 1);
        }
    }

    void mc_shell(int m, bool inner, std::vector<InnerNode>& out) const {
        double a4, b4;
        ball_shell_bounds4(lad, m, a4, b4);
        const long N = inner ? opt.mc_inner_per_shell : opt.mc_outer_per_shell;
        const double vol = 0.5 * M_PI * M_PI * (b4 - a4) / double(N);
        Shell4Sampler rng(seed * 0x9e3779b97f4a7c15ULL +
                          std::uint64_t(2 * m + (inner ? 0 : 1)));
        for (long i = 0; i < N; ++i) {
            const cplx2 xi = rng.sample(a4, b4);
            const double delta = 1.0 - std::norm(xi[0]) - std::norm(xi[1]);
            if (!(delta > 0.0)) continue;
            if (inner && !member2(xi, delta)) continue;
            out.push_back({xi, node_weight(inner, delta) * vol});
        }
    }
};

double kernel_term(int n, const cplx2& z, const cplx2& xi, double ke) {
    const cplx h = n == 1 ? 1.0 - z[0] * std::conj(xi[0])
                          : 1.0 - z[0] * std::conj(xi[0]) -
                                z[1] * std::conj(xi[1]);
    return inv_abs_pow(h, ke);
}

}  // namespace

quad::LadderReport psi_functional(const TestFunction& f, double eps,
                                  const BallParams& params,
                                  const quad::Ladder& lad,
                                  const PsiOptions& opt) {
    if (!(eps > 0.0)) throw HypothesisViolation("psi requires eps > 0");
    if (f.domain != FnDomain::Ball || f.n != params.n)
        throw OutOfDomain("psi_functional needs a ball function matching params.n");
    TestFunction base = f;
    base.scale = 1.0;
    CloudBuilder cb{std::move(base), eps / f.scale, params, lad,
                    opt,            ball_norm_const(params.n, params.t),
                    opt.seed};
    const double ke = params.n + 1.0 + params.t;

    std::vector<InnerNode> inner_all;
    std::vector<OuterNode> outer;
    quad::LadderReport rep;
    for (int m = lad.min_exp; m <= lad.max_exp; ++m) {
        std::vector<InnerNode> fresh;
        cb.inner_shell(m, fresh);
        // Existing outer nodes pick up only the new inner mass...
        for (OuterNode& on : outer) {
            double s = 0.0;
            for (const InnerNode& nd : fresh)
                s += nd.w * kernel_term(params.n, on.z, nd.xi, ke);
            on.inner += s;
        }
        inner_all.insert(inner_all.end(), fresh.begin(), fresh.end());
        // ...while new outer nodes sum the whole cloud built so far.
        const size_t first_new = outer.size();
        cb.outer_shell(m, outer);
        for (size_t i = first_new; i < outer.size(); ++i) {
            double s = 0.0;
            for (const InnerNode& nd : inner_all)
                s += nd.w * kernel_term(params.n, outer[i].z, nd.xi, ke);
            outer[i].inner = s;
        }

        double psi = 0.0, comp = 0.0;
        for (const OuterNode& on : outer) {
            const double y = on.w * qpow(on.inner, params.q) - comp;
            const double t = psi + y;
            comp = (t - psi) - y;
            psi = t;
        }
        rep.values.push_back(psi);
        rep.reliable.push_back(1);
    }
    quad::finalize_report(rep, opt.classify);
    return rep;
}

DistanceEstimate estimate_omega2(const TestFunction& f,
                                 const BallParams& params,
                                 const quad::Ladder& lad,
                                 const OmegaBisectOptions& bopt,
                                 const PsiOptions& popt) {
    const SupNormResult sup = norm_inf_ball(f, params.s);
    if (sup.unbounded)
        throw UnboundedFunction(f.name() + " has unbounded grid norm in A^inf_s");

    DistanceEstimate est;
    est.domain = "ball";
    est.n = params.n;
    est.sup_norm = sup.value;
    est.policy = bopt.coerce_inconclusive_up ? "inconclusive->divergent"
                                             : "inconclusive->convergent";
    if (sup.value == 0.0) return est;

    // Compact level sets reach depth v ~ 2 log_b(1/eps) + O(1) before their
    // shell increments vanish; the smallest probes sit near eps_tol, so the
    // default 12-level ladder cannot certify them. Deepen the probe ladder
    // accordingly (the graded clouds keep the cost linear in depth).
    quad::Ladder probe_lad = lad;
    probe_lad.max_exp = std::max(probe_lad.max_exp, 18);

    auto probe = [&](double e) {
        Probe p;
        p.eps = e;
        if (params.n == 1 || bopt.mc_seeds <= 1) {
            p.report = psi_functional(f, e, params, probe_lad, popt);
            p.raw = p.report.verdict;
        } else {
            // Statistical verdict: every seeded replica must agree.
            PsiOptions po = popt;
            p.report = psi_functional(f, e, params, probe_lad, po);
            p.raw = p.report.verdict;
            for (int k = 1; k < bopt.mc_seeds; ++k) {
                po.seed = popt.seed + std::uint64_t(k);
                if (psi_functional(f, e, params, probe_lad, po).verdict !=
                    p.raw) {
                    p.raw = quad::Verdict::Inconclusive;
                    break;
                }
            }
        }
        p.effective = p.raw != quad::Verdict::Inconclusive ? p.raw
                      : bopt.coerce_inconclusive_up ? quad::Verdict::Divergent
                                                    : quad::Verdict::Convergent;
        est.probes.push_back(std::move(p));
        return est.probes.back().effective;
    };

    double lo = 0.0;
    double hi = (1.0 + bopt.margin) * sup.value;
    int expand = 0;
    while (probe(hi) != quad::Verdict::Convergent) {
        if (++expand > 3)
            throw NotConvergent("no convergent upper seed found for bisection");
        lo = hi;
        hi *= 2.0;
    }
    while (hi - lo > bopt.eps_tol * sup.value) {
        const double mid = 0.5 * (lo + hi);
        if (probe(mid) == quad::Verdict::Convergent)
            hi = mid;
        else
            lo = mid;
    }
    est.eps_lo = lo;
    est.eps_hi = hi;
    return est;
}

cplx BallDecomposition::f2(cplx z) const {
    const double ex = 2.0 + params.t;
    cplx s{0.0, 0.0};
    for (const Mass& m : masses)
        s += m.weight * detail::cpow_neg(1.0 - z * std::conj(m.xi), ex);
    return s;
}

cplx BallDecomposition::f1(cplx z) const {
    return reproduce_ball(f, z, params.t, ladder, {.tol = 1e-6}) - f2(z);
}

BallDecomposition decompose_ball(const TestFunction& f, double eps,
                                 const BallParams& params,
                                 const quad::Ladder& lad,
                                 const PsiOptions& popt) {
    if (params.n != 1)
        throw UnsupportedDimension(
            "constructive ball decomposition is implemented for n = 1");
    quad::LadderReport psi = psi_functional(f, eps, params, lad, popt);
    if (psi.verdict != quad::Verdict::Convergent)
        throw NotConvergent("Psi(eps) did not classify convergent at eps = " +
                            std::to_string(eps));

    BallDecomposition dec{f, params, lad, {}};
    TestFunction base = f;
    base.scale = 1.0;
    const double eos = eps / f.scale;
    const double c = ball_norm_const(1, params.t);
    const double lnb = std::log(lad.base);
    for (int m = lad.min_exp; m <= lad.max_exp; ++m) {
        const double v1 = double(m);
        const double v0 = m == lad.min_exp ? 0.0 : double(m - 1);
        const int boost =
            std::pow(lad.base, -v1) <= std::ldexp(1.0, -popt.boost_level) ? 2
                                                                          : 1;
        const int nth = popt.n_theta * boost;
        const int nv =
            std::max(1, int(std::lround(popt.per_v * (v1 - v0)))) * boost;
        const double dv = (v1 - v0) / nv;
        const double dth = 2.0 * M_PI / nth;
        for (int iv = 0; iv < nv; ++iv) {
            const double v = v0 + (iv + 0.5) * dv;
            const double delta = std::pow(lad.base, -v);
            const double r = std::sqrt(std::max(0.0, 1.0 - delta));
            const double dA = 0.5 * lnb * delta * dv * dth;
            for (int k = 0; k < nth; ++k) {
                const double th = (k + 0.5) * dth;
                const cplx xi{r * std::cos(th), r * std::sin(th)};
                if (!(std::abs(base.eval_unchecked(xi)) *
                          std::pow(delta, params.s) >=
                      eos))
                    continue;
                dec.masses.push_back(
                    {xi, c * f.eval_unchecked(xi) * std::pow(delta, params.t) *
                             dA});
            }
        }
    }
    return dec;
}

BallDecompositionReport check_ball_decomposition(const TestFunction& f,
                                                 double eps,
                                                 const BallParams& params,
                                                 const quad::Ladder& lad,
                                                 const PsiOptions& popt) {
    BallDecomposition dec = decompose_ball(f, eps, params, lad, popt);
    BallDecompositionReport out;
    out.eps = eps;

    // f1 sup over a polar delta-level grid; the reproducing value is the
    // expensive factor, so the grid stays modest.
    quad::Ladder grid_lad = lad;
    grid_lad.max_exp = std::min(grid_lad.max_exp, 10);
    // Depth capped at delta = 2^-6: deeper evaluation points concentrate
    // the reproducing kernel beyond what the cell budget can certify.
    const int nth = 12, nv = 13;
    for (int iv = 0; iv < nv; ++iv) {
        const double v = 6.0 * iv / (nv - 1.0);
        const double delta = std::pow(2.0, -v);
        const double r = std::sqrt(std::max(0.0, 1.0 - delta));
        for (int k = 0; k < nth; ++k) {
            const double th = 2.0 * M_PI * (k + 0.5) / nth;
            const cplx z{r * std::cos(th), r * std::sin(th)};
            const cplx rep = reproduce_ball(f, z, params.t, grid_lad,
                                            {.tol = 1e-4, .max_cells = 40000});
            const cplx f1 = rep - dec.f2(z);
            out.f1_sup_weighted =
                std::max(out.f1_sup_weighted,
                         std::abs(f1) * std::pow(delta, params.s));
        }
    }
    out.f1_ratio = out.f1_sup_weighted / eps;

    const double w = params.s * params.q - params.n - 1.0;
    auto g = [&](cplx z) {
        return qpow(std::abs(dec.f2(z)), params.q) *
               std::pow(1.0 - std::norm(z), w);
    };
    quad::Ladder norm_lad = lad;
    norm_lad.max_exp = std::min(norm_lad.max_exp, 10);
    quad::LadderReport nr =
        quad::ladder_integrate(norm_lad, quad::RegionFamily::BallShells, g,
                               {.tol = 1e-3, .max_cells = 20000}, popt.classify);
    out.f2_norm_verdict = nr.verdict;
    if (nr.verdict == quad::Verdict::Convergent)
        out.f2_norm = std::pow(nr.total(), 1.0 / params.q);

    for (double r : {0.15, 0.35, 0.55, 0.75, 0.9}) {
        for (double th : {0.7, 2.9}) {
            const cplx z{r * std::cos(th), r * std::sin(th)};
            const cplx rep = reproduce_ball(f, z, params.t, grid_lad,
                                            {.tol = 1e-6});
            const cplx fv = f.eval_unchecked(z);
            out.max_residual = std::max(
                out.max_residual, std::abs(rep - fv) / (1.0 + std::abs(fv)));
        }
    }
    return out;
}

}  // namespace berg
