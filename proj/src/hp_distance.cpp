#include "berg/hp_distance.hpp"

#include <algorithm>
#include <cmath>

#include "berg/detail/pows.hpp"

namespace berg {

namespace {

using detail::inv_abs_pow;
using detail::qpow;

// Membership without the domain check, for generated in-domain samples.
bool member_raw(const TestFunction& base, double eps_over_scale, double t,
                cplx z) {
    return std::abs(base.eval_unchecked(z)) * std::pow(z.imag(), t) >=
           eps_over_scale;
}

void radius_range(const WhitneySquare& sq, double& dmin, double& dmax) {
    const double x0 = sq.x0(), x1 = sq.x1(), y0 = sq.y0(), y1 = sq.y1();
    double dx = 0.0;
    if (x0 > 0.0) dx = x0;
    else if (x1 < 0.0) dx = -x1;
    dmin = std::hypot(dx, y0);
    dmax = std::hypot(std::max(std::abs(x0), std::abs(x1)), y1);
}

int count_members(const TestFunction& base, double eos, double t,
                  const WhitneySquare& sq, double rlo, double rhi, int n) {
    const double side = sq.side();
    int cnt = 0;
    for (int i = 0; i < n; ++i) {
        const double x = sq.x0() + side * (i + 0.5) / n;
        for (int jj = 0; jj < n; ++jj) {
            const double y = sq.y0() + side * (jj + 0.5) / n;
            const double r2 = x * x + y * y;
            if (r2 < rlo * rlo || r2 > rhi * rhi) continue;
            if (member_raw(base, eos, t, {x, y})) ++cnt;
        }
    }
    return cnt;
}

int floor_log2(double x) {
    int e;
    std::frexp(x, &e);
    return e - 1;
}

}  // namespace

bool levelset_member(const TestFunction& f, double eps, double t, cplx z) {
    if (!(z.imag() > 0.0))
        throw OutOfDomain("level-set membership requires Im z > 0");
    TestFunction base = f;
    base.scale = 1.0;
    return member_raw(base, eps / f.scale, t, z);
}

std::vector<ActiveSquare> active_squares(const TestFunction& f, double eps,
                                         double t, double rlo, double rhi,
                                         const LevelSetSampling& samp) {
    std::vector<ActiveSquare> out;
    if (!(rhi > rlo) || !(rlo > 0.0) || !(eps > 0.0)) return out;
    TestFunction base = f;
    base.scale = 1.0;
    const double eos = eps / f.scale;

    const int kmax = floor_log2(rhi);
    const int khard = floor_log2(rlo) - 48;
    const int n1 = samp.subgrid, n2 = samp.refine;

    bool seen_nonempty = false;
    int empty_run = 0;
    for (int k = kmax; k >= khard; --k) {
        const double side = std::ldexp(1.0, k);
        bool level_found = false;

        auto scan_dir = [&](long long jstart, int dir) {
            int misses = 0;
            long long j = jstart;
            while (true) {
                WhitneySquare sq{j, k};
                double dmin, dmax;
                radius_range(sq, dmin, dmax);
                if (dmin > rhi) break;  // |x| only grows in this direction
                if (dmax < rlo) {
                    // Inside the annulus hole: jump to its rim.
                    const double y1 = sq.y1();
                    const double xr =
                        std::sqrt(std::max(0.0, rlo * rlo - y1 * y1));
                    long long jn = static_cast<long long>(std::floor(xr / side));
                    if (dir > 0) {
                        jn = std::max(jn - 1, j + 1);
                    } else {
                        jn = std::min(-jn, j - 1);
                    }
                    j = jn;
                    continue;
                }
                const int c8 = count_members(base, eos, t, sq, rlo, rhi, n1);
                if (c8 == 0) {
                    if (++misses >= samp.miss_run) break;
                    j += dir;
                    continue;
                }
                misses = 0;
                level_found = true;
                if (c8 == n1 * n1 && dmin >= rlo && dmax <= rhi) {
                    out.push_back({sq, sq.area(), false});
                } else {
                    const int c = count_members(base, eos, t, sq, rlo, rhi, n2);
                    if (c > 0)
                        out.push_back(
                            {sq, sq.area() * double(c) / double(n2 * n2), true});
                }
                j += dir;
            }
        };
        scan_dir(0, +1);
        scan_dir(-1, -1);

        if (level_found) {
            seen_nonempty = true;
            empty_run = 0;
        } else if (seen_nonempty) {
            if (++empty_run >= samp.empty_levels) break;
        }
    }
    std::sort(out.begin(), out.end(),
              [](const ActiveSquare& a, const ActiveSquare& b) {
                  if (a.sq.k != b.sq.k) return a.sq.k < b.sq.k;
                  return a.sq.j < b.sq.j;
              });
    return out;
}

namespace {

// Point-mass discretization of the inner integral: one mass per active
// square at the center, weight (Im w_k)^{beta-t} * area.
struct MassSet {
    std::vector<cplx> poles;  // conj(center)
    std::vector<double> weights;

    bool same_as(const MassSet& o) const {
        return poles == o.poles && weights == o.weights;
    }
};

MassSet build_masses(const TestFunction& f, double eps,
                     const HalfPlaneParams& p, double rlo, double rhi,
                     const LevelSetSampling& samp) {
    MassSet ms;
    for (const ActiveSquare& a : active_squares(f, eps, p.t, rlo, rhi, samp)) {
        const cplx c = a.sq.center();
        ms.poles.push_back(std::conj(c));
        ms.weights.push_back(std::pow(c.imag(), p.beta - p.t) * a.area);
    }
    return ms;
}

double inner_sum(const MassSet& ms, cplx z, double ex) {
    double s = 0.0;
    const size_t n = ms.poles.size();
    for (size_t i = 0; i < n; ++i)
        s += ms.weights[i] * inv_abs_pow(ms.poles[i] - z, ex);
    return s;
}

// Outer integral of h(z) (Im z)^nu over the sector slab u in [u0, u1]
// (u = ln r), adaptive in (theta, u).
double outer_piece(const std::function<double(cplx)>& h, double nu, double u0,
                   double u1, const quad::Options& opt, bool& ok) {
    auto F = [&](double theta, double u) {
        const double r = std::exp(u);
        const cplx z{r * std::cos(theta), r * std::sin(theta)};
        return h(z) * std::pow(z.imag(), nu) * (r * r);
    };
    quad::Result res = quad::integrate_rect(F, 0.0, M_PI, u0, u1, opt);
    ok = ok && !res.budget_exceeded;
    return res.value;
}

}  // namespace

quad::LadderReport phi_functional(const TestFunction& f, double eps,
                                  const HalfPlaneParams& params,
                                  const quad::Ladder& lad,
                                  const PhiOptions& opt) {
    if (!(eps > 0.0)) throw HypothesisViolation("phi requires eps > 0");
    const double lnb = std::log(lad.base);
    const double ex = params.beta + 2.0;
    const double q = params.q, nu = params.nu;

    quad::LadderReport rep;
    MassSet prev;
    double acc = 0.0;
    bool ok_all = true;
    for (int m = lad.min_exp; m <= lad.max_exp; ++m) {
        const double rlo = std::pow(lad.base, -m);
        const double rhi = std::pow(lad.base, m);
        MassSet cur = build_masses(f, eps, params, rlo, rhi, opt.sampling);

        bool ok = true;
        double d = 0.0;
        auto h_cur = [&](cplx z) { return qpow(inner_sum(cur, z, ex), q); };
        if (m == lad.min_exp) {
            d += outer_piece(h_cur, nu, -m * lnb, m * lnb, opt.outer, ok);
        } else {
            d += outer_piece(h_cur, nu, -m * lnb, -(m - 1) * lnb, opt.outer, ok);
            d += outer_piece(h_cur, nu, (m - 1) * lnb, m * lnb, opt.outer, ok);
            if (!cur.same_as(prev)) {
                // Growth of the inner sum over the previous outer region;
                // nonnegative pointwise because level-set areas only grow.
                auto h_diff = [&](cplx z) {
                    const double a = qpow(inner_sum(cur, z, ex), q);
                    const double b = qpow(inner_sum(prev, z, ex), q);
                    return std::max(0.0, a - b);
                };
                d += outer_piece(h_diff, nu, -(m - 1) * lnb, (m - 1) * lnb,
                                 opt.outer, ok);
            }
        }
        ok_all = ok_all && ok;
        acc += std::max(0.0, d);
        rep.values.push_back(acc);
        rep.reliable.push_back(ok_all ? 1 : 0);
        prev = std::move(cur);
    }
    quad::finalize_report(rep, opt.classify);
    return rep;
}

DistanceEstimate estimate_l2(const TestFunction& f,
                             const HalfPlaneParams& params,
                             const quad::Ladder& lad, const BisectOptions& bopt,
                             const PhiOptions& popt) {
    const SupNormResult sup = norm_inf(f, params.t);
    if (sup.unbounded)
        throw UnboundedFunction(f.name() + " has unbounded grid norm in A^inf_t");

    DistanceEstimate est;
    est.domain = "halfplane";
    est.sup_norm = sup.value;
    est.policy = bopt.coerce_inconclusive_up ? "inconclusive->divergent"
                                             : "inconclusive->convergent";
    if (sup.value == 0.0) return est;

    auto probe = [&](double e) {
        Probe p;
        p.eps = e;
        p.report = phi_functional(f, e, params, lad, popt);
        p.raw = p.report.verdict;
        if (p.raw == quad::Verdict::Inconclusive)
            p.effective = bopt.coerce_inconclusive_up ? quad::Verdict::Divergent
                                                      : quad::Verdict::Convergent;
        else
            p.effective = p.raw;
        est.probes.push_back(std::move(p));
        return est.probes.back().effective;
    };

    double lo = 0.0;
    double hi = (1.0 + bopt.margin) * sup.value;
    // The grid norm is a lower bound of the sup; expand until the top probe
    // converges so the bracket invariant holds.
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

cplx HalfPlaneDecomposition::f2(cplx z) const {
    cplx s{0.0, 0.0};
    for (const Mass& m : masses)
        s += m.weight * rep_kernel_pow(m.pole - z, params.beta);
    return s;
}

cplx HalfPlaneDecomposition::f1(cplx z) const {
    cplx rep;
    if (auto member = in_bergman_halfplane(f, params.q, params.nu);
        member && *member) {
        rep = reproduce(f, params.q, params.nu, params.beta, z, ladder,
                        {.tol = 1e-6});
    } else {
        // Growth-space route: representation with beta > t.
        if (!(params.beta > params.t))
            throw HypothesisViolation(
                "growth-space representation needs beta > t");
        const double c = (params.beta + 1.0) / M_PI;
        auto g = [&](cplx w) -> cplx {
            return c * f.eval_unchecked(w) * std::pow(w.imag(), params.beta) *
                   rep_kernel_pow(std::conj(w) - z, params.beta);
        };
        auto r = quad::ladder_integrate_c(
            ladder, quad::RegionFamily::HalfPlaneSectors, g, {.tol = 1e-6}, {});
        if (r.magnitudes.verdict != quad::Verdict::Convergent)
            throw NotReproducible("growth-space representation ladder not convergent");
        rep = r.value;
    }
    return rep - f2(z);
}

HalfPlaneDecomposition decompose(const TestFunction& f, double eps,
                                 const HalfPlaneParams& params,
                                 const quad::Ladder& lad,
                                 const PhiOptions& popt) {
    quad::LadderReport phi = phi_functional(f, eps, params, lad, popt);
    if (phi.verdict != quad::Verdict::Convergent)
        throw NotConvergent("Phi(eps) did not classify convergent at eps = " +
                            std::to_string(eps));

    HalfPlaneDecomposition dec{f, params, lad, {}};
    const double rlo = std::pow(lad.base, -lad.max_exp);
    const double rhi = std::pow(lad.base, lad.max_exp);
    const double c = (params.beta + 1.0) / M_PI;
    TestFunction base = f;  // keep the scale: masses carry true f values
    const double eos = eps / f.scale;
    TestFunction unscaled = f;
    unscaled.scale = 1.0;

    for (const ActiveSquare& a :
         active_squares(f, eps, params.t, rlo, rhi, popt.sampling)) {
        const double side = a.sq.side();
        if (!a.straddle) {
            // 2x2 Gauss nodes, exact for cubics on the full square.
            const double off = 0.5 * side / std::sqrt(3.0);
            const cplx ctr = a.sq.center();
            for (int sx : {-1, 1}) {
                for (int sy : {-1, 1}) {
                    const cplx w{ctr.real() + sx * off, ctr.imag() + sy * off};
                    dec.masses.push_back(
                        {std::conj(w), c * base.eval_unchecked(w) *
                                           std::pow(w.imag(), params.beta) *
                                           (a.sq.area() / 4.0)});
                }
            }
        } else {
            const int n = popt.sampling.subgrid;
            const double da = a.sq.area() / double(n * n);
            for (int i = 0; i < n; ++i) {
                for (int jj = 0; jj < n; ++jj) {
                    const cplx w{a.sq.x0() + side * (i + 0.5) / n,
                                 a.sq.y0() + side * (jj + 0.5) / n};
                    const double r = std::abs(w);
                    if (r < rlo || r > rhi) continue;
                    if (!member_raw(unscaled, eos, params.t, w)) continue;
                    dec.masses.push_back(
                        {std::conj(w), c * base.eval_unchecked(w) *
                                           std::pow(w.imag(), params.beta) * da});
                }
            }
        }
    }
    return dec;
}

namespace {

std::vector<cplx> report_grid() {
    std::vector<cplx> g;
    const int ntheta = 24, nu = 33;
    for (int i = 0; i < ntheta; ++i) {
        const double theta = M_PI * (i + 0.5) / ntheta;
        for (int jj = 0; jj < nu; ++jj) {
            const double u = -6.0 + 12.0 * jj / (nu - 1.0);
            const double r = std::pow(2.0, u);
            g.push_back({r * std::cos(theta), r * std::sin(theta)});
        }
    }
    return g;
}

std::vector<cplx> residual_points() {
    std::vector<cplx> pts;
    for (double r : {0.25, 0.5, 1.0, 2.0, 4.0})
        for (double theta : {M_PI / 6, M_PI / 3, 2 * M_PI / 3, 5 * M_PI / 6})
            pts.push_back({r * std::cos(theta), r * std::sin(theta)});
    return pts;
}

cplx reproduce_any(const TestFunction& f, const HalfPlaneParams& params,
                   cplx z, const quad::Ladder& lad, const quad::Options& opt) {
    if (auto member = in_bergman_halfplane(f, params.q, params.nu);
        member && *member)
        return reproduce(f, params.q, params.nu, params.beta, z, lad, opt);
    if (!(params.beta > params.t))
        throw HypothesisViolation("growth-space representation needs beta > t");
    const double c = (params.beta + 1.0) / M_PI;
    auto g = [&](cplx w) -> cplx {
        return c * f.eval_unchecked(w) * std::pow(w.imag(), params.beta) *
               detail::cpow_neg(std::conj(w) - z, params.beta + 2.0);
    };
    auto r = quad::ladder_integrate_c(lad, quad::RegionFamily::HalfPlaneSectors,
                                      g, opt, {});
    if (r.magnitudes.verdict != quad::Verdict::Convergent)
        throw NotReproducible("representation ladder not convergent");
    return r.value;
}

DecompositionReport check_one(const TestFunction& f, double eps,
                              const HalfPlaneParams& params,
                              const quad::Ladder& lad, const PhiOptions& popt,
                              const std::vector<cplx>& grid,
                              const std::vector<cplx>& rep_on_grid) {
    HalfPlaneDecomposition dec = decompose(f, eps, params, lad, popt);

    DecompositionReport out;
    out.eps = eps;
    for (size_t i = 0; i < grid.size(); ++i) {
        const cplx f1 = rep_on_grid[i] - dec.f2(grid[i]);
        out.f1_sup_weighted =
            std::max(out.f1_sup_weighted,
                     std::abs(f1) * std::pow(grid[i].imag(), params.t));
    }
    out.f1_ratio = out.f1_sup_weighted / eps;

    quad::Ladder norm_lad = lad;
    norm_lad.max_exp = std::min(norm_lad.max_exp, 10);
    auto g = [&](cplx z) {
        return qpow(std::abs(dec.f2(z)), params.q) *
               std::pow(z.imag(), params.nu);
    };
    quad::LadderReport nr = quad::ladder_integrate(
        norm_lad, quad::RegionFamily::HalfPlaneSectors, g,
        {.tol = 1e-3, .max_cells = 20000}, popt.classify);
    out.f2_norm_verdict = nr.verdict;
    if (nr.verdict == quad::Verdict::Convergent)
        out.f2_norm = std::pow(nr.total(), 1.0 / params.q);

    for (cplx z : residual_points()) {
        const cplx rep = reproduce_any(f, params, z, lad, {.tol = 1e-6});
        const cplx fv = f.eval_unchecked(z);
        out.max_residual =
            std::max(out.max_residual, std::abs(rep - fv) / (1.0 + std::abs(fv)));
    }
    return out;
}

}  // namespace

DecompositionReport check_decomposition(const TestFunction& f, double eps,
                                        const HalfPlaneParams& params,
                                        const quad::Ladder& lad,
                                        const PhiOptions& popt) {
    const std::vector<cplx> grid = report_grid();
    std::vector<cplx> rep(grid.size());
    quad::Ladder grid_lad = lad;
    grid_lad.max_exp = std::min(grid_lad.max_exp, 10);
    for (size_t i = 0; i < grid.size(); ++i)
        rep[i] = reproduce_any(f, params, grid[i], grid_lad,
                               {.tol = 1e-4, .max_cells = 20000});
    return check_one(f, eps, params, lad, popt, grid, rep);
}

std::vector<DecompositionReport> decomposition_sweep(
    const TestFunction& f, const std::vector<double>& eps_list,
    const HalfPlaneParams& params, const quad::Ladder& lad,
    const PhiOptions& popt) {
    const std::vector<cplx> grid = report_grid();
    std::vector<cplx> rep(grid.size());
    quad::Ladder grid_lad = lad;
    grid_lad.max_exp = std::min(grid_lad.max_exp, 10);
    for (size_t i = 0; i < grid.size(); ++i)
        rep[i] = reproduce_any(f, params, grid[i], grid_lad,
                               {.tol = 1e-4, .max_cells = 20000});
    std::vector<DecompositionReport> out;
    for (double eps : eps_list)
        out.push_back(check_one(f, eps, params, lad, popt, grid, rep));
    return out;
}

}  // namespace berg
