#include "berg/quad.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace berg::quad {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kN5[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                           0.5384693101056831, 0.9061798459386640};
constexpr double kW5[5] = {0.2369268850561891, 0.4786286704993665,
                          0.5688888888888889, 0.4786286704993665,
                          0.2369268850561891};
constexpr double kN3[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
constexpr double kW3[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

double absv(double x) { return std::abs(x); }
double absv(const std::complex<double>& x) { return std::abs(x); }

template <typename V, typename F>
void rate_cell(const F& f, double ax, double bx, double ay, double by,
               V& fine, double& err) {
    const double cx = 0.5 * (ax + bx), hx = 0.5 * (bx - ax);
    const double cy = 0.5 * (ay + by), hy = 0.5 * (by - ay);
    V s5{}, s3{};
    for (int i = 0; i < 5; ++i) {
        V row{};
        const double x = cx + hx * kN5[i];
        for (int j = 0; j < 5; ++j) row += kW5[j] * f(x, cy + hy * kN5[j]);
        s5 += kW5[i] * row;
    }
    for (int i = 0; i < 3; ++i) {
        V row{};
        const double x = cx + hx * kN3[i];
        for (int j = 0; j < 3; ++j) row += kW3[j] * f(x, cy + hy * kN3[j]);
        s3 += kW3[i] * row;
    }
    const double area = hx * hy;  // (b-a)(d-c)/4
    fine = s5 * area;
    err = absv(s5 - s3) * area;
}

template <typename V>
struct Cell {
    double ax, bx, ay, by;
    V fine;
    double err;
    long seq;
};

template <typename V>
struct WorstFirst {
    bool operator()(const Cell<V>& a, const Cell<V>& b) const {
        if (a.err != b.err) return a.err < b.err;
        return a.seq > b.seq;  // older cell first among ties
    }
};

template <typename V, typename F>
void adapt_rect(const F& f, double ax, double bx, double ay, double by,
                const Options& opt, V& value_out, double& err_out,
                long& cells_out, bool& budget_out) {
    std::priority_queue<Cell<V>, std::vector<Cell<V>>, WorstFirst<V>> heap;
    long seq = 0;
    long cells = 1;
    V total{};
    double total_err = 0.0;

    Cell<V> root{ax, bx, ay, by, V{}, 0.0, seq++};
    rate_cell<V>(f, ax, bx, ay, by, root.fine, root.err);
    total = root.fine;
    total_err = root.err;
    heap.push(root);

    const auto done = [&]() {
        return total_err <=
               std::max(opt.tol * std::max(absv(total), 1e-300), opt.tol_abs);
    };

    bool budget = false;
    while (!done()) {
        if (cells + 4 > opt.max_cells) {
            budget = true;
            break;
        }
        Cell<V> worst = heap.top();
        heap.pop();
        total -= worst.fine;
        total_err -= worst.err;
        const double mx = 0.5 * (worst.ax + worst.bx);
        const double my = 0.5 * (worst.ay + worst.by);
        const double xs[3] = {worst.ax, mx, worst.bx};
        const double ys[3] = {worst.ay, my, worst.by};
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                Cell<V> c{xs[i], xs[i + 1], ys[j], ys[j + 1], V{}, 0.0, seq++};
                rate_cell<V>(f, c.ax, c.bx, c.ay, c.by, c.fine, c.err);
                total += c.fine;
                total_err += c.err;
                heap.push(c);
            }
        }
        cells += 4;
    }

    // Final pass: compensated summation of the leaves in creation order, so
    // the result does not depend on the heap's internal layout.
    std::vector<Cell<V>> leaves;
    leaves.reserve(heap.size());
    while (!heap.empty()) {
        leaves.push_back(heap.top());
        heap.pop();
    }
    std::sort(leaves.begin(), leaves.end(),
              [](const Cell<V>& a, const Cell<V>& b) { return a.seq < b.seq; });
    V sum{}, comp{};
    double esum = 0.0;
    for (const auto& c : leaves) {
        V y = c.fine - comp;
        V t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        esum += c.err;
    }
    value_out = sum;
    err_out = esum;
    cells_out = cells;
    budget_out = budget;
}

}  // namespace

Result integrate_rect(const std::function<double(double, double)>& f,
                      double ax, double bx, double ay, double by,
                      const Options& opt) {
    Result r;
    adapt_rect<double>(f, ax, bx, ay, by, opt, r.value, r.err, r.cells,
                       r.budget_exceeded);
    return r;
}

ResultC integrate_rect_c(const std::function<std::complex<double>(double, double)>& f,
                         double ax, double bx, double ay, double by,
                         const Options& opt) {
    ResultC r;
    adapt_rect<std::complex<double>>(f, ax, bx, ay, by, opt, r.value, r.err,
                                     r.cells, r.budget_exceeded);
    return r;
}

Result integrate_line(const std::function<double(double)>& f, double a,
                      double b, const Options& opt) {
    // Degenerate-rectangle reuse keeps one adaptive implementation.
    auto f2 = [&f](double x, double) { return f(x); };
    Result r;
    adapt_rect<double>(f2, a, b, 0.0, 1.0, opt, r.value, r.err, r.cells,
                       r.budget_exceeded);
    return r;
}

double integrate(const std::function<double(std::complex<double>)>& g,
                 double ax, double bx, double ay, double by,
                 const Options& opt) {
    if (!(ay >= 0.0))
        throw OutOfDomain("rectangle must lie in the closed upper half-plane");
    auto f = [&g](double x, double y) { return g({x, y}); };
    Result r = integrate_rect(f, ax, bx, ay, by, opt);
    if (r.budget_exceeded)
        throw BudgetExceeded("cell budget exhausted", r.value, r.cells);
    return r.value;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Convergent: return "convergent";
        case Verdict::Divergent: return "divergent";
        default: return "inconclusive";
    }
}

namespace {

// Increment ratio with a floor guard: increments at the noise floor are
// treated as vanished (ratio 0); a jump from the floor reads as growth.
double guarded_ratio(double d0, double d1, double floor_val) {
    if (d1 <= floor_val) return 0.0;
    if (d0 <= floor_val) return 10.0;
    return d1 / d0;
}

}  // namespace

Verdict classify(const std::vector<double>& values,
                 const std::vector<double>& increments,
                 const ClassifyOptions& copt, double* tail_estimate,
                 const std::vector<char>* reliable) {
    size_t nlev = values.size();
    if (reliable) {
        size_t k = 0;
        while (k < values.size() && k < reliable->size() && (*reliable)[k]) ++k;
        nlev = k;
    }
    if (nlev < 5)
        throw InsufficientLevels("classification needs >= 5 reliable levels, got " +
                                 std::to_string(nlev));
    const size_t ninc = std::min(increments.size(), nlev - 1);
    if (ninc < 4)
        throw InsufficientLevels("classification needs >= 4 increments");

    const double top = values[nlev - 1];
    const double floor_val =
        std::max(copt.noise_floor, 1e-13) * (std::abs(top) + 1e-300);
    double r[3];
    for (int i = 0; i < 3; ++i) {
        const size_t hi = ninc - 1 - i;
        r[i] = guarded_ratio(increments[hi - 1], increments[hi], floor_val);
    }
    const bool conv = r[0] <= copt.rho && r[1] <= copt.rho && r[2] <= copt.rho;
    const bool div = r[0] >= copt.div_ratio && r[1] >= copt.div_ratio &&
                     r[2] >= copt.div_ratio;
    if (conv) {
        const double tail =
            increments[ninc - 1] * copt.rho / (1.0 - copt.rho);
        if (tail <= copt.tol_tail * std::max(top, 1e-300)) {
            if (tail_estimate) *tail_estimate = tail;
            return Verdict::Convergent;
        }
        return Verdict::Inconclusive;
    }
    if (div) return Verdict::Divergent;
    return Verdict::Inconclusive;
}

void finalize_report(LadderReport& rep, const ClassifyOptions& copt) {
    rep.increments.clear();
    rep.ratios.clear();
    for (size_t i = 0; i + 1 < rep.values.size(); ++i)
        rep.increments.push_back(std::max(0.0, rep.values[i + 1] - rep.values[i]));
    const double top = rep.values.empty() ? 0.0 : rep.values.back();
    const double floor_val =
        std::max(copt.noise_floor, 1e-13) * (std::abs(top) + 1e-300);
    for (size_t i = 0; i + 1 < rep.increments.size(); ++i)
        rep.ratios.push_back(
            guarded_ratio(rep.increments[i], rep.increments[i + 1], floor_val));
    rep.tail_estimate = 0.0;
    try {
        rep.verdict = classify(rep.values, rep.increments, copt,
                               &rep.tail_estimate, &rep.reliable);
    } catch (const InsufficientLevels&) {
        rep.verdict = Verdict::Inconclusive;
    }
}

std::string LadderReport::to_csv(int first_m) const {
    std::string out = "m,value,increment,ratio,reliable\n";
    char buf[160];
    for (size_t i = 0; i < values.size(); ++i) {
        const double inc = i < increments.size() ? increments[i] : 0.0;
        const double rat = i < ratios.size() ? ratios[i] : 0.0;
        const int rel = i < reliable.size() ? (reliable[i] ? 1 : 0) : 1;
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%d\n",
                      first_m + static_cast<int>(i), values[i], inc, rat, rel);
        out += buf;
    }
    return out;
}

namespace {

struct ShellPiece {
    double value;
    bool ok;
};

template <typename V>
struct ShellResult {
    V value;
    bool ok;
};

// One shell of the half-plane sector family in (theta, u = ln r).
template <typename V, typename G>
ShellResult<V> halfplane_shell(const G& g, double u0, double u1,
                               const Options& opt) {
    auto f = [&g](double theta, double u) -> V {
        const double r = std::exp(u);
        const std::complex<double> z{r * std::cos(theta), r * std::sin(theta)};
        return g(z) * (r * r);
    };
    V value;
    double err;
    long cells;
    bool budget;
    adapt_rect<V>(f, 0.0, M_PI, u0, u1, opt, value, err, cells, budget);
    return {value, !budget};
}

// One shell of the disk family in (theta, v) where delta = base^-v.
template <typename V, typename G>
ShellResult<V> ball_shell(const G& g, double base, double v0, double v1,
                          const Options& opt) {
    const double lnb = std::log(base);
    auto f = [&g, base, lnb](double theta, double v) -> V {
        const double delta = std::pow(base, -v);
        const double r = std::sqrt(std::max(0.0, 1.0 - delta));
        const std::complex<double> z{r * std::cos(theta), r * std::sin(theta)};
        return g(z) * (0.5 * lnb * delta);
    };
    V value;
    double err;
    long cells;
    bool budget;
    adapt_rect<V>(f, 0.0, 2.0 * M_PI, v0, v1, opt, value, err, cells, budget);
    return {value, !budget};
}

template <typename V, typename G>
void run_ladder(const Ladder& lad, RegionFamily fam, const G& g,
                const Options& opt, std::vector<V>& shell_values,
                std::vector<char>& reliable) {
    const double lnb = std::log(lad.base);
    bool ok_so_far = true;
    double running_mag = 0.0;
    for (int m = lad.min_exp; m <= lad.max_exp; ++m) {
        Options shell_opt = opt;
        shell_opt.tol_abs =
            std::max(shell_opt.tol_abs, opt.tol * running_mag);
        V inc{};
        bool ok = true;
        if (fam == RegionFamily::HalfPlaneSectors) {
            if (m == lad.min_exp) {
                auto s = halfplane_shell<V>(g, -m * lnb, m * lnb, shell_opt);
                inc = s.value;
                ok = s.ok;
            } else {
                auto lo = halfplane_shell<V>(g, -m * lnb, -(m - 1) * lnb,
                                             shell_opt);
                auto hi =
                    halfplane_shell<V>(g, (m - 1) * lnb, m * lnb, shell_opt);
                inc = lo.value + hi.value;
                ok = lo.ok && hi.ok;
            }
        } else {
            const double v0 = m == lad.min_exp ? 0.0 : double(m - 1);
            auto s = ball_shell<V>(g, lad.base, v0, double(m), shell_opt);
            inc = s.value;
            ok = s.ok;
        }
        ok_so_far = ok_so_far && ok;
        shell_values.push_back(inc);
        reliable.push_back(ok_so_far ? 1 : 0);
        running_mag += std::abs(inc);
    }
}

}  // namespace

LadderReport ladder_integrate(const Ladder& lad, RegionFamily fam,
                              const std::function<double(std::complex<double>)>& g,
                              const Options& opt, const ClassifyOptions& copt) {
    std::vector<double> shells;
    LadderReport rep;
    run_ladder<double>(lad, fam, g, opt, shells, rep.reliable);
    double acc = 0.0;
    for (double s : shells) {
        acc += std::max(0.0, s);  // integrand nonnegative; clamp quadrature noise
        rep.values.push_back(acc);
    }
    ClassifyOptions eff = copt;
    // Shells are integrated to an absolute allowance of tol * running total,
    // so measured increments carry noise of that size; the classification
    // floor needs headroom above it.
    eff.noise_floor = std::max(eff.noise_floor, 4.0 * opt.tol);
    finalize_report(rep, eff);
    return rep;
}

LadderReportC ladder_integrate_c(const Ladder& lad, RegionFamily fam,
                                 const std::function<std::complex<double>(std::complex<double>)>& g,
                                 const Options& opt,
                                 const ClassifyOptions& copt) {
    std::vector<std::complex<double>> shells;
    LadderReportC rep;
    run_ladder<std::complex<double>>(lad, fam, g, opt, shells,
                                     rep.magnitudes.reliable);
    std::complex<double> acc{0.0, 0.0};
    double mass = 0.0;
    for (const auto& s : shells) {
        acc += s;
        mass += std::abs(s);
        rep.magnitudes.values.push_back(mass);
    }
    rep.value = acc;
    ClassifyOptions eff = copt;
    // Shells are integrated to an absolute allowance of tol * running total,
    // so measured increments carry noise of that size; the classification
    // floor needs headroom above it.
    eff.noise_floor = std::max(eff.noise_floor, 4.0 * opt.tol);
    finalize_report(rep.magnitudes, eff);
    return rep;
}

}  // namespace berg::quad
