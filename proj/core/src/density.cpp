#include "orbitlab/density.hpp"

#include <cmath>
#include <thread>

namespace orbitlab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

RealMatrix ledrappier_section(const std::vector<double>& v, int chart) {
    if (v.size() != 2) throw DimMismatch("section point must be planar");
    if (chart == 0) {
        if (v[0] == 0.0) throw Error("chart 0 needs x1 != 0");
        return RealMatrix(2, 2, {v[0], v[1], 1.0, (v[1] + 1.0) / v[0]});
    }
    if (chart == 1) {
        if (v[1] == 0.0) throw Error("chart 1 needs x2 != 0");
        return RealMatrix(2, 2, {v[0], v[1], (v[0] - 1.0) / v[1], 1.0});
    }
    throw Error("unknown chart");
}

double ledrappier_density(const std::vector<double>& v, const std::vector<double>& w,
                          const NormSpec& norm) {
    RealMatrix e21(2, 2, {0.0, 0.0, 1.0, 0.0});
    RealMatrix m(2, 2, {-v[1] * w[0], -v[1] * w[1], v[0] * w[0], v[0] * w[1]});
    double denom = norm_eval(norm, m);
    if (denom <= 0.0) throw Error("degenerate (v, w) pair");
    return norm_eval(norm, e21) / denom;
}

RatioEstimate numeric_alpha(const std::vector<double>& v, const std::vector<double>& w,
                            const NormSpec& norm, const std::vector<double>& schedule,
                            int chart) {
    RealMatrix sv_inv = ledrappier_section(v, chart).inverse();
    RealMatrix sw = ledrappier_section(w, chart);
    RealMatrix id = RealMatrix::identity(2);
    return limit_ratio_alpha(
        [&](double T) { return unipotent_skewball_volume(sv_inv, sw, norm, T); },
        [&](double T) { return unipotent_skewball_volume(id, id, norm, T); }, schedule);
}

namespace {

using Fn2 = std::function<double(double, double)>;

double simpson2d_cell(const Fn2& f, double x0, double x1, double y0, double y1) {
    const double wts[3] = {1.0, 4.0, 1.0};
    const double xs[3] = {x0, 0.5 * (x0 + x1), x1};
    const double ys[3] = {y0, 0.5 * (y0 + y1), y1};
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += wts[i] * wts[j] * f(xs[i], ys[j]);
    return s * (x1 - x0) * (y1 - y0) / 36.0;
}

double adapt2d(const Fn2& f, double x0, double x1, double y0, double y1, double whole,
               double abs_tol, int depth) {
    double xm = 0.5 * (x0 + x1), ym = 0.5 * (y0 + y1);
    double q[4] = {
        simpson2d_cell(f, x0, xm, y0, ym), simpson2d_cell(f, xm, x1, y0, ym),
        simpson2d_cell(f, x0, xm, ym, y1), simpson2d_cell(f, xm, x1, ym, y1)};
    double refined = q[0] + q[1] + q[2] + q[3];
    double err = refined - whole;
    if (depth <= 0 || std::fabs(err) <= 15.0 * abs_tol)
        return refined + err / 15.0;
    double child_tol = 0.25 * abs_tol;
    return adapt2d(f, x0, xm, y0, ym, q[0], child_tol, depth - 1) +
           adapt2d(f, xm, x1, y0, ym, q[1], child_tol, depth - 1) +
           adapt2d(f, x0, xm, ym, y1, q[2], child_tol, depth - 1) +
           adapt2d(f, xm, x1, ym, y1, q[3], child_tol, depth - 1);
}

// Two-pass driver: a coarse pass sets the absolute tolerance scale, then the
// adaptive pass refines each seed cell to its share of the budget.
double integrate2d(const Fn2& f, double xlo, double xhi, double ylo, double yhi,
                   int grid, double rel_tol, int max_depth) {
    std::vector<double> coarse(static_cast<std::size_t>(grid) * grid);
    double hx = (xhi - xlo) / grid, hy = (yhi - ylo) / grid;
    double scale = 0.0;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            double c = simpson2d_cell(f, xlo + i * hx, xlo + (i + 1) * hx,
                                      ylo + j * hy, ylo + (j + 1) * hy);
            coarse[static_cast<std::size_t>(i * grid + j)] = c;
            scale += std::fabs(c);
        }
    double cell_tol = std::max(scale, 1e-300) * rel_tol / (grid * grid);
    double total = 0.0;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j)
            total += adapt2d(f, xlo + i * hx, xlo + (i + 1) * hx, ylo + j * hy,
                             ylo + (j + 1) * hy,
                             coarse[static_cast<std::size_t>(i * grid + j)], cell_tol,
                             max_depth);
    return total;
}

} // namespace

double nu_integral(const TestFunction& phi, const std::vector<double>& v,
                   const NormSpec& norm, const std::vector<double>& box_lo,
                   const std::vector<double>& box_hi, double rel_tol, int max_depth) {
    if (box_lo.size() != 2 || box_hi.size() != 2) throw DimMismatch("nu_integral box is planar");
    Fn2 f = [&](double x, double y) {
        std::vector<double> w{x, y};
        double p = test_eval(phi, w);
        return p == 0.0 ? 0.0 : p * ledrappier_density(v, w, norm);
    };
    // A 4x4 seed grid so disjoint support pieces are all seen.
    return integrate2d(f, box_lo[0], box_hi[0], box_lo[1], box_hi[1], 4, rel_tol, max_depth);
}

double g_orbit_integral_fiber(const TestFunction& phi, const std::vector<double>& v,
                              const NormSpec& norm, double T, double support,
                              double rel_tol) {
    if (v.size() != 2) throw DimMismatch("fiber integral is planar (SL(2,R))");
    RealMatrix sv_inv = ledrappier_section(v, std::fabs(v[0]) >= std::fabs(v[1]) ? 0 : 1)
                            .inverse();
    Fn2 f = [&](double x, double y) {
        std::vector<double> w{x, y};
        double p = test_eval(phi, w);
        if (p == 0.0) return 0.0;
        int chart = std::fabs(x) >= std::fabs(y) ? 0 : 1;
        return p * unipotent_skewball_volume(sv_inv, ledrappier_section(w, chart), norm, T);
    };
    return integrate2d(f, -support, support, -support, support, 6, rel_tol, 12) /
           (2.0 * kPi * kPi);
}

double alpha_translation_ratio(const RealMatrix& g1, const RealMatrix& g2,
                               double h1_time, double h2_time, const NormSpec& norm,
                               double T) {
    RealMatrix h1(2, 2, {1.0, 0.0, h1_time, 1.0});
    RealMatrix h2(2, 2, {1.0, 0.0, h2_time, 1.0});
    double base = unipotent_skewball_volume(g1.inverse(), g2, norm, T);
    if (base <= 0.0) throw Error("empty base skew ball");
    double moved = unipotent_skewball_volume((h1 * g1).inverse(), h2 * g2, norm, T);
    return moved / base;
}

McEstimate g_orbit_integral(const TestFunction& phi, const std::vector<double>& v,
                            const NormSpec& norm, double T, const McParams& mc) {
    if (v.size() != 2) throw DimMismatch("g_orbit_integral is planar (SL(2,R))");
    GroupSpec gs = make_sl(2);
    const int simpson_nodes = 512; // composite, even

    auto sample_value = [&](long s) {
        RngStream rng(mc.seed, static_cast<std::uint64_t>(s) + 1);
        double th1 = rng.uniform(0.0, 2.0 * kPi);
        double th2 = rng.uniform(0.0, 2.0 * kPi);
        RealMatrix k1 = RealMatrix::rotation2(th1);
        RealMatrix k2 = RealMatrix::rotation2(th2);
        auto u = row_times(v, k1);
        auto profile = [&](double t1) {
            return norm_eval(norm, k1 * rep_exp(gs, {t1}) * k2);
        };
        double tstar = radial_boundary(profile, T);
        if (tstar <= 0.0) return 0.0;
        auto integrand = [&](double t1) {
            double e = std::exp(0.5 * t1);
            std::vector<double> w{u[0] * e, u[1] / e};
            w = row_times(w, k2);
            double p = test_eval(phi, w);
            return p == 0.0 ? 0.0 : p * std::sinh(t1);
        };
        // Composite Simpson: the observable support can be a narrow window in
        // t1, which a lazy adaptive pass would miss entirely.
        double h = tstar / simpson_nodes;
        double acc = integrand(0.0) + integrand(tstar);
        for (int i = 1; i < simpson_nodes; ++i)
            acc += integrand(i * h) * (i % 2 ? 4.0 : 2.0);
        return acc * h / 3.0;
    };

    std::vector<double> vals(static_cast<std::size_t>(mc.samples), 0.0);
    int nthreads = std::max(1, mc.threads);
    if (nthreads == 1) {
        for (long s = 0; s < mc.samples; ++s) vals[static_cast<std::size_t>(s)] = sample_value(s);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&, t]() {
                for (long s = t; s < mc.samples; s += nthreads)
                    vals[static_cast<std::size_t>(s)] = sample_value(s);
            });
        for (auto& th : pool) th.join();
    }
    // Fixed-order reduction: results do not depend on the thread count.
    double acc = 0.0, acc2 = 0.0;
    for (double x : vals) {
        acc += x;
        acc2 += x * x;
    }
    double n = static_cast<double>(mc.samples);
    McEstimate out;
    out.value = acc / n;
    double var = std::max(0.0, acc2 / n - out.value * out.value);
    out.stderr_est = std::sqrt(var / n);
    return out;
}

} // namespace orbitlab
