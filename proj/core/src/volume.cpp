#include "orbitlab/volume.hpp"

#include <algorithm>
#include <cmath>

namespace orbitlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Absolute-tolerance Simpson with the tolerance scaled off a coarse pass.
// The scale comes from a 32-interval composite of |w|: a 3-point pass can
// miss the support of a localized integrand entirely, and the resulting
// near-zero tolerance sends the adaptive refinement to full depth.
double integrate_segment(const Fn1& w, double a, double b, double rel = 1e-10) {
    if (b <= a) return 0.0;
    const int n = 32;
    double h = (b - a) / n, acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        double wgt = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += wgt * std::fabs(w(a + i * h));
    }
    double tol = std::max(acc * h / 3.0, 1e-12) * rel;
    return adaptive_simpson(w, a, b, tol);
}

double refine_crossing(const Fn1& f, double lo, double hi, double T) {
    for (int i = 0; i < 60 && hi - lo > 1e-13 * (1.0 + std::fabs(hi)); ++i) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) < T)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Scan the profile, returning the sublevel pieces {f < T} in [0, cap].
std::vector<std::pair<double, double>> sublevel_pieces(const Fn1& f, double T,
                                                       double step, double hard_cap) {
    std::vector<std::pair<double, double>> pieces;
    double prev_t = 0.0, prev_f = f(0.0);
    bool below = prev_f < T;
    double seg_start = below ? 0.0 : -1.0;
    int above_streak = 0;
    for (double t = step; t <= hard_cap + 0.5 * step; t += step) {
        double ft = f(t);
        if (ft < T) {
            above_streak = 0;
            if (!below) {
                seg_start = refine_crossing([&](double x) { return -f(x); }, prev_t, t, -T);
                below = true;
            }
        } else {
            if (below) {
                double cross = refine_crossing(f, prev_t, t, T);
                pieces.emplace_back(seg_start, cross);
                below = false;
            }
            // Stop once safely past the ball: well above T and still climbing.
            if (ft > 8.0 * T && ft >= prev_f) {
                if (++above_streak >= 8) return pieces;
            } else {
                above_streak = 0;
            }
        }
        prev_t = t;
        prev_f = ft;
    }
    if (below) pieces.emplace_back(seg_start, hard_cap);
    return pieces;
}

} // namespace

double radial_sublevel_integral(const Fn1& profile, const Fn1& weight, double T,
                                double scan_step, double hard_cap) {
    double total = 0.0;
    for (auto [a, b] : sublevel_pieces(profile, T, scan_step, hard_cap))
        total += integrate_segment(weight, a, b);
    return total;
}

double radial_boundary(const Fn1& profile, double T, double scan_step, double hard_cap) {
    auto pieces = sublevel_pieces(profile, T, scan_step, hard_cap);
    return pieces.empty() ? 0.0 : pieces.back().second;
}

namespace {

// Conjugated chamber integral: integral of xi over the positive chamber cut by
// ||A Psi(exp Y) B|| < T; A, B = identity gives the plain chamber sector.
double chamber_integral_conjugated(const GroupSpec& gs, const NormSpec& norm, double T,
                                   const RealMatrix& A, const RealMatrix& B,
                                   const McParams& mc) {
    auto ge = growth_exponents(gs);
    auto profile_at = [&](const std::vector<double>& t) {
        return norm_eval(norm, A * rep_exp(gs, t) * B);
    };
    if (T <= 1.0) return 0.0;
    if (gs.rank == 1) {
        return radial_sublevel_integral(
            [&](double t1) { return profile_at({t1}); },
            [&](double t1) { return xi(gs, {t1}); }, T);
    }
    if (gs.rank == 2) {
        // Outer coordinate capped by norm >= e^{lambda_1(Y)} >= e^{m2 t2}.
        double m2 = ge.has_m2 ? ge.m2.value() : ge.m1.value();
        double cap2 = (std::log(T) + 8.0) / m2;
        Fn1 outer = [&](double t2) {
            return radial_sublevel_integral(
                [&](double t1) { return profile_at({t1, t2}); },
                [&](double t1) { return xi(gs, {t1, t2}); }, T);
        };
        return integrate_segment(outer, 0.0, cap2, 1e-8);
    }
    // rank >= 3: importance-sampled MC, each coordinate tilted by e^{t}.
    std::vector<double> cap(static_cast<std::size_t>(gs.rank));
    auto rates = growth_rates(gs);
    for (int i = 0; i < gs.rank; ++i)
        cap[static_cast<std::size_t>(i)] = (std::log(T) + 8.0) / rates[static_cast<std::size_t>(i)].value();
    double mass = 1.0;
    for (double ci : cap) mass *= std::expm1(ci);
    RngStream rng(mc.seed, 0xc4a3);
    double acc = 0.0;
    std::vector<double> t(static_cast<std::size_t>(gs.rank));
    for (long s = 0; s < mc.samples; ++s) {
        double tsum = 0.0;
        for (int i = 0; i < gs.rank; ++i) {
            double u = rng.next_double();
            t[static_cast<std::size_t>(i)] = std::log1p(u * std::expm1(cap[static_cast<std::size_t>(i)]));
            tsum += t[static_cast<std::size_t>(i)];
        }
        if (profile_at(t) < T) acc += xi(gs, t) * std::exp(-tsum);
    }
    return acc / static_cast<double>(mc.samples) * mass;
}

} // namespace

double chamber_sector_volume(const GroupSpec& gs, const NormSpec& norm, double T,
                             const McParams& mc) {
    int d = gs.rep_dim;
    return chamber_integral_conjugated(gs, norm, T, RealMatrix::identity(d),
                                       RealMatrix::identity(d), mc);
}

double chamber_integral_slab(const GroupSpec& gs, const NormSpec& norm, double T,
                             const RealMatrix& A, const RealMatrix& B, double t2_max) {
    if (gs.rank != 2) throw UnsupportedGroup("slab integral implemented for rank 2");
    if (T <= 1.0 || t2_max <= 0.0) return 0.0;
    auto ge = growth_exponents(gs);
    double m2 = ge.has_m2 ? ge.m2.value() : ge.m1.value();
    double cap2 = std::min((std::log(T) + 8.0) / m2, t2_max);
    Fn1 outer = [&](double t2) {
        return radial_sublevel_integral(
            [&](double t1) { return norm_eval(norm, A * rep_exp(gs, {t1, t2}) * B); },
            [&](double t1) { return xi(gs, {t1, t2}); }, T);
    };
    return integrate_segment(outer, 0.0, cap2, 1e-8);
}

VolumeEstimate haar_volume(const SkewBall& ball, double T, VolumeMethod method,
                           const McParams& mc, int angular_nodes) {
    const GroupSpec& gs = ball.gs;
    const int na = compact_angle_count(gs);
    auto inner = [&](const std::vector<double>& ang1, const std::vector<double>& ang2) {
        RealMatrix A = ball.g1 * rep_compact(gs, ang1);
        RealMatrix B = rep_compact(gs, ang2) * ball.g2;
        return chamber_integral_conjugated(gs, ball.norm, T, A, B, mc);
    };

    VolumeEstimate out;
    if (method == VolumeMethod::Quadrature) {
        if (na != 1)
            throw UnsupportedGroup("angle-product quadrature implemented for one-angle K; use MonteCarlo");
        double h = 2.0 * kPi / angular_nodes;
        double acc = 0.0;
        for (int i = 0; i < angular_nodes; ++i)
            for (int j = 0; j < angular_nodes; ++j) {
                acc += inner({i * h}, {j * h});
                ++out.evals;
            }
        out.value = acc / (static_cast<double>(angular_nodes) * angular_nodes);
        return out;
    }
    // Monte Carlo over K x K (probability Haar), counter-based per-sample streams.
    double acc = 0.0, acc2 = 0.0;
    for (long s = 0; s < mc.samples; ++s) {
        RngStream rng(mc.seed, static_cast<std::uint64_t>(s) + 1);
        std::vector<double> a1(static_cast<std::size_t>(na)), a2(static_cast<std::size_t>(na));
        for (int i = 0; i < na; ++i) a1[static_cast<std::size_t>(i)] = rng.uniform(0.0, 2.0 * kPi);
        for (int i = 0; i < na; ++i) a2[static_cast<std::size_t>(i)] = rng.uniform(0.0, 2.0 * kPi);
        double v = inner(a1, a2);
        acc += v;
        acc2 += v * v;
        ++out.evals;
    }
    double n = static_cast<double>(mc.samples);
    out.value = acc / n;
    double var = std::max(0.0, acc2 / n - out.value * out.value);
    out.stderr_est = std::sqrt(var / n);
    return out;
}

namespace {

double d_integrand(const GroupSpec& gs, const NormSpec& norm, const RealMatrix& A,
                   const RealMatrix& B, double m, const std::vector<double>& tau) {
    double denom = norm_eval(norm, A * e_tau(gs, tau) * B);
    return xi_hat(gs, tau) / std::pow(denom, m);
}

} // namespace

double asymptotic_constant_D_conjugated(const GroupSpec& gs, const NormSpec& norm,
                                        const RealMatrix& A, const RealMatrix& B,
                                        double tol) {
    auto ge = growth_exponents(gs);
    if (!ge.condition_g)
        throw ConditionGRequired("asymptotic constant needs the growth-gap condition");
    const double m = ge.m.value();
    if (gs.rank == 1) return d_integrand(gs, norm, A, B, m, {});

    // Tail decays like e^{(1 - m2/m1) sum tau}; truncate where the bound is
    // below tol relative to the bulk.
    const double kappa = ge.m2.value() / ge.m1.value() - 1.0;
    if (gs.rank == 2) {
        double g0 = d_integrand(gs, norm, A, B, m, {0.0});
        double M = 8.0;
        while (M < 400.0 && d_integrand(gs, norm, A, B, m, {M}) > 0.25 * tol * kappa * std::max(g0, 1e-12))
            M *= 2.0;
        return integrate_segment([&](double t) { return d_integrand(gs, norm, A, B, m, {t}); },
                                 0.0, M, 0.1 * tol);
    }
    if (gs.rank == 3) {
        double g0 = d_integrand(gs, norm, A, B, m, {0.0, 0.0});
        double M = 8.0;
        while (M < 200.0 &&
               d_integrand(gs, norm, A, B, m, {M, 0.0}) + d_integrand(gs, norm, A, B, m, {0.0, M}) >
                   0.25 * tol * kappa * std::max(g0, 1e-12))
            M *= 2.0;
        Fn1 outer = [&](double t2) {
            return integrate_segment(
                [&](double t3) { return d_integrand(gs, norm, A, B, m, {t2, t3}); }, 0.0, M,
                0.1 * tol);
        };
        return integrate_segment(outer, 0.0, M, 0.1 * tol);
    }
    throw UnsupportedGroup("asymptotic constant implemented for rank <= 3");
}

double asymptotic_constant_D(const GroupSpec& gs, const NormSpec& norm, double tol) {
    int d = gs.rep_dim;
    return asymptotic_constant_D_conjugated(gs, norm, RealMatrix::identity(d),
                                            RealMatrix::identity(d), tol);
}

double asymptotic_constant_C(const GroupSpec& gs, const NormSpec& norm, double tol,
                             int angular_nodes) {
    const int na = compact_angle_count(gs);
    if (na != 1)
        throw UnsupportedGroup("K x K quadrature for C implemented for one-angle K");
    double h = 2.0 * kPi / angular_nodes;
    double acc = 0.0;
    for (int i = 0; i < angular_nodes; ++i)
        for (int j = 0; j < angular_nodes; ++j)
            acc += asymptotic_constant_D_conjugated(gs, norm, rep_compact(gs, {i * h}),
                                                    rep_compact(gs, {j * h}), tol);
    return acc / (static_cast<double>(angular_nodes) * angular_nodes);
}

RatioEstimate limit_ratio_alpha(const std::function<double(double)>& skew_volume,
                                const std::function<double(double)>& plain_volume,
                                const std::vector<double>& schedule) {
    if (schedule.empty()) throw Error("empty schedule");
    RatioEstimate out;
    for (double T : schedule) {
        double denom = plain_volume(T);
        if (denom <= 0.0) throw Error("plain ball volume vanishes on the schedule");
        out.trace.emplace_back(T, skew_volume(T) / denom);
    }
    const std::size_t n = out.trace.size();
    double alpha = out.trace.back().second;
    if (n >= 3) {
        // Aitken delta-squared on the last three ratios.
        double r0 = out.trace[n - 3].second, r1 = out.trace[n - 2].second,
               r2 = out.trace[n - 1].second;
        double d1 = r1 - r0, d2 = r2 - r1;
        double denom = d2 - d1;
        if (std::fabs(denom) > 1e-14 * (std::fabs(d1) + std::fabs(d2)) && d1 * d2 > 0.0)
            alpha = r2 - d2 * d2 / denom;
    }
    out.alpha = alpha;
    std::size_t tail = n >= 4 ? n / 2 : n;
    double lo = out.trace[n - tail].second, hi = lo;
    for (std::size_t i = n - tail; i < n; ++i) {
        lo = std::min(lo, out.trace[i].second);
        hi = std::max(hi, out.trace[i].second);
    }
    out.stability = hi - lo;
    return out;
}

double unipotent_skewball_volume(const RealMatrix& g1, const RealMatrix& g2,
                                 const NormSpec& norm, double T) {
    if (T <= 1.0) return 0.0;
    RealMatrix e21(2, 2, {0.0, 0.0, 1.0, 0.0});
    RealMatrix a = g1 * g2;
    RealMatrix b = g1 * e21 * g2;
    double bn = norm_eval(norm, b);
    if (bn <= 0.0) throw Error("degenerate unipotent direction");
    Fn1 g = [&](double t) { return norm_eval(norm, a + b * t); };
    // Convex profile: bracket then pinpoint the minimizer.
    double L = 1.0;
    double g0 = g(0.0);
    while ((g(-L) < g0 || g(L) < g0) && L < 1e18) L *= 2.0;
    double tm = golden_min(g, -L, L);
    if (g(tm) >= T) return 0.0;
    double R = 1.0;
    while (g(tm + R) < T) R *= 2.0;
    double right = bisect_increasing([&](double s) { return g(tm + s); }, 0.0, R, T);
    R = 1.0;
    while (g(tm - R) < T) R *= 2.0;
    double left = bisect_increasing([&](double s) { return g(tm - s); }, 0.0, R, T);
    return left + right;
}

SpiralVolume spiral_h_volume(double c, double T, double angle_shift) {
    if (c <= 1.0) throw BadNorm("spiral profile needs c > 1");
    SpiralVolume out;
    if (T <= 1.0) return out;
    auto f = [&](double t) {
        double cs = std::cos(t + angle_shift), sn = std::sin(t + angle_shift);
        return std::exp(t) * std::sqrt(c * c * cs * cs + sn * sn);
    };
    // f is pinched between e^t and c e^t, and the planar part contributes
    // the full disk: lambda = pi T^2 * integral over {t > -log(T)/2, f < T}
    // of e^{2t} dt.
    const double t_low = -0.5 * std::log(T);
    const double t_all = std::log(T / c); // f < T guaranteed below this
    const double t_top = std::log(T);     // f >= T guaranteed above this
    if (t_low >= t_top) return out;

    double sum = 0.0;
    auto piece = [&](double a, double b) { return 0.5 * (std::exp(2.0 * b) - std::exp(2.0 * a)); };
    double scan_from = std::max(t_low, t_all);
    if (scan_from > t_low) sum += piece(t_low, scan_from);

    const int N = 1024;
    double h = (t_top - scan_from) / N;
    bool below = f(scan_from) < T;
    double seg = scan_from;
    int crossings = 0;
    out.tau = scan_from;
    for (int i = 1; i <= N; ++i) {
        double t = scan_from + i * h;
        bool b = f(t) < T;
        if (b != below) {
            ++crossings;
            Fn1 fdir = below ? Fn1(f) : Fn1([&](double x) { return -f(x); });
            double cross = refine_crossing(fdir, t - h, t, below ? T : -T);
            if (below) {
                sum += piece(seg, cross);
                out.tau = cross;
            } else {
                seg = cross;
            }
            below = b;
        }
    }
    if (below) {
        sum += piece(seg, t_top);
        out.tau = t_top;
    }
    out.monotone = crossings <= 1;
    out.value = kPi * T * T * sum;
    return out;
}

namespace {

// Tiny dense solve, partial pivoting (rank <= 4 systems).
std::vector<double> solve_dense(RealMatrix m, std::vector<double> rhs) {
    const int n = m.rows();
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::fabs(m.at(r, c)) > std::fabs(m.at(piv, c))) piv = r;
        if (std::fabs(m.at(piv, c)) < 1e-14) throw Error("singular Gram matrix");
        if (piv != c) {
            for (int j = 0; j < n; ++j) std::swap(m.at(c, j), m.at(piv, j));
            std::swap(rhs[static_cast<std::size_t>(c)], rhs[static_cast<std::size_t>(piv)]);
        }
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            double f = m.at(r, c) / m.at(c, c);
            for (int j = c; j < n; ++j) m.at(r, j) -= f * m.at(c, j);
            rhs[static_cast<std::size_t>(r)] -= f * rhs[static_cast<std::size_t>(c)];
        }
    }
    for (int i = 0; i < n; ++i) rhs[static_cast<std::size_t>(i)] /= m.at(i, i);
    return rhs;
}

} // namespace

YmaxResult ymax(const GroupSpec& gs, const RealMatrix& gram) {
    std::vector<double> rho(static_cast<std::size_t>(gs.rank));
    for (int i = 0; i < gs.rank; ++i) rho[static_cast<std::size_t>(i)] = 0.5 * gs.rho2[static_cast<std::size_t>(i)].value();
    auto v = solve_dense(gram, rho);
    double q = 0.0;
    for (int i = 0; i < gs.rank; ++i)
        for (int j = 0; j < gs.rank; ++j) q += v[static_cast<std::size_t>(i)] * gram.at(i, j) * v[static_cast<std::size_t>(j)];
    double n = std::sqrt(q);
    YmaxResult out;
    out.y = v;
    for (auto& x : out.y) x /= n;
    out.interior = true;
    for (const auto& sr : gs.simple_roots)
        if (eval_covector(sr.alpha, out.y) <= 1e-12) out.interior = false;
    return out;
}

RiemannianExponents riemannian_exponents(const GroupSpec& gs, const RealMatrix& gram) {
    auto ym = ymax(gs, gram);
    RiemannianExponents out;
    out.delta = eval_covector(gs.rho2, ym.y);
    out.power = 0.5 * (gs.rank - 1);
    return out;
}

double exp_ball_integral(const std::vector<double>& lambda, double T) {
    const int r = static_cast<int>(lambda.size());
    if (r < 1) throw DimMismatch("exp_ball_integral needs r >= 1");
    double L = 0.0;
    for (double x : lambda) L += x * x;
    L = std::sqrt(L);
    if (r == 1) return L == 0.0 ? 2.0 * T : 2.0 * std::sinh(L * T) / L;
    // Slice perpendicular to lambda: (r-1)-ball cross sections.
    double wball = std::pow(kPi, 0.5 * (r - 1)) / std::tgamma(0.5 * (r - 1) + 1.0);
    Fn1 g = [&](double u) {
        return std::exp(L * u) * wball * std::pow(std::max(0.0, (T - u) * (T + u)), 0.5 * (r - 1));
    };
    return integrate_segment(g, -T, T, 1e-11);
}

double hyperbolic_distance(double x1, double y1, double x2, double y2) {
    if (y1 <= 0.0 || y2 <= 0.0) throw Error("points must be in the upper half plane");
    double dx = x1 - x2, dy = y1 - y2;
    return std::acosh(1.0 + (dx * dx + dy * dy) / (2.0 * y1 * y2));
}

double busemann_rank1(double x, double y, double t_max) {
    return hyperbolic_distance(0.0, std::exp(t_max), x, y) - t_max;
}

} // namespace orbitlab
