// Acceptance gate: one line per criterion, [PASS]/[FAIL], nonzero exit if any
// criterion fails. Tolerances are pinned here on purpose; do not loosen them
// to make a run green.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "orbitlab/audit.hpp"
#include "orbitlab/density.hpp"
#include "orbitlab/lattice.hpp"
#include "orbitlab/norms.hpp"
#include "orbitlab/rootsys.hpp"
#include "orbitlab/volume.hpp"

using namespace orbitlab;

namespace {

constexpr double kPi = 3.14159265358979323846;
int g_failures = 0;

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void report(int id, bool pass, const std::string& what, const std::string& detail) {
    if (!pass) ++g_failures;
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id,
                what.c_str(), detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// --- criterion 1: closed-form volume oracle ---------------------------------

void criterion1() {
    Timer t;
    const NormSpec frob = EntrywisePNorm{2.0};
    GroupSpec gs = make_sl(2);
    double worst = 0.0;
    for (double T : {2.0, 10.0, 100.0}) {
        double got = chamber_sector_volume(gs, frob, T);
        double want = T * T / 2.0 - 1.0;
        worst = std::max(worst, std::fabs(got / want - 1.0));
    }
    double el = t.seconds();
    report(1, worst <= 1e-6 && el < 1.0, "chamber volume oracle T^2/2 - 1",
           fmt("max rel err %.2e, %.2f s", worst, el));
}

// --- criterion 2: constant pipeline for the entrywise 4-norm ----------------

void criterion2() {
    Timer t;
    GroupSpec gs = make_sl(2);
    NormSpec n4 = EntrywisePNorm{4.0};
    double C = asymptotic_constant_C(gs, n4, 1e-6, 32);
    double T = 1e4;
    double lam = haar_volume({gs, n4, RealMatrix::identity(2), RealMatrix::identity(2)},
                             T, VolumeMethod::Quadrature, {}, 32)
                     .value;
    double err = std::fabs(lam / (C * T * T) - 1.0);
    double el = t.seconds();
    report(2, err <= 0.03 && el < 60.0, "lambda(H_T) ~ C T^2, entrywise 4-norm",
           fmt("C = %.6f, rel err %.4f, %.1f s", C, err, el));
}

// --- criterion 3: SO(p,q) exponents, exact ----------------------------------

void criterion3() {
    bool ok = true;
    std::string detail;
    const std::pair<int, int> split[] = {{1, 2}, {2, 3}, {3, 4}, {2, 4}};
    for (auto [p, q] : split) {
        auto ge = growth_exponents(make_sopq(p, q));
        bool good = ge.m == Rational{static_cast<std::int64_t>(p) * (q - 1), 1} &&
                    ge.condition_g && ge.ell == EllClass::Zero;
        ok = ok && good;
        detail += fmt("(%d,%d):m=%s ", p, q, ge.m.str().c_str());
    }
    for (int p : {2, 3}) {
        auto ge = growth_exponents(make_sopq(p, p));
        bool good = !ge.condition_g && ge.ell == EllClass::One;
        ok = ok && good;
        detail += fmt("(%d,%d):G=%d,ell=1 ", p, p, ge.condition_g ? 1 : 0);
    }
    report(3, ok, "SO(p,q) growth exponents m = p(q-1), condition G", detail);
}

// --- criterion 4: spiral counterexample -------------------------------------

void criterion4() {
    Timer t;
    const double c = 1.1;
    auto lambda = [&](double T, double shift) {
        return spiral_h_volume(c, T, shift).value;
    };
    int n = 3;
    double Tn = c * std::exp(2.0 * kPi * n);
    double Sn = std::exp(0.5 * kPi + 2.0 * kPi * n);
    double errT = std::fabs(lambda(Tn, 0.0) / std::pow(Tn, 4) / (0.5 * kPi / (c * c)) - 1.0);
    double errS = std::fabs(lambda(Sn, 0.0) / std::pow(Sn, 4) / (0.5 * kPi) - 1.0);

    auto vol = spiral_volume_model(c);
    RealMatrix g1(3, 3, {0.0, -1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0});
    RealMatrix id3 = RealMatrix::identity(3);
    double ratioT = vol(g1, id3, Tn) / vol(id3, id3, Tn);
    double ratioS = vol(g1, id3, Sn) / vol(id3, id3, Sn);
    double errRT = std::fabs(ratioT / (c * c) - 1.0);
    double errRS = std::fabs(ratioS * (c * c) - 1.0);

    std::vector<double> schedule;
    for (int k = 1; k <= 4; ++k) {
        schedule.push_back(c * std::exp(2.0 * kPi * k));
        schedule.push_back(std::exp(0.5 * kPi + 2.0 * kPi * k));
    }
    std::sort(schedule.begin(), schedule.end());
    AuditReport rep = audit_d2(vol, g1, id3, schedule, 0.05);
    double el = t.seconds();
    bool ok = errT <= 0.03 && errS <= 0.03 && errRT <= 0.05 && errRS <= 0.05 &&
              rep.verdict == AuditVerdict::Fail && el < 60.0;
    report(4, ok, "spiral volume limits, ratio band, d2 audit Fail",
           fmt("vol errs %.4f/%.4f, ratio errs %.4f/%.4f, d2 = %s, %.1f s", errT, errS,
               errRT, errRS, verdict_name(rep.verdict).c_str(), el));
}

// --- criterion 5: Ledrappier equidistribution --------------------------------

void criterion5() {
    Timer t;
    const NormSpec norm = EntrywisePNorm{2.0};
    const std::vector<double> v{1.0, std::sqrt(2.0)};
    const TestFunction phi = RadialBump{0.5, 3.0};
    LatticeSpec lat{LatticeFamily::SL, 2};
    GroupSpec gs = make_sl(2);
    std::vector<double> errs;
    for (double T : {250.0, 500.0, 1000.0, 2000.0}) {
        double s = 0.0;
        long count = for_each_ball_element(lat, norm, T, [&](const ExactMatrix& g) {
            s += test_eval(phi, row_times(v, g));
        }, 4000000000L);
        double vol =
            haar_volume({gs, norm, RealMatrix::identity(2), RealMatrix::identity(2)}, T,
                        VolumeMethod::Quadrature, {}, 32)
                .value;
        double amb = g_orbit_integral_fiber(phi, v, norm, T, 3.0);
        errs.push_back(std::fabs(s * (vol / static_cast<double>(count)) / amb - 1.0));
    }
    int improving = 0;
    for (std::size_t i = 1; i < errs.size(); ++i)
        if (errs[i] <= errs[i - 1]) ++improving;
    double el = t.seconds();
    bool ok = errs.back() <= 0.10 && improving >= 2 && el < 300.0;
    report(5, ok, "Ledrappier orbit sums track the ambient integral",
           fmt("errs %.4f %.4f %.4f %.4f, %d/3 nonincreasing, %.1f s", errs[0], errs[1],
               errs[2], errs[3], improving, el));
}

// --- criterion 6: density cross-validation -----------------------------------

void criterion6() {
    const std::vector<std::vector<double>> vs{{1.0, std::sqrt(2.0)}, {0.7, -1.3}};
    const std::vector<std::vector<double>> ws{
        {1.5, 0.2}, {-0.8, 1.1}, {0.5, -2.0}, {2.2, 0.9}, {-1.4, -0.6}};
    const std::vector<double> schedule{100.0, 200.0, 400.0, 800.0};
    double worst = 0.0, worst_id = 0.0;
    for (double p : {1.0, 2.0, kPInf}) {
        NormSpec norm = EntrywisePNorm{p};
        for (const auto& v : vs)
            for (const auto& w : ws) {
                double closed = ledrappier_density(v, w, norm);
                double numeric = numeric_alpha(v, w, norm, schedule).alpha;
                worst = std::max(worst, std::fabs(closed / numeric - 1.0));
                auto pn = [&](const std::vector<double>& x) {
                    if (p == kPInf) return std::max(std::fabs(x[0]), std::fabs(x[1]));
                    return std::pow(std::pow(std::fabs(x[0]), p) + std::pow(std::fabs(x[1]), p),
                                    1.0 / p);
                };
                worst_id = std::max(worst_id, std::fabs(closed * pn(v) * pn(w) - 1.0));
            }
    }
    report(6, worst <= 0.05 && worst_id <= 1e-12,
           "closed-form density vs numeric alpha, product identity",
           fmt("max rel dev %.4f, identity defect %.2e", worst, worst_id));
}

// --- criterion 7: enumeration oracle ------------------------------------------

void criterion7() {
    bool ok = true;
    long total = 0;
    const NormSpec frob = EntrywisePNorm{2.0};
    const NormSpec maxn = EntrywisePNorm{kPInf};
    auto same = [](const BallEnumeration& a, BallEnumeration b) {
        std::sort(b.elements.begin(), b.elements.end());
        return a.elements == b.elements;
    };
    for (LatticeFamily fam : {LatticeFamily::SL, LatticeFamily::DetPM1}) {
        for (double T : {2.0, 3.5, 5.0}) {
            LatticeSpec l{fam, 2};
            auto fast = enumerate_ball(l, frob, T);
            auto slow = enumerate_ball_bruteforce(l, frob, T);
            ok = ok && same(fast, slow);
            total += static_cast<long>(fast.elements.size());
        }
        LatticeSpec l3{fam, 3};
        auto fast = enumerate_ball(l3, maxn, 3.0);
        auto slow = enumerate_ball_bruteforce(l3, maxn, 3.0);
        ok = ok && same(fast, slow);
        total += static_cast<long>(fast.elements.size());
    }
    report(7, ok, "enumerate_ball set-equals brute force (d=2 T<=5, d=3 max T<=3)",
           fmt("%ld elements compared", total));
}

// --- criterion 8: counting trend ----------------------------------------------

void criterion8() {
    Timer t;
    const NormSpec frob = EntrywisePNorm{2.0};
    LatticeSpec lat{LatticeFamily::SL, 2};
    std::vector<double> Ts{100.0, 200.0, 400.0, 800.0};
    std::vector<double> logT, logN;
    double c400 = 0.0, c800 = 0.0;
    for (double T : Ts) {
        long n = count_ball(lat, frob, T, 4000000000L);
        logT.push_back(std::log(T));
        logN.push_back(std::log(static_cast<double>(n)));
        if (T == 400.0) c400 = static_cast<double>(n) / (T * T);
        if (T == 800.0) c800 = static_cast<double>(n) / (T * T);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < logT.size(); ++i) {
        mx += logT[i];
        my += logN[i];
    }
    mx /= static_cast<double>(logT.size());
    my /= static_cast<double>(logT.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < logT.size(); ++i) {
        sxy += (logT[i] - mx) * (logN[i] - my);
        sxx += (logT[i] - mx) * (logT[i] - mx);
    }
    double slope = sxy / sxx;
    double flat = std::fabs(c400 / c800 - 1.0);
    double el = t.seconds();
    report(8, flat <= 0.10 && std::fabs(slope - 2.0) <= 0.1,
           "lattice count ratio flatness and log-log slope",
           fmt("N/T^2: %.4f vs %.4f (dev %.4f), slope %.4f, %.1f s", c400, c800, flat,
               slope, el));
}

// --- criterion 9: torus Weyl sums ----------------------------------------------

void criterion9() {
    const NormSpec frob = EntrywisePNorm{2.0};
    LatticeSpec lat{LatticeFamily::SL, 2};
    std::vector<double> x0{std::sqrt(2.0) - 1.0, std::sqrt(3.0) - 1.0};
    auto w = weyl_sum(lat, frob, 300.0, {1, 0}, x0, nullptr, 400000000L);
    auto ctrl = weyl_sum(lat, frob, 300.0, {1, 0}, {0.0, 0.0}, nullptr, 400000000L);
    bool ok = std::abs(w) <= 0.05 && std::abs(ctrl) > 0.5;
    report(9, ok, "Weyl sum decay at a badly approximable point",
           fmt("|W| = %.4f, control = %.4f", std::abs(w), std::abs(ctrl)));
}

// --- criterion 10: exponential ball shape ---------------------------------------

void criterion10() {
    double lo = 1e300, hi = 0.0;
    for (double T = 20.0; T <= 40.0 + 1e-9; T += 5.0) {
        double g = exp_ball_integral({1.0, 0.0}, T) / (std::sqrt(T) * std::exp(T));
        lo = std::min(lo, g);
        hi = std::max(hi, g);
    }
    double spread = (hi - lo) / (0.5 * (hi + lo));
    double worst1 = 0.0;
    for (double T : {0.5, 3.0, 10.0, 25.0})
        worst1 = std::max(worst1, std::fabs(exp_ball_integral({1.0}, T) /
                                                (2.0 * std::sinh(T)) -
                                            1.0));
    report(10, spread < 0.05 && worst1 <= 1e-9,
           "exp ball: T^{1/2} e^T shape (r=2) and 2 sinh T closed form (r=1)",
           fmt("r=2 spread %.4f, r=1 rel err %.2e", spread, worst1));
}

// --- criterion 11: non-balanced witness ------------------------------------------

void criterion11() {
    Timer t;
    GroupSpec gs = make_sl2xsl2_tensor(3);
    const double t2_max = 4.0;
    std::vector<NormSpec> norms{EntrywisePNorm{2.0}, MaxColumnNorm{2.0}};
    std::vector<bool> verdicts;
    std::string detail;
    for (const auto& norm : norms) {
        bool above = true;
        for (double T : {1e3, 1e4}) {
            double num = 0.0, den = 0.0;
            for (long s = 0; s < 64; ++s) {
                RngStream rng(1, static_cast<std::uint64_t>(s) + 1);
                std::vector<double> a1{rng.uniform(0.0, 2.0 * kPi),
                                       rng.uniform(0.0, 2.0 * kPi)};
                std::vector<double> a2{rng.uniform(0.0, 2.0 * kPi),
                                       rng.uniform(0.0, 2.0 * kPi)};
                RealMatrix A = rep_compact(gs, a1), B = rep_compact(gs, a2);
                num += chamber_integral_slab(gs, norm, T, A, B, t2_max);
                den += chamber_integral_slab(gs, norm, T, A, B, kPInf);
            }
            double frac = num / den;
            above = above && frac > 0.1;
            detail += fmt("%s T=%.0e: %.3f  ", norm_name(norm).c_str(), T, frac);
        }
        verdicts.push_back(above);
    }
    double el = t.seconds();
    bool ok = verdicts[0] && verdicts[0] == verdicts[1];
    report(11, ok, "compact-factor volume share stays heavy under two norms",
           detail + fmt("%.1f s", el));
}

// --- criterion 12: property suites ------------------------------------------------

int check_norm_axioms() {
    int bad = 0;
    std::vector<std::pair<NormSpec, int>> norms{
        {EntrywisePNorm{1.0}, 2},      {EntrywisePNorm{2.0}, 2},
        {EntrywisePNorm{kPInf}, 2},    {MaxColumnNorm{2.0}, 2},
        {SpiralNorm{1.1}, 3},          {WeightedEntrywise{{1.0, 2.0, 0.5, 3.0}, 2.0}, 2}};
    for (const auto& [norm, dim] : norms) {
        RngStream rng(99, 1);
        for (int rep = 0; rep < 50; ++rep) {
            RealMatrix a(dim, dim), b(dim, dim);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) {
                    a.at(i, j) = rng.uniform(-3.0, 3.0);
                    b.at(i, j) = rng.uniform(-3.0, 3.0);
                }
            double na = norm_eval(norm, a), nb = norm_eval(norm, b);
            if (!(na >= 0.0 && nb >= 0.0)) ++bad;
            double s = rng.uniform(-2.0, 2.0);
            if (std::fabs(norm_eval(norm, a * s) - std::fabs(s) * na) >
                1e-12 * (1.0 + na))
                ++bad;
            if (norm_eval(norm, a + b) > na + nb + 1e-12 * (1.0 + na + nb)) ++bad;
        }
        RealMatrix z(dim, dim);
        if (norm_eval(norm, z) != 0.0) ++bad;
    }
    return bad;
}

void criterion12() {
    int violations = 0;

    violations += check_norm_axioms();

    // alpha at the identity pair.
    for (double p : {1.0, 2.0, kPInf})
        if (std::fabs(ledrappier_density({1.0, 0.0}, {1.0, 0.0}, EntrywisePNorm{p}) - 1.0) >
            1e-12)
            ++violations;

    // Y_max interiority.
    for (GroupSpec gs : {make_sl(2), make_sl(3), make_sopq(2, 3)})
        if (!ymax(gs, RealMatrix::identity(gs.rank)).interior) ++violations;

    // Chart independence of numeric alpha.
    {
        NormSpec norm = EntrywisePNorm{2.0};
        std::vector<double> v{1.0, std::sqrt(2.0)};
        std::vector<double> schedule{100.0, 200.0, 400.0};
        for (std::vector<double> w : {std::vector<double>{1.5, 0.2},
                                      std::vector<double>{-0.8, 1.1}}) {
            double a0 = numeric_alpha(v, w, norm, schedule, 0).alpha;
            double a1 = numeric_alpha(v, w, norm, schedule, 1).alpha;
            if (std::fabs(a0 - a1) > 1e-9 * (1.0 + std::fabs(a0))) ++violations;
        }
    }

    // Seed determinism of the Monte Carlo ambient integral across threads.
    {
        NormSpec norm = EntrywisePNorm{2.0};
        TestFunction phi = RadialBump{0.8, 2.2};
        std::vector<double> v{1.0, std::sqrt(2.0)};
        McEstimate ref = g_orbit_integral(phi, v, norm, 25.0, {300, 5, 1});
        for (int threads : {2, 4, 8}) {
            McEstimate got = g_orbit_integral(phi, v, norm, 25.0, {300, 5, threads});
            if (got.value != ref.value || got.stderr_est != ref.stderr_est) ++violations;
        }
        McEstimate other = g_orbit_integral(phi, v, norm, 25.0, {300, 6, 1});
        if (other.value == ref.value) ++violations;
    }

    report(12, violations == 0, "property suites (norms, density, Y_max, charts, RNG)",
           fmt("%d violations", violations));
}

} // namespace

int main() {
    Timer total;
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    criterion12();
    std::printf("%d/12 criteria passed in %.1f s\n", 12 - g_failures, total.seconds());
    return g_failures == 0 ? 0 : 1;
}
