#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "orbitlab/density.hpp"

using namespace orbitlab;

namespace {

double vec_pnorm(const std::vector<double>& v, double p) {
    if (p == kPInf) return std::max(std::fabs(v[0]), std::fabs(v[1]));
    return std::pow(std::pow(std::fabs(v[0]), p) + std::pow(std::fabs(v[1]), p), 1.0 / p);
}

const std::vector<double> kV{1.0, std::sqrt(2.0)};

} // namespace

TEST_CASE("section has the vector as first row and det 1") {
    for (int chart : {0, 1}) {
        for (std::vector<double> v :
             {std::vector<double>{1.0, std::sqrt(2.0)}, std::vector<double>{-0.3, 2.7},
              std::vector<double>{2.0, -0.5}}) {
            RealMatrix s = ledrappier_section(v, chart);
            CHECK(s.at(0, 0) == doctest::Approx(v[0]));
            CHECK(s.at(0, 1) == doctest::Approx(v[1]));
            CHECK(s.det() == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    // Each chart excludes one axis.
    CHECK_THROWS(ledrappier_section({0.0, 1.0}, 0));
    CHECK_THROWS(ledrappier_section({1.0, 0.0}, 1));
}

TEST_CASE("density product identity alpha_v(w) ||v||_p ||w||_p = 1") {
    // For entrywise p-norms the closed form collapses: ||M(v,w)||_p =
    // ||v||_p ||w||_p and ||E21||_p = 1.
    std::vector<std::vector<double>> vs{{1.0, std::sqrt(2.0)}, {0.4, -1.7}, {-2.0, 0.3}};
    std::vector<std::vector<double>> ws{{1.0, 1.0}, {2.5, -0.1}, {-0.7, -0.9}};
    for (double p : {1.0, 2.0, kPInf}) {
        NormSpec norm = EntrywisePNorm{p};
        for (const auto& v : vs)
            for (const auto& w : ws) {
                double a = ledrappier_density(v, w, norm);
                CHECK(a * vec_pnorm(v, p) * vec_pnorm(w, p) == doctest::Approx(1.0).epsilon(1e-12));
            }
    }
}

TEST_CASE("alpha at the identity pair is 1") {
    for (double p : {1.0, 2.0, kPInf}) {
        NormSpec norm = EntrywisePNorm{p};
        std::vector<double> e1{1.0, 0.0};
        CHECK(ledrappier_density(e1, e1, norm) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("numeric alpha converges to the closed-form density") {
    std::vector<double> schedule{100.0, 200.0, 400.0, 800.0};
    std::vector<std::vector<double>> ws{{1.5, 0.2}, {-0.8, 1.1}, {0.5, -2.0}};
    for (double p : {1.0, 2.0, kPInf}) {
        NormSpec norm = EntrywisePNorm{p};
        for (const auto& w : ws) {
            double target = ledrappier_density(kV, w, norm);
            auto est = numeric_alpha(kV, w, norm, schedule);
            CHECK(est.alpha == doctest::Approx(target).epsilon(0.02));
        }
    }
}

TEST_CASE("numeric alpha is chart independent") {
    std::vector<double> schedule{100.0, 200.0, 400.0};
    NormSpec norm = EntrywisePNorm{2.0};
    for (std::vector<double> w : {std::vector<double>{1.5, 0.2}, std::vector<double>{-0.8, 1.1}}) {
        auto a0 = numeric_alpha(kV, w, norm, schedule, 0);
        auto a1 = numeric_alpha(kV, w, norm, schedule, 1);
        CHECK(a0.alpha == doctest::Approx(a1.alpha).epsilon(1e-9));
    }
}

TEST_CASE("finite-T alpha ratio is exactly invariant under left H-translation") {
    NormSpec norm = EntrywisePNorm{2.0};
    RealMatrix g1 = ledrappier_section(kV, 0);
    RealMatrix g2 = ledrappier_section({1.5, 0.2}, 0);
    for (double t : {0.5, -2.0, 7.0}) {
        double r = alpha_translation_ratio(g1, g2, t, -0.5 * t, norm, 500.0);
        CHECK(r == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("nu integral reduces to the density against a tiny bump") {
    // Order-2 bump of radius r has mass pi r^2 / 3; for r small the density
    // is constant across the support, so the integral is alpha_v(w0) times
    // that mass up to O(r^2).
    NormSpec norm = EntrywisePNorm{2.0};
    std::vector<double> w0{1.2, 0.7};
    double r = 1e-2;
    SmoothBump bump{w0, r, 2};
    double v = nu_integral(bump, kV, norm, {w0[0] - r, w0[1] - r}, {w0[0] + r, w0[1] + r});
    double pi = 3.14159265358979323846;
    double expect = (pi * r * r / 3.0) * ledrappier_density(kV, w0, norm);
    CHECK(v == doctest::Approx(expect).epsilon(2e-3));
}

TEST_CASE("monte carlo ambient integral is seed deterministic across thread counts") {
    NormSpec norm = EntrywisePNorm{2.0};
    TestFunction phi = RadialBump{0.8, 2.2};
    McParams one{400, 7, 1};
    McParams four{400, 7, 4};
    auto a = g_orbit_integral(phi, kV, norm, 30.0, one);
    auto b = g_orbit_integral(phi, kV, norm, 30.0, four);
    CHECK(a.value == b.value); // bitwise: same streams, fixed-order reduction
    CHECK(a.stderr_est == b.stderr_est);
    McParams other{400, 8, 1};
    auto c = g_orbit_integral(phi, kV, norm, 30.0, other);
    CHECK(a.value != c.value);
}

TEST_CASE("fiber integral matches a plain composite-Simpson reference") {
    // Same integrand, integrated by a fixed 200x200 composite Simpson grid
    // instead of the adaptive scheme.
    NormSpec norm = EntrywisePNorm{2.0};
    TestFunction phi = RadialBump{0.8, 2.2};
    double T = 60.0, s = 2.4;
    RealMatrix g1 = ledrappier_section(kV, 0).inverse();
    auto integrand = [&](double x, double y) {
        double f = test_eval(phi, {x, y});
        if (f == 0.0) return 0.0;
        return f * unipotent_skewball_volume(g1, ledrappier_section({x, y}, std::fabs(x) >= std::fabs(y) ? 0 : 1), norm, T);
    };
    const int n = 200; // even
    double h = 2.0 * s / n;
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        double wx = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        for (int j = 0; j <= n; ++j) {
            double wy = (j == 0 || j == n) ? 1.0 : (j % 2 ? 4.0 : 2.0);
            acc += wx * wy * integrand(-s + i * h, -s + j * h);
        }
    }
    double pi = 3.14159265358979323846;
    double reference = acc * h * h / 9.0 / (2.0 * pi * pi);
    double fiber = g_orbit_integral_fiber(phi, kV, norm, T, s, 1e-6);
    CHECK(fiber == doctest::Approx(reference).epsilon(1e-4));
}

TEST_CASE("fiber integral grows linearly with the density constant") {
    // S~(T)/T -> (1/pi^2) integral phi alpha: check the normalized ratio
    // is already stable across a doubling.
    NormSpec norm = EntrywisePNorm{2.0};
    TestFunction phi = RadialBump{0.8, 2.2};
    double nu = nu_integral(phi, kV, norm, {-2.4, -2.4}, {2.4, 2.4});
    double pi = 3.14159265358979323846;
    for (double T : {200.0, 400.0}) {
        double fiber = g_orbit_integral_fiber(phi, kV, norm, T, 2.4, 1e-6);
        CHECK(fiber / T == doctest::Approx(nu / (pi * pi)).epsilon(0.005));
    }
}
