#include "orbitlab/rootsys.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "orbitlab/errors.hpp"

namespace orbitlab {

namespace {

// Solve M x = rhs over the rationals (tiny systems: rank <= 4).
std::vector<Rational> rational_solve(std::vector<std::vector<Rational>> m,
                                     std::vector<Rational> rhs) {
    const int n = static_cast<int>(m.size());
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].num != 0) { piv = r; break; }
        if (piv < 0) throw Error("singular system in dual-basis solve");
        std::swap(m[static_cast<std::size_t>(c)], m[static_cast<std::size_t>(piv)]);
        std::swap(rhs[static_cast<std::size_t>(c)], rhs[static_cast<std::size_t>(piv)]);
        Rational inv = Rational(1) / m[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
        for (int j = c; j < n; ++j) m[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)] = m[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)] * inv;
        rhs[static_cast<std::size_t>(c)] = rhs[static_cast<std::size_t>(c)] * inv;
        for (int r = 0; r < n; ++r) {
            if (r == c || m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].num == 0) continue;
            Rational f = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            for (int j = c; j < n; ++j)
                m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] - f * m[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)];
            rhs[static_cast<std::size_t>(r)] = rhs[static_cast<std::size_t>(r)] - f * rhs[static_cast<std::size_t>(c)];
        }
    }
    return rhs;
}

std::vector<Rational> zero_cov(int rank) { return std::vector<Rational>(static_cast<std::size_t>(rank), Rational(0)); }

// rho2, dual basis, rescaled basis, highest weight, slow-direction ordering.
void finalize(GroupSpec& gs) {
    gs.rho2 = zero_cov(gs.rank);
    for (const auto& r : gs.positive_roots)
        for (int i = 0; i < gs.rank; ++i)
            gs.rho2[static_cast<std::size_t>(i)] = gs.rho2[static_cast<std::size_t>(i)] + Rational(r.mult) * r.alpha[static_cast<std::size_t>(i)];

    // beta~_j: alpha_i(beta~_j) = delta_ij, simple roots as the system rows.
    gs.beta_tilde.clear();
    for (int j = 0; j < gs.rank; ++j) {
        std::vector<std::vector<Rational>> m;
        for (const auto& sr : gs.simple_roots) m.push_back(sr.alpha);
        std::vector<Rational> rhs = zero_cov(gs.rank);
        rhs[static_cast<std::size_t>(j)] = Rational(1);
        gs.beta_tilde.push_back(rational_solve(m, rhs));
    }
    gs.beta.clear();
    for (const auto& bt : gs.beta_tilde) {
        Rational denom = pair(gs.rho2, bt); // 2 rho(beta~)
        if (!(Rational(0) < denom)) throw Error("2 rho(beta~) must be positive");
        std::vector<Rational> b = bt;
        for (auto& x : b) x = x / denom;
        gs.beta.push_back(b);
    }

    // Highest restricted weight: the strict maximum at an interior point.
    std::vector<Rational> interior = zero_cov(gs.rank);
    for (const auto& bt : gs.beta_tilde)
        for (int i = 0; i < gs.rank; ++i) interior[static_cast<std::size_t>(i)] = interior[static_cast<std::size_t>(i)] + bt[static_cast<std::size_t>(i)];
    int best = 0;
    for (int k = 1; k < static_cast<int>(gs.weights.size()); ++k)
        if (pair(gs.weights[static_cast<std::size_t>(best)].lambda, interior) < pair(gs.weights[static_cast<std::size_t>(k)].lambda, interior))
            best = k;
    gs.highest_weight_index = best;

    // Order the rescaled directions by growth rate so beta_0 is the slow one.
    const auto& l1 = gs.weights[static_cast<std::size_t>(gs.highest_weight_index)].lambda;
    std::vector<int> order(static_cast<std::size_t>(gs.rank));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return pair(l1, gs.beta[static_cast<std::size_t>(a)]) < pair(l1, gs.beta[static_cast<std::size_t>(b)]);
    });
    std::vector<std::vector<Rational>> bt2, b2;
    for (int idx : order) {
        bt2.push_back(gs.beta_tilde[static_cast<std::size_t>(idx)]);
        b2.push_back(gs.beta[static_cast<std::size_t>(idx)]);
    }
    gs.beta_tilde = bt2;
    gs.beta = b2;
}

} // namespace

std::string GroupSpec::name() const {
    switch (family) {
        case GroupFamily::SLn: return "SL(" + std::to_string(n) + ",R)";
        case GroupFamily::SOpq: return "SO(" + std::to_string(p) + "," + std::to_string(q) + ")";
        case GroupFamily::SL2xSL2Tensor:
            return "SL2xSL2-tensor-l" + std::to_string(ell);
    }
    return "?";
}

GroupSpec make_sl(int n) {
    if (n < 2) throw UnsupportedGroup("SL(n,R) needs n >= 2");
    GroupSpec gs;
    gs.family = GroupFamily::SLn;
    gs.n = n;
    gs.rank = n - 1;
    gs.rep_dim = n;
    gs.simple_group = true;

    // s-coordinates: (y_1, ..., y_{n-1}), y_n = -(y_1 + ... + y_{n-1}).
    auto weight_cov = [&](int j) { // covector of y_j
        std::vector<Rational> c = zero_cov(gs.rank);
        if (j < n - 1)
            c[static_cast<std::size_t>(j)] = Rational(1);
        else
            for (auto& x : c) x = Rational(-1);
        return c;
    };
    for (int j = 0; j < n; ++j) {
        gs.weights.push_back({weight_cov(j), 1});
        gs.basis_weight.push_back(j);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::vector<Rational> a = weight_cov(i);
            const auto b = weight_cov(j);
            for (int k = 0; k < gs.rank; ++k) a[static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(k)] - b[static_cast<std::size_t>(k)];
            gs.positive_roots.push_back({a, 1});
            if (j == i + 1) gs.simple_roots.push_back({a, 1});
        }
    finalize(gs);
    return gs;
}

GroupSpec make_sopq(int p, int q) {
    if (p < 1 || q < p || p + q < 3) throw UnsupportedGroup("SO(p,q) needs 1 <= p <= q, p+q >= 3");
    GroupSpec gs;
    gs.family = GroupFamily::SOpq;
    gs.p = p;
    gs.q = q;
    gs.rank = p;
    gs.rep_dim = p + q;
    gs.simple_group = !(p == 2 && q == 2); // so(2,2) = sl(2) + sl(2)

    auto e = [&](int i) { // covector of s_{i+1}
        std::vector<Rational> c = zero_cov(gs.rank);
        c[static_cast<std::size_t>(i)] = Rational(1);
        return c;
    };
    auto minus = [&](std::vector<Rational> c) {
        for (auto& x : c) x = -x;
        return c;
    };
    auto diff = [&](int i, int j) {
        auto c = e(i);
        c[static_cast<std::size_t>(j)] = Rational(-1);
        return c;
    };
    auto sum2 = [&](int i, int j) {
        auto c = e(i);
        c[static_cast<std::size_t>(j)] = Rational(1);
        return c;
    };

    // Weights of the standard representation in the basis where
    // Psi(exp Y) = diag(e^{s_1},...,e^{s_p}, 1,...,1, e^{-s_p},...,e^{-s_1}).
    for (int i = 0; i < p; ++i) gs.weights.push_back({e(i), 1});
    int zero_idx = -1;
    if (q > p) {
        zero_idx = p;
        gs.weights.push_back({zero_cov(gs.rank), q - p});
    }
    const int neg_base = static_cast<int>(gs.weights.size());
    for (int i = 0; i < p; ++i) gs.weights.push_back({minus(e(i)), 1});

    for (int j = 0; j < p; ++j) gs.basis_weight.push_back(j);
    for (int j = p; j < q; ++j) gs.basis_weight.push_back(zero_idx);
    for (int j = q; j < p + q; ++j) gs.basis_weight.push_back(neg_base + (p + q - 1 - j));

    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) {
            gs.positive_roots.push_back({diff(i, j), 1});
            gs.positive_roots.push_back({sum2(i, j), 1});
        }
    if (q > p)
        for (int i = 0; i < p; ++i) gs.positive_roots.push_back({e(i), q - p});

    if (p == 1) {
        // rank one: the single simple root is s_1 (q > p) -- p = q = 1 excluded
        gs.simple_roots.push_back({e(0), q - p});
    } else {
        for (int i = 0; i + 1 < p; ++i) gs.simple_roots.push_back({diff(i, i + 1), 1});
        if (q > p)
            gs.simple_roots.push_back({e(p - 1), q - p});
        else
            gs.simple_roots.push_back({sum2(p - 2, p - 1), 1});
    }
    finalize(gs);
    return gs;
}

GroupSpec make_sl2xsl2_tensor(int ell) {
    if (ell < 2) throw UnsupportedGroup("tensor factor needs ell >= 2");
    GroupSpec gs;
    gs.family = GroupFamily::SL2xSL2Tensor;
    gs.ell = ell;
    gs.rank = 2;
    gs.rep_dim = 2 * ell;
    gs.simple_group = false;

    auto cov = [&](std::int64_t c1, std::int64_t c2) {
        return std::vector<Rational>{Rational(c1), Rational(c2)};
    };
    gs.positive_roots.push_back({cov(2, 0), 1});
    gs.positive_roots.push_back({cov(0, 2), 1});
    gs.simple_roots = gs.positive_roots;

    // Basis u_a (x) v_i, a in {0,1}, i in {0,...,ell-1}; weights
    // (1-2a) s_1 + (ell-1-2i) s_2, all multiplicity one.
    for (int a = 0; a < 2; ++a)
        for (int i = 0; i < ell; ++i) {
            gs.weights.push_back({cov(1 - 2 * a, ell - 1 - 2 * i), 1});
            gs.basis_weight.push_back(a * ell + i);
        }
    finalize(gs);
    return gs;
}

Rational pair(const std::vector<Rational>& covector, const std::vector<Rational>& vec) {
    if (covector.size() != vec.size()) throw DimMismatch("pair() size mismatch");
    Rational s(0);
    for (std::size_t i = 0; i < vec.size(); ++i) s = s + covector[i] * vec[i];
    return s;
}

std::vector<Rational> growth_rates(const GroupSpec& gs) {
    const auto& l1 = gs.weights[static_cast<std::size_t>(gs.highest_weight_index)].lambda;
    std::vector<Rational> r;
    for (const auto& b : gs.beta) r.push_back(pair(l1, b));
    return r;
}

GrowthExponents growth_exponents(const GroupSpec& gs) {
    GrowthExponents ge;
    auto rates = growth_rates(gs); // nondecreasing by construction
    ge.m1 = rates[0];
    if (!(Rational(0) < ge.m1)) throw Error("highest weight must grow on the slow direction");
    ge.m = Rational(1) / ge.m1;
    if (gs.rank >= 2) {
        ge.has_m2 = true;
        ge.m2 = rates[1];
        ge.condition_g = ge.m1 < ge.m2;
    } else {
        ge.condition_g = true; // vacuous in rank one
    }
    if (gs.family == GroupFamily::SOpq && gs.p == gs.q)
        ge.ell = EllClass::One;
    else if (ge.condition_g && gs.irreducible)
        ge.ell = EllClass::Zero;
    else
        ge.ell = EllClass::Unknown;
    return ge;
}

std::vector<int> slow_weight_set(const GroupSpec& gs) {
    auto ge = growth_exponents(gs);
    std::vector<int> out;
    for (int k = 0; k < static_cast<int>(gs.weights.size()); ++k)
        if (pair(gs.weights[static_cast<std::size_t>(k)].lambda, gs.beta[0]) == ge.m1) out.push_back(k);
    return out;
}

double eval_covector(const std::vector<Rational>& cov, const std::vector<double>& s) {
    if (cov.size() != s.size()) throw DimMismatch("covector/point size mismatch");
    double v = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) v += cov[i].value() * s[i];
    return v;
}

std::vector<double> s_from_beta_coords(const GroupSpec& gs, const std::vector<double>& t) {
    if (static_cast<int>(t.size()) != gs.rank) throw DimMismatch("beta-coordinate size mismatch");
    std::vector<double> s(static_cast<std::size_t>(gs.rank), 0.0);
    for (int i = 0; i < gs.rank; ++i)
        for (int j = 0; j < gs.rank; ++j)
            s[static_cast<std::size_t>(j)] += t[static_cast<std::size_t>(i)] * gs.beta[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].value();
    return s;
}

double xi(const GroupSpec& gs, const std::vector<double>& t) {
    auto s = s_from_beta_coords(gs, t);
    double v = 1.0;
    for (const auto& r : gs.positive_roots) {
        double a = eval_covector(r.alpha, s);
        double sh = std::sinh(a);
        for (int k = 0; k < r.mult; ++k) v *= sh;
    }
    return v;
}

namespace {
std::vector<double> s_from_tau(const GroupSpec& gs, const std::vector<double>& tau) {
    if (static_cast<int>(tau.size()) != gs.rank - 1) throw DimMismatch("tau must have rank-1 coordinates");
    std::vector<double> s(static_cast<std::size_t>(gs.rank), 0.0);
    for (int i = 1; i < gs.rank; ++i)
        for (int j = 0; j < gs.rank; ++j)
            s[static_cast<std::size_t>(j)] += tau[static_cast<std::size_t>(i - 1)] * gs.beta[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].value();
    return s;
}
} // namespace

double xi_hat(const GroupSpec& gs, const std::vector<double>& tau) {
    auto ge = growth_exponents(gs);
    if (!ge.condition_g) throw ConditionGRequired("xi_hat needs the growth-gap condition");
    auto s = s_from_tau(gs, tau);
    int fast_mult = 0;
    double v = 1.0;
    for (const auto& r : gs.positive_roots) {
        if (pair(r.alpha, gs.beta[0]) == Rational(0)) {
            double a = eval_covector(r.alpha, s);
            double f = 0.5 - 0.5 * std::exp(-2.0 * a);
            for (int k = 0; k < r.mult; ++k) v *= f;
        } else {
            fast_mult += r.mult;
        }
    }
    double tsum = 0.0;
    for (double x : tau) tsum += x;
    return v * std::pow(0.5, fast_mult) * std::exp(tsum);
}

RealMatrix e_tau(const GroupSpec& gs, const std::vector<double>& tau) {
    auto slow = slow_weight_set(gs);
    auto s = s_from_tau(gs, tau);
    RealMatrix m(gs.rep_dim, gs.rep_dim);
    for (int j = 0; j < gs.rep_dim; ++j) {
        int k = gs.basis_weight[static_cast<std::size_t>(j)];
        if (std::find(slow.begin(), slow.end(), k) == slow.end()) continue;
        m.at(j, j) = std::exp(eval_covector(gs.weights[static_cast<std::size_t>(k)].lambda, s));
    }
    return m;
}

RealMatrix rep_exp(const GroupSpec& gs, const std::vector<double>& t) {
    auto s = s_from_beta_coords(gs, t);
    RealMatrix m(gs.rep_dim, gs.rep_dim);
    for (int j = 0; j < gs.rep_dim; ++j) {
        int k = gs.basis_weight[static_cast<std::size_t>(j)];
        m.at(j, j) = std::exp(eval_covector(gs.weights[static_cast<std::size_t>(k)].lambda, s));
    }
    return m;
}

int compact_angle_count(const GroupSpec& gs) {
    if (gs.family == GroupFamily::SLn && gs.n == 2) return 1;
    if (gs.family == GroupFamily::SL2xSL2Tensor) return 2;
    throw UnsupportedGroup("no angle parametrization of K for " + gs.name());
}

RealMatrix rep_compact(const GroupSpec& gs, const std::vector<double>& angles) {
    if (static_cast<int>(angles.size()) != compact_angle_count(gs))
        throw DimMismatch("wrong angle count for " + gs.name());
    if (gs.family == GroupFamily::SLn) return RealMatrix::rotation2(angles[0]);
    // tensor: K = SO(2) x SO(2) acting by rot(a) (x) Sym^{ell-1}(rot(b))
    return RealMatrix::rotation2(angles[0]).kron(sym_power(RealMatrix::rotation2(angles[1]), gs.ell));
}

RealMatrix so3_from_quaternion(double q0, double q1, double q2, double q3) {
    double n = q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3;
    if (n <= 0.0) throw Error("zero quaternion");
    double s = 2.0 / n;
    RealMatrix m(3, 3);
    m.at(0, 0) = 1.0 - s * (q2 * q2 + q3 * q3);
    m.at(0, 1) = s * (q1 * q2 - q0 * q3);
    m.at(0, 2) = s * (q1 * q3 + q0 * q2);
    m.at(1, 0) = s * (q1 * q2 + q0 * q3);
    m.at(1, 1) = 1.0 - s * (q1 * q1 + q3 * q3);
    m.at(1, 2) = s * (q2 * q3 - q0 * q1);
    m.at(2, 0) = s * (q1 * q3 - q0 * q2);
    m.at(2, 1) = s * (q2 * q3 + q0 * q1);
    m.at(2, 2) = 1.0 - s * (q1 * q1 + q2 * q2);
    return m;
}

RealMatrix sym_power(const RealMatrix& g, int ell) {
    if (g.rows() != 2 || g.cols() != 2) throw DimMismatch("sym_power acts on 2x2");
    if (ell < 1) throw Error("sym_power needs ell >= 1");
    const int n = ell - 1; // polynomial degree
    RealMatrix m(ell, ell);
    // e_i = x^{n-i} y^i maps to (g00 x + g10 y)^{n-i} (g01 x + g11 y)^i.
    for (int i = 0; i <= n; ++i) {
        std::vector<double> poly{1.0}; // coefficients in y-degree
        auto mul_linear = [&](double cx, double cy) {
            std::vector<double> out(poly.size() + 1, 0.0);
            for (std::size_t k = 0; k < poly.size(); ++k) {
                out[k] += poly[k] * cx;
                out[k + 1] += poly[k] * cy;
            }
            poly = out;
        };
        for (int k = 0; k < n - i; ++k) mul_linear(g.at(0, 0), g.at(1, 0));
        for (int k = 0; k < i; ++k) mul_linear(g.at(0, 1), g.at(1, 1));
        for (int k = 0; k <= n; ++k) m.at(k, i) = poly[static_cast<std::size_t>(k)];
    }
    return m;
}

BalancedResult balanced_verdict(const GroupSpec& gs) {
    if (gs.simple_group)
        return {BalancedVerdict::Balanced, "simple group: every norm ball is balanced"};
    if (gs.family == GroupFamily::SOpq && gs.p == 2 && gs.q == 2)
        return {BalancedVerdict::Balanced, "SO(2,2): balanced by direct computation"};
    if (gs.family == GroupFamily::SL2xSL2Tensor) {
        auto ge = growth_exponents(gs);
        if (ge.condition_g && gs.irreducible)
            return {BalancedVerdict::NotBalanced,
                    "product group with growth gap on an irreducible tensor factor"};
        return {BalancedVerdict::Unknown, "no growth gap: criterion not applicable"};
    }
    return {BalancedVerdict::Unknown, "no balancedness criterion applies"};
}

nlohmann::json to_json(const GroupSpec& gs) {
    nlohmann::json j;
    j["name"] = gs.name();
    j["rank"] = gs.rank;
    j["rep_dim"] = gs.rep_dim;
    auto cov_json = [](const std::vector<Rational>& c) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& x : c) arr.push_back(x.str());
        return arr;
    };
    j["positive_roots"] = nlohmann::json::array();
    for (const auto& r : gs.positive_roots)
        j["positive_roots"].push_back({{"alpha", cov_json(r.alpha)}, {"mult", r.mult}});
    j["weights"] = nlohmann::json::array();
    for (const auto& w : gs.weights)
        j["weights"].push_back({{"lambda", cov_json(w.lambda)}, {"mult", w.mult}});
    j["two_rho"] = cov_json(gs.rho2);
    j["beta"] = nlohmann::json::array();
    for (const auto& b : gs.beta) j["beta"].push_back(cov_json(b));
    auto ge = growth_exponents(gs);
    j["m1"] = ge.m1.str();
    j["m"] = ge.m.str();
    j["condition_g"] = ge.condition_g;
    j["ell"] = ge.ell == EllClass::Zero ? "0" : ge.ell == EllClass::One ? "1" : "unknown";
    auto bv = balanced_verdict(gs);
    j["balanced"] = bv.verdict == BalancedVerdict::Balanced      ? "balanced"
                    : bv.verdict == BalancedVerdict::NotBalanced ? "not-balanced"
                                                                 : "unknown";
    j["balanced_reason"] = bv.reason;
    return j;
}

} // namespace orbitlab
