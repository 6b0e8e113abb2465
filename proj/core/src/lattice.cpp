#include "orbitlab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace orbitlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Largest integer strictly below x (entry ranges come from strict norm bounds).
std::int64_t max_int_below(double x) {
    return static_cast<std::int64_t>(std::ceil(x)) - 1;
}

// Extended gcd: returns g = gcd(a,b) and x,y with a x + b y = g. g >= 0.
std::int64_t egcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
    if (b == 0) {
        x = (a >= 0) ? 1 : -1;
        y = 0;
        return a >= 0 ? a : -a;
    }
    std::int64_t x1, y1;
    std::int64_t g = egcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

std::int64_t mod_pos(std::int64_t v, std::int64_t m) {
    std::int64_t r = v % m;
    return r < 0 ? r + m : r;
}

struct Budget {
    long limit;
    long used = 0;
    void spend() {
        if (++used > limit) throw BudgetExceeded("enumeration budget exceeded");
    }
};

std::vector<std::int64_t> det_targets(const LatticeSpec& l) {
    if (l.family == LatticeFamily::SL) return {1};
    return {1, -1};
}

// Necessary condition on a single (partial) column for ||A|| < T. Conservative.
bool column_feasible(const NormSpec& n, const std::vector<double>& col, int j, double T) {
    if (const auto* e = std::get_if<EntrywisePNorm>(&n)) {
        std::vector<double> c = col;
        if (e->p == kPInf) {
            for (double x : c)
                if (std::fabs(x) >= T) return false;
            return true;
        }
        double s = 0.0;
        for (double x : c) s += std::pow(std::fabs(x), e->p);
        return std::pow(s, 1.0 / e->p) < T;
    }
    if (const auto* m = std::get_if<MaxColumnNorm>(&n)) {
        std::vector<double> c = col;
        double s = 0.0;
        if (m->p == kPInf) {
            for (double x : c) s = std::max(s, std::fabs(x));
            return s < T;
        }
        for (double x : c) s += std::pow(std::fabs(x), m->p);
        return std::pow(s, 1.0 / m->p) < T;
    }
    if (const auto* w = std::get_if<WeightedEntrywise>(&n)) {
        int dim = static_cast<int>(std::sqrt(static_cast<double>(w->weights.size())) + 0.5);
        double s = 0.0;
        for (int i = 0; i < static_cast<int>(col.size()); ++i) {
            double t = w->weights[static_cast<std::size_t>(i) * dim + j] * std::fabs(col[static_cast<std::size_t>(i)]);
            if (w->p == kPInf)
                s = std::max(s, t);
            else
                s += std::pow(t, w->p);
        }
        return (w->p == kPInf ? s : std::pow(s, 1.0 / w->p)) < T;
    }
    return true; // no cheap per-column bound for the remaining norms
}

template <typename Cb>
void enum_d2(const LatticeSpec& l, const NormSpec& norm, double T, Budget& budget, Cb&& cb) {
    const std::int64_t Ba = max_int_below(entry_bound(norm, T, 2, 0, 0));
    const std::int64_t Bb = max_int_below(entry_bound(norm, T, 2, 0, 1));
    const std::int64_t Bc = max_int_below(entry_bound(norm, T, 2, 1, 0));
    const std::int64_t Bd = max_int_below(entry_bound(norm, T, 2, 1, 1));
    if (Ba < 0 || Bb < 0 || Bc < 0 || Bd < 0) return;

    ExactMatrix m(2);
    auto emit = [&](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
        m.at(0, 0) = a; m.at(0, 1) = b; m.at(1, 0) = c; m.at(1, 1) = d;
        if (norm_eval(norm, m) < T) cb(m);
    };

    for (std::int64_t det0 : det_targets(l)) {
        // a = 0 stratum: -bc = det0, so (b, c) = (+/-1, -/+det0), d free.
        for (std::int64_t b : {std::int64_t{1}, std::int64_t{-1}}) {
            std::int64_t c = -det0 * b; // b*c = -det0 since b^2 = 1
            if (std::llabs(b) > Bb || std::llabs(c) > Bc) continue;
            for (std::int64_t d = -Bd; d <= Bd; ++d) {
                budget.spend();
                emit(0, b, c, d);
            }
        }
        // a != 0: need b c = -det0 (mod a); then d = (det0 + b c)/a exactly.
        for (std::int64_t a = -Ba; a <= Ba; ++a) {
            if (a == 0) continue;
            const std::int64_t A = std::llabs(a);
            for (std::int64_t b = -Bb; b <= Bb; ++b) {
                std::int64_t c0 = 0;
                if (A > 1) {
                    std::int64_t x, y;
                    std::int64_t g = egcd(mod_pos(b, A), A, x, y);
                    if (g != 1) continue; // b c = -det0 (mod A) unsolvable
                    c0 = mod_pos(mod_pos(-det0, A) * mod_pos(x, A), A);
                }
                // smallest c >= -Bc with c = c0 (mod A)
                std::int64_t start = c0 - ((c0 + Bc) / A) * A;
                while (start < -Bc) start += A;
                for (std::int64_t c = start; c <= Bc; c += A) {
                    budget.spend();
                    std::int64_t d = (det0 + b * c) / a;
                    if ((det0 + b * c) % a != 0) continue; // sign conventions
                    if (std::llabs(d) > Bd) continue;
                    emit(a, b, c, d);
                }
            }
        }
    }
}

template <typename Cb>
void enum_d3(const LatticeSpec& l, const NormSpec& norm, double T, Budget& budget, Cb&& cb) {
    std::int64_t B[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            B[i][j] = max_int_below(entry_bound(norm, T, 3, i, j));
            if (B[i][j] < 0) return;
        }

    ExactMatrix m(3);
    const auto targets = det_targets(l);

    std::vector<double> col(3);
    for (std::int64_t a0 = -B[0][0]; a0 <= B[0][0]; ++a0)
    for (std::int64_t a1 = -B[1][0]; a1 <= B[1][0]; ++a1)
    for (std::int64_t a2 = -B[2][0]; a2 <= B[2][0]; ++a2) {
        col = {double(a0), double(a1), double(a2)};
        if (!column_feasible(norm, col, 0, T)) continue;
        for (std::int64_t b0 = -B[0][1]; b0 <= B[0][1]; ++b0)
        for (std::int64_t b1 = -B[1][1]; b1 <= B[1][1]; ++b1)
        for (std::int64_t b2 = -B[2][1]; b2 <= B[2][1]; ++b2) {
            budget.spend();
            col = {double(b0), double(b1), double(b2)};
            if (!column_feasible(norm, col, 1, T)) continue;
            // n = col1 x col2; third column must satisfy n . c3 = det.
            const std::int64_t n0 = a1 * b2 - a2 * b1;
            const std::int64_t n1 = a2 * b0 - a0 * b2;
            const std::int64_t n2 = a0 * b1 - a1 * b0;
            if (n0 == 0 && n1 == 0 && n2 == 0) continue;
            // pivot on the largest |n_k|
            int k = 0;
            std::int64_t nk = n0;
            if (std::llabs(n1) > std::llabs(nk)) { k = 1; nk = n1; }
            if (std::llabs(n2) > std::llabs(nk)) { k = 2; nk = n2; }
            const int i1 = (k + 1) % 3, i2 = (k + 2) % 3;
            const std::int64_t ni1 = (i1 == 0 ? n0 : i1 == 1 ? n1 : n2);
            const std::int64_t ni2 = (i2 == 0 ? n0 : i2 == 1 ? n1 : n2);
            for (std::int64_t det0 : targets)
            for (std::int64_t x1 = -B[i1][2]; x1 <= B[i1][2]; ++x1)
            for (std::int64_t x2 = -B[i2][2]; x2 <= B[i2][2]; ++x2) {
                budget.spend();
                const std::int64_t rem = det0 - ni1 * x1 - ni2 * x2;
                if (rem % nk != 0) continue;
                const std::int64_t xk = rem / nk;
                if (std::llabs(xk) > B[k][2]) continue;
                m.at(0, 0) = a0; m.at(1, 0) = a1; m.at(2, 0) = a2;
                m.at(0, 1) = b0; m.at(1, 1) = b1; m.at(2, 1) = b2;
                m.at(i1, 2) = x1; m.at(i2, 2) = x2; m.at(k, 2) = xk;
                if (norm_eval(norm, m) < T) cb(m);
            }
        }
    }
}

template <typename Cb>
void enum_dispatch(const LatticeSpec& l, const NormSpec& norm, double T, Budget& budget, Cb&& cb) {
    if (l.dim == 2)
        enum_d2(l, norm, T, budget, cb);
    else if (l.dim == 3)
        enum_d3(l, norm, T, budget, cb);
    else
        throw UnsupportedGroup("lattice enumeration supports dim 2 and 3");
}

} // namespace

BallEnumeration enumerate_ball(const LatticeSpec& l, const NormSpec& norm, double T, long budget) {
    BallEnumeration out{l, norm, T, {}, 0};
    Budget b{budget};
    enum_dispatch(l, norm, T, b, [&](const ExactMatrix& m) { out.elements.push_back(m); });
    out.candidates_visited = b.used;
    std::sort(out.elements.begin(), out.elements.end());
    return out;
}

long for_each_ball_element(const LatticeSpec& l, const NormSpec& norm, double T,
                           const std::function<void(const ExactMatrix&)>& fn, long budget) {
    Budget b{budget};
    long n = 0;
    enum_dispatch(l, norm, T, b, [&](const ExactMatrix& m) { ++n; fn(m); });
    return n;
}

long count_ball(const LatticeSpec& l, const NormSpec& norm, double T, long budget) {
    Budget b{budget};
    long n = 0;
    enum_dispatch(l, norm, T, b, [&](const ExactMatrix&) { ++n; });
    return n;
}

BallEnumeration enumerate_ball_bruteforce(const LatticeSpec& l, const NormSpec& norm, double T) {
    const int d = l.dim;
    const int n2 = d * d;
    std::vector<std::int64_t> bound(static_cast<std::size_t>(n2));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            bound[static_cast<std::size_t>(i) * d + j] = max_int_below(entry_bound(norm, T, d, i, j));

    BallEnumeration out{l, norm, T, {}, 0};
    ExactMatrix m(d);
    auto targets = det_targets(l);
    std::vector<std::int64_t> e(static_cast<std::size_t>(n2), 0);

    std::function<void(int)> rec = [&](int idx) {
        if (idx == n2) {
            ++out.candidates_visited;
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) m.at(i, j) = e[static_cast<std::size_t>(i) * d + j];
            std::int64_t det = m.det();
            if (std::find(targets.begin(), targets.end(), det) == targets.end()) return;
            if (norm_eval(norm, m) < T) out.elements.push_back(m);
            return;
        }
        for (std::int64_t v = -bound[static_cast<std::size_t>(idx)]; v <= bound[static_cast<std::size_t>(idx)]; ++v) {
            e[static_cast<std::size_t>(idx)] = v;
            rec(idx + 1);
        }
    };
    rec(0);
    std::sort(out.elements.begin(), out.elements.end());
    return out;
}

double test_eval(const TestFunction& f, const std::vector<double>& w) {
    struct Eval {
        const std::vector<double>& w;
        double operator()(const SmoothBump& b) const {
            if (b.center.size() != w.size()) throw DimMismatch("SmoothBump center dim mismatch");
            double s = 0.0;
            for (std::size_t i = 0; i < w.size(); ++i) {
                double d = w[i] - b.center[i];
                s += d * d;
            }
            double u = s / (b.radius * b.radius);
            if (u >= 1.0) return 0.0;
            return std::pow(1.0 - u, b.order);
        }
        double operator()(const BoxIndicator& b) const {
            for (std::size_t i = 0; i < w.size(); ++i)
                if (w[i] < b.lo[i] || w[i] >= b.hi[i]) return 0.0;
            return 1.0;
        }
        double operator()(const AnnulusIndicator& a) const {
            double s = 0.0;
            for (double x : w) s += x * x;
            double r = std::sqrt(s);
            return (r >= a.rmin && r <= a.rmax) ? 1.0 : 0.0;
        }
        double operator()(const TrigCharacter& t) const {
            double s = 0.0;
            for (std::size_t i = 0; i < w.size(); ++i) s += static_cast<double>(t.k[i]) * w[i];
            return std::cos(2.0 * kPi * s);
        }
        double operator()(const RadialBump& b) const {
            double s = 0.0;
            for (double x : w) s += x * x;
            double r = std::sqrt(s);
            if (r <= b.rmin || r >= b.rmax) return 0.0;
            double h = (b.rmax - b.rmin);
            double u = 4.0 * (r - b.rmin) * (b.rmax - r) / (h * h);
            return u * u;
        }
    };
    return std::visit(Eval{w}, f);
}

double orbit_sum(const BallEnumeration& ball, const std::vector<double>& v,
                 const TestFunction& phi) {
    double s = 0.0;
    for (const auto& g : ball.elements) s += test_eval(phi, row_times(v, g));
    return s;
}

double orbit_sum(const LatticeSpec& l, const NormSpec& norm, double T,
                 const std::vector<double>& v, const TestFunction& phi, long budget) {
    double s = 0.0;
    for_each_ball_element(l, norm, T,
                          [&](const ExactMatrix& g) { s += test_eval(phi, row_times(v, g)); },
                          budget);
    return s;
}

std::complex<double> weyl_sum(const LatticeSpec& l, const NormSpec& norm, double T,
                              const std::vector<std::int64_t>& k,
                              const std::vector<double>& x0, long* count_out, long budget) {
    std::complex<double> acc{0.0, 0.0};
    long n = for_each_ball_element(l, norm, T, [&](const ExactMatrix& g) {
        ExactMatrix inv = g.inverse();
        double phase = 0.0;
        for (int i = 0; i < inv.dim(); ++i) {
            double yi = 0.0;
            for (int j = 0; j < inv.dim(); ++j)
                yi += static_cast<double>(inv.at(i, j)) * x0[static_cast<std::size_t>(j)];
            phase += static_cast<double>(k[static_cast<std::size_t>(i)]) * yi;
        }
        acc += std::polar(1.0, 2.0 * kPi * phase);
    }, budget);
    if (count_out) *count_out = n;
    if (n == 0) return {0.0, 0.0};
    return acc / static_cast<double>(n);
}

void ball_to_csv(const BallEnumeration& ball, std::ostream& os) {
    const int d = ball.lattice.dim;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            os << "e" << i << j << (i == d - 1 && j == d - 1 ? '\n' : ',');
    for (const auto& m : ball.elements) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                os << m.at(i, j) << (i == d - 1 && j == d - 1 ? '\n' : ',');
    }
}

long count_frames_in_gram_box(const std::vector<double>& q, const GramBox& box,
                              const NormSpec& norm, double T, long budget) {
    if (q.size() != 3 || box.lo.size() != 6 || box.hi.size() != 6)
        throw DimMismatch("count_frames_in_gram_box is 3x3 only");
    Budget bud{budget};
    const double eps = 1e-9;
    auto in = [&](double v, int idx) { return v >= box.lo[static_cast<std::size_t>(idx)] - eps &&
                                              v <= box.hi[static_cast<std::size_t>(idx)] + eps; };
    // upper-triangle index order: (0,0)=0 (0,1)=1 (0,2)=2 (1,1)=3 (1,2)=4 (2,2)=5
    std::int64_t B[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) B[i][j] = max_int_below(entry_bound(norm, T, 3, i, j));

    auto qf = [&](const std::int64_t* u, const std::int64_t* v) {
        return q[0] * double(u[0]) * double(v[0]) + q[1] * double(u[1]) * double(v[1]) +
               q[2] * double(u[2]) * double(v[2]);
    };

    long count = 0;
    std::int64_t c1[3], c2[3], c3[3];
    std::vector<double> coldbl(3);
    for (c1[0] = -B[0][0]; c1[0] <= B[0][0]; ++c1[0])
    for (c1[1] = -B[1][0]; c1[1] <= B[1][0]; ++c1[1])
    for (c1[2] = -B[2][0]; c1[2] <= B[2][0]; ++c1[2]) {
        bud.spend();
        coldbl = {double(c1[0]), double(c1[1]), double(c1[2])};
        if (!column_feasible(norm, coldbl, 0, T)) continue;
        if (!in(qf(c1, c1), 0)) continue;
        for (c2[0] = -B[0][1]; c2[0] <= B[0][1]; ++c2[0])
        for (c2[1] = -B[1][1]; c2[1] <= B[1][1]; ++c2[1]) {
            bud.spend();
            // Q(c2,c2) in box pins q3*z^2 to an interval; walk only those z.
            double s12 = q[0] * double(c2[0]) * double(c2[0]) + q[1] * double(c2[1]) * double(c2[1]);
            double zlo2, zhi2;
            if (q[2] > 0) {
                zlo2 = (box.lo[3] - eps - s12) / q[2];
                zhi2 = (box.hi[3] + eps - s12) / q[2];
            } else {
                zlo2 = (s12 - box.hi[3] - eps) / (-q[2]);
                zhi2 = (s12 - box.lo[3] + eps) / (-q[2]);
            }
            zhi2 = std::min(zhi2, double(B[2][1]) * double(B[2][1]));
            if (zhi2 < 0.0 || zlo2 > zhi2) continue;
            zlo2 = std::max(zlo2, 0.0);
            std::int64_t zmin = static_cast<std::int64_t>(std::ceil(std::sqrt(zlo2) - 1e-9));
            std::int64_t zmax = static_cast<std::int64_t>(std::floor(std::sqrt(zhi2) + 1e-9));
            for (std::int64_t az = zmin; az <= zmax; ++az)
            for (int sz = 0; sz < (az == 0 ? 1 : 2); ++sz) {
                c2[2] = sz == 0 ? az : -az;
                bud.spend();
                coldbl = {double(c2[0]), double(c2[1]), double(c2[2])};
                if (!column_feasible(norm, coldbl, 1, T)) continue;
                if (!in(qf(c2, c2), 3) || !in(qf(c1, c2), 1)) continue;
                // third column: n . c3 = +/-1 plus two linear Gram bands
                const std::int64_t n0 = c1[1] * c2[2] - c1[2] * c2[1];
                const std::int64_t n1 = c1[2] * c2[0] - c1[0] * c2[2];
                const std::int64_t n2 = c1[0] * c2[1] - c1[1] * c2[0];
                if (n0 == 0 && n1 == 0 && n2 == 0) continue;
                int k = 0;
                std::int64_t nk = n0;
                if (std::llabs(n1) > std::llabs(nk)) { k = 1; nk = n1; }
                if (std::llabs(n2) > std::llabs(nk)) { k = 2; nk = n2; }
                const int i1 = (k + 1) % 3, i2 = (k + 2) % 3;
                const std::int64_t narr[3] = {n0, n1, n2};
                for (std::int64_t det0 : {std::int64_t{1}, std::int64_t{-1}})
                for (std::int64_t x1 = -B[i1][2]; x1 <= B[i1][2]; ++x1) {
                    // Q(c1,c3) band restricts the second free coordinate.
                    double L1 = q[i1] * double(c1[i1]), L2 = q[i2] * double(c1[i2]),
                           Lk = q[k] * double(c1[k]);
                    std::int64_t lo = -B[i2][2], hi = B[i2][2];
                    // x_k is determined by (x1, x2) through the determinant;
                    // substituting it makes the band linear in x2:
                    //   (L2 - Lk*n_{i2}/nk) x2 in [lo13,hi13] - L1*x1 - Lk*(det0 - n_{i1} x1)/nk
                    double coef = L2 - Lk * double(narr[i2]) / double(nk);
                    double base = box.lo[1]; // placeholder; real bands checked below
                    (void)base;
                    double off = L1 * double(x1) + Lk * (double(det0) - double(narr[i1]) * double(x1)) / double(nk);
                    if (std::fabs(coef) > 1e-12) {
                        double b1 = (box.lo[2] - eps - off) / coef;
                        double b2 = (box.hi[2] + eps - off) / coef;
                        if (b1 > b2) std::swap(b1, b2);
                        lo = std::max<std::int64_t>(lo, static_cast<std::int64_t>(std::ceil(b1)));
                        hi = std::min<std::int64_t>(hi, static_cast<std::int64_t>(std::floor(b2)));
                    }
                    for (std::int64_t x2 = lo; x2 <= hi; ++x2) {
                        bud.spend();
                        const std::int64_t rem = det0 - narr[i1] * x1 - narr[i2] * x2;
                        if (rem % nk != 0) continue;
                        const std::int64_t xk = rem / nk;
                        if (std::llabs(xk) > B[k][2]) continue;
                        c3[i1] = x1; c3[i2] = x2; c3[k] = xk;
                        if (!in(qf(c1, c3), 2) || !in(qf(c2, c3), 4) || !in(qf(c3, c3), 5)) continue;
                        ExactMatrix m(3);
                        for (int r = 0; r < 3; ++r) {
                            m.at(r, 0) = c1[r];
                            m.at(r, 1) = c2[r];
                            m.at(r, 2) = c3[r];
                        }
                        if (norm_eval(norm, m) < T) ++count;
                    }
                }
            }
        }
    }
    return count;
}

} // namespace orbitlab
