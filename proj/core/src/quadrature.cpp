#include "orbitlab/quadrature.hpp"

#include <cmath>

#include "orbitlab/errors.hpp"

namespace orbitlab {

namespace {

// Classic recursive scheme: err_est = (S_left + S_right - S_whole) / 15.
double simpson_step(const Fn1& f, double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const Fn1& f, double a, double b, double fa, double fm, double fb,
             double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson_step(f, a, m, fa, flm, fm);
    double right = simpson_step(f, m, b, fm, frm, fb);
    double err = left + right - whole;
    if (depth <= 0 || std::fabs(err) <= 15.0 * tol)
        return left + right + err / 15.0;
    return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
         + adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace

double adaptive_simpson(const Fn1& f, double a, double b, double tol, int max_depth) {
    if (a == b) return 0.0;
    // Seed with a few panels so a bump in the middle of a flat stretch is not
    // missed by the first error estimate.
    const int panels = 8;
    double h = (b - a) / panels;
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        double x0 = a + i * h, x1 = x0 + h, xm = 0.5 * (x0 + x1);
        double f0 = f(x0), fm = f(xm), f1 = f(x1);
        double whole = simpson_step(f, x0, x1, f0, fm, f1);
        total += adapt(f, x0, x1, f0, fm, f1, whole, tol / panels, max_depth);
    }
    return total;
}

double periodic_trapezoid(const Fn1& f, double a, double b, int nodes) {
    if (nodes <= 0) throw QuadratureError("periodic_trapezoid needs nodes > 0");
    double h = (b - a) / nodes;
    double s = 0.0;
    for (int i = 0; i < nodes; ++i) s += f(a + i * h);
    return s * h;
}

double bisect_increasing(const Fn1& f, double lo, double hi, double target,
                         double xtol, int max_iter) {
    double flo = f(lo);
    if (flo >= target) return lo;
    for (int i = 0; i < max_iter && hi - lo > xtol * (1.0 + std::fabs(hi)); ++i) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double golden_min(const Fn1& f, double lo, double hi, double xtol) {
    const double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol * (1.0 + std::fabs(a) + std::fabs(b))) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a); f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a); f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

} // namespace orbitlab
