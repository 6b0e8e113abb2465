#pragma once

#include <functional>

namespace orbitlab {

using Fn1 = std::function<double(double)>;

// Adaptive Simpson with interval-count and depth guards.
double adaptive_simpson(const Fn1& f, double a, double b,
                        double tol = 1e-10, int max_depth = 40);

// Composite trapezoid for smooth periodic integrands over one period
// (spectrally accurate); returns the average times the period length.
double periodic_trapezoid(const Fn1& f, double a, double b, int nodes);

// Finds x in [lo, hi] with f(x) = target for f nondecreasing on [lo, hi].
// Assumes f(lo) <= target <= f(hi).
double bisect_increasing(const Fn1& f, double lo, double hi, double target,
                         double xtol = 1e-12, int max_iter = 200);

// Minimizer of a convex function on [lo, hi] by golden-section search.
double golden_min(const Fn1& f, double lo, double hi, double xtol = 1e-12);

} // namespace orbitlab
