#pragma once

#include <vector>

#include "orbitlab/lattice.hpp"
#include "orbitlab/norms.hpp"
#include "orbitlab/volume.hpp"

namespace orbitlab {

// Planar orbits of the lower-unipotent subgroup of SL(2,R): sections, limit
// densities, and ambient integrals.

// Section over the plane minus {x1 = 0} (chart 0) or minus {x2 = 0}
// (chart 1): a matrix with first row (x1, x2) and det 1.
RealMatrix ledrappier_section(const std::vector<double>& v, int chart = 0);

// Closed-form limit density: alpha_v(w) = ||E21|| / ||M(v,w)||, where
// M(v,w) = [[-v2 w1, -v2 w2], [v1 w1, v1 w2]].
double ledrappier_density(const std::vector<double>& v, const std::vector<double>& w,
                          const NormSpec& norm);

// Numeric limit alpha_v(w) = lim_T lambda(H_T[sigma(v)^{-1}, sigma(w)]) / lambda(H_T)
// through unipotent skew-ball volumes along the schedule, Aitken-accelerated.
RatioEstimate numeric_alpha(const std::vector<double>& v, const std::vector<double>& w,
                            const NormSpec& norm, const std::vector<double>& schedule,
                            int chart = 0);

// integral over the box of phi(w) alpha_v(w) dw (closed-form density),
// 2-d adaptive Simpson with relative refinement control.
double nu_integral(const TestFunction& phi, const std::vector<double>& v,
                   const NormSpec& norm, const std::vector<double>& box_lo,
                   const std::vector<double>& box_hi, double rel_tol = 1e-6,
                   int max_depth = 12);

// Invariance defect of the finite-T ratio alpha under left H-translations
// (exact invariance in the limit): returns alpha(h1 g1, h2 g2; T) / alpha(g1, g2; T).
double alpha_translation_ratio(const RealMatrix& g1, const RealMatrix& g2,
                               double h1_time, double h2_time, const NormSpec& norm,
                               double T);

// Ambient integral S~(T) = integral over {D < T} of phi(v g) dHaar(g) for
// G = SL(2,R) in the engine's Cartan normalization. Monte Carlo over K x K
// with exact chamber quadrature inside each sample.
struct McEstimate {
    double value = 0.0;
    double stderr_est = 0.0;
};
McEstimate g_orbit_integral(const TestFunction& phi, const std::vector<double>& v,
                            const NormSpec& norm, double T, const McParams& mc);

// Deterministic version via the fiber decomposition over the planar orbit:
// the stabilizer of v is a conjugated unipotent line, so
//   integral = (1/(2 pi^2)) * integral over w of
//              phi(w) * |{t : ||sigma(v)^{-1} u_t sigma(w)|| < T}| dw,
// with the constant pinned by the Frobenius ball volume T^2/2 - 1. The w
// integral runs over [-support, support]^2 (phi must vanish outside).
double g_orbit_integral_fiber(const TestFunction& phi, const std::vector<double>& v,
                              const NormSpec& norm, double T, double support,
                              double rel_tol = 1e-6);

} // namespace orbitlab
