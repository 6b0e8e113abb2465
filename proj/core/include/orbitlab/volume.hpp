#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "orbitlab/norms.hpp"
#include "orbitlab/quadrature.hpp"
#include "orbitlab/rng.hpp"
#include "orbitlab/rootsys.hpp"

namespace orbitlab {

// ---------------------------------------------------------------------------
// Radial sublevel measure: the scan-then-bisect workhorse. Given a profile
// f(t) (a matrix norm along a chamber ray, typically eventually increasing)
// and a weight w(t) >= 0, computes  integral over {t in [0,cap] : f(t) < T}
// of w(t) dt, resolving each crossing by bisection. Handles non-monotone
// profiles by honest piecewise integration over the scanned sublevel set.
double radial_sublevel_integral(const Fn1& profile, const Fn1& weight, double T,
                                double scan_step = 0.25, double hard_cap = 400.0);

// Largest scanned t with profile < T (0 if none).
double radial_boundary(const Fn1& profile, double T,
                       double scan_step = 0.25, double hard_cap = 400.0);

// ---------------------------------------------------------------------------
// Chamber-sector volume: integral over the positive chamber (rescaled-basis
// coordinates, Lebesgue dt) of xi(Y) restricted to ||Psi(exp Y)|| < T.
// Deterministic for rank <= 2, importance-sampled Monte Carlo above.
double chamber_sector_volume(const GroupSpec& gs, const NormSpec& norm, double T,
                             const McParams& mc = {});
// Rank-2 chamber integral of xi restricted to ||A exp(Y) B|| < T and to the
// slab t2 <= t2_max (pass +inf for the full sector). Used to measure how much
// of the ball volume sits near the wall of the chamber.
double chamber_integral_slab(const GroupSpec& gs, const NormSpec& norm, double T,
                             const RealMatrix& A, const RealMatrix& B, double t2_max);

// ---------------------------------------------------------------------------
// Full Haar ball / skew-ball volume via the Cartan decomposition, for the
// groups with an angle-parametrized compact factor (SL(2,R), SL2 x SL2).
// The set is {h : D(g1 h g2) < T} with D = max{1, ||.||} on the representation.
struct SkewBall {
    GroupSpec gs;
    NormSpec norm;
    RealMatrix g1, g2; // in representation coordinates; identity() for plain balls
};

enum class VolumeMethod { Quadrature, MonteCarlo };

struct VolumeEstimate {
    double value = 0.0;
    double stderr_est = 0.0; // 0 for deterministic quadrature
    long evals = 0;
};

VolumeEstimate haar_volume(const SkewBall& ball, double T,
                           VolumeMethod method = VolumeMethod::Quadrature,
                           const McParams& mc = {}, int angular_nodes = 32);

// ---------------------------------------------------------------------------
// Asymptotic constants: lambda(H_T) ~ C T^m (growth-gap case).
//
// D: integral over [0,inf)^{r-1} of xi_hat(tau) / ||E_tau||^m dtau, truncated
// where the exponential tail bound drops below tol. A, B conjugate the limit
// matrix: integrand xi_hat / ||A E_tau B||^m (used by the K-average).
double asymptotic_constant_D(const GroupSpec& gs, const NormSpec& norm,
                             double tol = 1e-4);
double asymptotic_constant_D_conjugated(const GroupSpec& gs, const NormSpec& norm,
                                        const RealMatrix& A, const RealMatrix& B,
                                        double tol = 1e-4);
// C: K x K average of the conjugated D integral.
double asymptotic_constant_C(const GroupSpec& gs, const NormSpec& norm,
                             double tol = 1e-4, int angular_nodes = 32);

// ---------------------------------------------------------------------------
// Ratio extrapolation: given volume callables for the skew and plain balls,
// evaluates the ratio along the schedule and accelerates with Aitken's
// delta-squared on the last three points.
struct RatioEstimate {
    double alpha = 0.0;      // extrapolated limit
    double stability = 0.0;  // spread over the schedule tail
    std::vector<std::pair<double, double>> trace; // (T, ratio)
};

RatioEstimate limit_ratio_alpha(const std::function<double(double)>& skew_volume,
                                const std::function<double(double)>& plain_volume,
                                const std::vector<double>& schedule);

// ---------------------------------------------------------------------------
// Unipotent skew balls in SL(2,R): H = {u_t}, lower unipotent; the skew ball
// {t : max(1, ||a + t b||) < T} with a = g1 g2, b = g1 E21 g2 is an interval
// by convexity; returns its length.
double unipotent_skewball_volume(const RealMatrix& g1, const RealMatrix& g2,
                                 const NormSpec& norm, double T);

// ---------------------------------------------------------------------------
// The spiral subgroup of SL(3,R) with its adapted norm (SpiralNorm{c}).
// angle_shift rotates the planar block: the profile becomes
// e^t sqrt(c^2 cos^2(t+shift) + sin^2(t+shift)).
struct SpiralVolume {
    double value = 0.0;
    double tau = 0.0;      // largest t with profile(t) < T
    bool monotone = true;  // profile monotone on the integration range
};

SpiralVolume spiral_h_volume(double c, double T, double angle_shift = 0.0);

// ---------------------------------------------------------------------------
// Riemannian distance functions (rank-one hyperbolic plane + chamber data).

// Direction of maximal volume growth: Y_max = v_rho / |v_rho| where
// <v_rho, .> = rho under the given inner product (Gram matrix in
// s-coordinates; identity by default). Returns the unit vector.
struct YmaxResult {
    std::vector<double> y;    // s-coordinates, unit norm for the Gram metric
    bool interior = false;    // strictly inside the positive chamber
};
YmaxResult ymax(const GroupSpec& gs, const RealMatrix& gram);

struct RiemannianExponents {
    double delta = 0.0; // e^{delta T} rate: 2 rho(Y_max)
    double power = 0.0; // T^{(r-1)/2}
};
RiemannianExponents riemannian_exponents(const GroupSpec& gs, const RealMatrix& gram);

// integral over the Euclidean ball B(0,T) in R^r of e^{lambda(Y)} dY,
// computed by slicing along the lambda direction.
double exp_ball_integral(const std::vector<double>& lambda, double T);

// Hyperbolic-plane Busemann cocycle along the upward unit-speed geodesic
// gamma(t) = e^t i from basepoint i: returns d(gamma(t_max), x+iy) - t_max.
// Closed-form limit: -log(y).
double busemann_rank1(double x, double y, double t_max);
double hyperbolic_distance(double x1, double y1, double x2, double y2);

} // namespace orbitlab
