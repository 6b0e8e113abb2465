#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <variant>
#include <vector>

#include "orbitlab/matrix.hpp"
#include "orbitlab/norms.hpp"

namespace orbitlab {

// Integer matrix groups supported by exact enumeration.
enum class LatticeFamily { SL, DetPM1 }; // det = 1, or det = +/-1

struct LatticeSpec {
    LatticeFamily family = LatticeFamily::SL;
    int dim = 2; // 2 or 3
};

constexpr long kDefaultEnumBudget = 100000000L; // candidate tuples, not elements

// Result of enumerating {gamma : ||gamma|| < T}, sorted in a canonical
// (lexicographic) order so runs are reproducible.
struct BallEnumeration {
    LatticeSpec lattice;
    NormSpec norm;
    double T = 0.0;
    std::vector<ExactMatrix> elements;
    long candidates_visited = 0;
};

BallEnumeration enumerate_ball(const LatticeSpec& l, const NormSpec& norm, double T,
                               long budget = kDefaultEnumBudget);

// Streaming variant: visits each element exactly once, unspecified order.
// Returns the element count. Use for T large enough that storage hurts.
long for_each_ball_element(const LatticeSpec& l, const NormSpec& norm, double T,
                           const std::function<void(const ExactMatrix&)>& fn,
                           long budget = kDefaultEnumBudget);

long count_ball(const LatticeSpec& l, const NormSpec& norm, double T,
                long budget = kDefaultEnumBudget);

// Reference implementation: brute force over all entry tuples. Exponential in
// dim^2; only for cross-validating enumerate_ball at tiny T.
BallEnumeration enumerate_ball_bruteforce(const LatticeSpec& l, const NormSpec& norm, double T);

// ---------------------------------------------------------------------------
// Test functions on R^n (orbit observables).

struct SmoothBump {            // (1 - (|w-c|/r)^2)^order on the ball, else 0
    std::vector<double> center;
    double radius = 1.0;
    int order = 2;
};
struct BoxIndicator {          // product of [lo_i, hi_i) indicators
    std::vector<double> lo, hi;
};
struct AnnulusIndicator {      // 1 on {rmin <= |w| <= rmax}
    double rmin = 0.0, rmax = 1.0;
};
struct TrigCharacter {         // cos(2 pi <k, w>); complex sums use weyl_sum
    std::vector<std::int64_t> k;
};
struct RadialBump {            // C^1 radial bump supported on rmin < |w| < rmax
    double rmin = 0.0, rmax = 1.0;
};

using TestFunction = std::variant<SmoothBump, BoxIndicator, AnnulusIndicator,
                                  TrigCharacter, RadialBump>;

double test_eval(const TestFunction& f, const std::vector<double>& w);

// ---------------------------------------------------------------------------
// Orbit sums.

// sum over gamma in the ball of phi(v . gamma), v a row vector.
double orbit_sum(const BallEnumeration& ball, const std::vector<double>& v,
                 const TestFunction& phi);
// Streaming version for large T.
double orbit_sum(const LatticeSpec& l, const NormSpec& norm, double T,
                 const std::vector<double>& v, const TestFunction& phi,
                 long budget = kDefaultEnumBudget);

// Normalized Weyl sum (1/#Gamma_T) sum_gamma e^{2 pi i <k, gamma^{-1} x0>}
// for the torus action. Returns the complex average; the count goes out via
// count_out if non-null.
std::complex<double> weyl_sum(const LatticeSpec& l, const NormSpec& norm, double T,
                              const std::vector<std::int64_t>& k,
                              const std::vector<double>& x0,
                              long* count_out = nullptr,
                              long budget = kDefaultEnumBudget);

// CSV export: one row per element, entries in row-major order.
void ball_to_csv(const BallEnumeration& ball, std::ostream& os);

// ---------------------------------------------------------------------------
// Frames with pinned Gram data (indefinite forms experiment).
//
// Counts gamma with det +/-1 (dim 3), ||gamma|| < T, and the Gram matrix
// Q(col_i, col_j) inside the closed box [lo_ij, hi_ij], Q = diag(q).
struct GramBox {
    // symmetric 3x3 bounds, row-major upper triangle order (11,12,13,22,23,33)
    std::vector<double> lo, hi;
};

long count_frames_in_gram_box(const std::vector<double>& q, const GramBox& box,
                              const NormSpec& norm, double T,
                              long budget = kDefaultEnumBudget);

} // namespace orbitlab
