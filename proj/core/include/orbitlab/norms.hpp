#pragma once

#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "orbitlab/matrix.hpp"

namespace orbitlab {

inline constexpr double kPInf = std::numeric_limits<double>::infinity();

// Entrywise p-norm: ||A|| = (sum |a_ij|^p)^(1/p); p = kPInf gives max |a_ij|.
struct EntrywisePNorm {
    double p = 2.0;
};

// Max over columns of the vector p-norm of the column.
struct MaxColumnNorm {
    double p = 2.0;
};

// The 3x3 spiral-adapted norm
//   ||A|| = max{ sqrt(c^2 a11^2 + a12^2), sqrt(c^2 a22^2 + a21^2),
//                sqrt(a13^2 + a23^2), |a31|, |a32|, |a33| },  c > 1.
struct SpiralNorm {
    double c = 1.1;
};

// Entrywise p-norm with positive weights: (sum (w_ij |a_ij|)^p)^(1/p).
struct WeightedEntrywise {
    std::vector<double> weights; // row-major, dim*dim entries
    double p = 2.0;
};

using NormSpec = std::variant<EntrywisePNorm, MaxColumnNorm, SpiralNorm, WeightedEntrywise>;

double norm_eval(const NormSpec& n, const RealMatrix& a);
double norm_eval(const NormSpec& n, const ExactMatrix& a);

// Largest |a_ij| compatible with ||A|| < T, used to bound enumeration ranges.
// Conservative (never excludes a valid matrix).
double entry_bound(const NormSpec& n, double T, int dim, int i, int j);

std::string norm_name(const NormSpec& n);

// Distance function D(g) = max{1, ||Psi(g)||}. The representation is applied
// by the caller; this type only pairs the norm with the floor at 1.
struct DistanceFunction {
    NormSpec norm;
    double operator()(const RealMatrix& g) const {
        double v = norm_eval(norm, g);
        return v > 1.0 ? v : 1.0;
    }
    double operator()(const ExactMatrix& g) const {
        double v = norm_eval(norm, g);
        return v > 1.0 ? v : 1.0;
    }
};

} // namespace orbitlab
