#include "orbitlab/norms.hpp"

#include <cmath>

namespace orbitlab {

namespace {

double pnorm_accumulate(const std::vector<double>& xs, double p) {
    if (p == kPInf) {
        double m = 0.0;
        for (double x : xs) m = std::max(m, std::fabs(x));
        return m;
    }
    if (p < 1.0) throw BadNorm("p-norm needs p >= 1");
    if (p == 1.0) {
        double s = 0.0;
        for (double x : xs) s += std::fabs(x);
        return s;
    }
    if (p == 2.0) {
        double s = 0.0;
        for (double x : xs) s += x * x;
        return std::sqrt(s);
    }
    double s = 0.0;
    for (double x : xs) s += std::pow(std::fabs(x), p);
    return std::pow(s, 1.0 / p);
}

struct Eval {
    const RealMatrix& a;

    double operator()(const EntrywisePNorm& n) const {
        return pnorm_accumulate(a.entries(), n.p);
    }
    double operator()(const MaxColumnNorm& n) const {
        double m = 0.0;
        for (int j = 0; j < a.cols(); ++j) {
            std::vector<double> col(static_cast<std::size_t>(a.rows()));
            for (int i = 0; i < a.rows(); ++i) col[static_cast<std::size_t>(i)] = a.at(i, j);
            m = std::max(m, pnorm_accumulate(col, n.p));
        }
        return m;
    }
    double operator()(const SpiralNorm& n) const {
        if (a.rows() != 3 || a.cols() != 3) throw DimMismatch("SpiralNorm is 3x3 only");
        if (n.c <= 1.0) throw BadNorm("SpiralNorm needs c > 1");
        double c2 = n.c * n.c;
        double t1 = std::sqrt(c2 * a.at(0, 0) * a.at(0, 0) + a.at(0, 1) * a.at(0, 1));
        double t2 = std::sqrt(c2 * a.at(1, 1) * a.at(1, 1) + a.at(1, 0) * a.at(1, 0));
        double t3 = std::sqrt(a.at(0, 2) * a.at(0, 2) + a.at(1, 2) * a.at(1, 2));
        double m = std::max({t1, t2, t3});
        m = std::max(m, std::fabs(a.at(2, 0)));
        m = std::max(m, std::fabs(a.at(2, 1)));
        return std::max(m, std::fabs(a.at(2, 2)));
    }
    double operator()(const WeightedEntrywise& n) const {
        if (n.weights.size() != a.entries().size())
            throw DimMismatch("WeightedEntrywise weight count mismatch");
        std::vector<double> w(a.entries().size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (n.weights[i] <= 0.0) throw BadNorm("WeightedEntrywise needs positive weights");
            w[i] = n.weights[i] * a.entries()[i];
        }
        return pnorm_accumulate(w, n.p);
    }
};

} // namespace

double norm_eval(const NormSpec& n, const RealMatrix& a) {
    return std::visit(Eval{a}, n);
}

double norm_eval(const NormSpec& n, const ExactMatrix& a) {
    return norm_eval(n, a.real());
}

double entry_bound(const NormSpec& n, double T, int dim, int i, int j) {
    struct Bound {
        double T;
        int dim, i, j;
        double operator()(const EntrywisePNorm&) const { return T; }
        double operator()(const MaxColumnNorm&) const { return T; }
        double operator()(const SpiralNorm& s) const {
            // Diagonal 2x2-block entries are scaled by c inside the max.
            if ((i == 0 && j == 0) || (i == 1 && j == 1)) return T / s.c;
            return T;
        }
        double operator()(const WeightedEntrywise& w) const {
            return T / w.weights[static_cast<std::size_t>(i) * dim + j];
        }
    };
    return std::visit(Bound{T, dim, i, j}, n);
}

std::string norm_name(const NormSpec& n) {
    struct Name {
        std::string operator()(const EntrywisePNorm& v) const {
            return "entrywise-p" + std::to_string(v.p);
        }
        std::string operator()(const MaxColumnNorm& v) const {
            return "max-column-p" + std::to_string(v.p);
        }
        std::string operator()(const SpiralNorm& v) const {
            return "spiral-c" + std::to_string(v.c);
        }
        std::string operator()(const WeightedEntrywise& v) const {
            return "weighted-entrywise-p" + std::to_string(v.p);
        }
    };
    return std::visit(Name{}, n);
}

} // namespace orbitlab
