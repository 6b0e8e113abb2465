#include "orbitlab/matrix.hpp"

#include <cmath>
#include <cstdlib>

namespace orbitlab {

using detail::checked_add;
using detail::checked_mul;
using detail::checked_sub;

ExactMatrix::ExactMatrix(int dim, std::initializer_list<std::int64_t> entries)
    : dim_(dim), a_(entries) {
    if (a_.size() != static_cast<std::size_t>(dim) * dim)
        throw DimMismatch("ExactMatrix initializer size mismatch");
}

ExactMatrix ExactMatrix::identity(int dim) {
    ExactMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
    return m;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
    if (dim_ != o.dim_) throw DimMismatch("ExactMatrix dim mismatch in multiply");
    ExactMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            std::int64_t s = 0;
            for (int k = 0; k < dim_; ++k)
                s = checked_add(s, checked_mul(at(i, k), o.at(k, j)));
            r.at(i, j) = s;
        }
    return r;
}

bool ExactMatrix::operator<(const ExactMatrix& o) const {
    if (dim_ != o.dim_) return dim_ < o.dim_;
    return a_ < o.a_;
}

std::int64_t ExactMatrix::det() const {
    if (dim_ == 1) return at(0, 0);
    if (dim_ == 2)
        return checked_sub(checked_mul(at(0, 0), at(1, 1)), checked_mul(at(0, 1), at(1, 0)));
    if (dim_ == 3) {
        auto m2 = [&](int a, int b, int c, int d) {
            return checked_sub(checked_mul(at(a, b), at(c, d)), checked_mul(at(a, d), at(c, b)));
        };
        std::int64_t s = checked_mul(at(0, 0), m2(1, 1, 2, 2));
        s = checked_sub(s, checked_mul(at(0, 1), checked_sub(checked_mul(at(1, 0), at(2, 2)),
                                                             checked_mul(at(1, 2), at(2, 0)))));
        return checked_add(s, checked_mul(at(0, 2), checked_sub(checked_mul(at(1, 0), at(2, 1)),
                                                                checked_mul(at(1, 1), at(2, 0)))));
    }
    // Fraction-free Gaussian elimination (Bareiss) for the occasional larger case.
    std::vector<std::int64_t> m = a_;
    auto e = [&](int i, int j) -> std::int64_t& { return m[static_cast<std::size_t>(i) * dim_ + j]; };
    std::int64_t sign = 1, prev = 1;
    for (int k = 0; k < dim_ - 1; ++k) {
        if (e(k, k) == 0) {
            int p = k + 1;
            while (p < dim_ && e(p, k) == 0) ++p;
            if (p == dim_) return 0;
            for (int j = 0; j < dim_; ++j) std::swap(e(k, j), e(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < dim_; ++i)
            for (int j = k + 1; j < dim_; ++j) {
                std::int64_t t = checked_sub(checked_mul(e(i, j), e(k, k)),
                                             checked_mul(e(i, k), e(k, j)));
                e(i, j) = t / prev;
            }
        prev = e(k, k);
    }
    return checked_mul(sign, e(dim_ - 1, dim_ - 1));
}

ExactMatrix ExactMatrix::inverse() const {
    std::int64_t d = det();
    if (d != 1 && d != -1)
        throw NonUnimodular("exact inverse needs det +/-1, got " + std::to_string(d));
    ExactMatrix adj(dim_);
    if (dim_ == 1) {
        adj.at(0, 0) = 1;
    } else if (dim_ == 2) {
        adj.at(0, 0) = at(1, 1);
        adj.at(0, 1) = checked_sub(0, at(0, 1));
        adj.at(1, 0) = checked_sub(0, at(1, 0));
        adj.at(1, 1) = at(0, 0);
    } else if (dim_ == 3) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
                int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
                adj.at(i, j) = checked_sub(checked_mul(at(r0, c0), at(r1, c1)),
                                           checked_mul(at(r0, c1), at(r1, c0)));
            }
    } else {
        throw UnsupportedGroup("exact inverse implemented for dim <= 3");
    }
    if (d == -1)
        for (auto& x : const_cast<std::vector<std::int64_t>&>(adj.entries()))
            x = checked_sub(0, x);
    return adj;
}

RealMatrix ExactMatrix::real() const {
    RealMatrix r(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r.at(i, j) = static_cast<double>(at(i, j));
    return r;
}

RealMatrix::RealMatrix(int rows, int cols, std::initializer_list<double> entries)
    : rows_(rows), cols_(cols), a_(entries) {
    if (a_.size() != static_cast<std::size_t>(rows) * cols)
        throw DimMismatch("RealMatrix initializer size mismatch");
}

RealMatrix RealMatrix::identity(int dim) {
    RealMatrix m(dim, dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

RealMatrix RealMatrix::rotation2(double theta) {
    double c = std::cos(theta), s = std::sin(theta);
    return RealMatrix(2, 2, {c, -s, s, c});
}

RealMatrix RealMatrix::diagonal(const std::vector<double>& d) {
    RealMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (int i = 0; i < m.rows_; ++i) m.at(i, i) = d[static_cast<std::size_t>(i)];
    return m;
}

RealMatrix RealMatrix::operator*(const RealMatrix& o) const {
    if (cols_ != o.rows_) throw DimMismatch("RealMatrix dim mismatch in multiply");
    RealMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            double v = at(i, k);
            if (v == 0.0) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += v * o.at(k, j);
        }
    return r;
}

RealMatrix RealMatrix::operator+(const RealMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimMismatch("RealMatrix dim mismatch in add");
    RealMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

RealMatrix RealMatrix::operator*(double s) const {
    RealMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
    return r;
}

RealMatrix RealMatrix::transpose() const {
    RealMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

RealMatrix RealMatrix::kron(const RealMatrix& o) const {
    RealMatrix r(rows_ * o.rows_, cols_ * o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            double v = at(i, j);
            if (v == 0.0) continue;
            for (int p = 0; p < o.rows_; ++p)
                for (int q = 0; q < o.cols_; ++q)
                    r.at(i * o.rows_ + p, j * o.cols_ + q) = v * o.at(p, q);
        }
    return r;
}

double RealMatrix::det() const {
    if (rows_ != cols_) throw DimMismatch("det of non-square matrix");
    if (rows_ == 1) return at(0, 0);
    if (rows_ == 2) return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
    if (rows_ == 3)
        return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1))
             - at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0))
             + at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
    throw UnsupportedGroup("RealMatrix::det implemented for dim <= 3");
}

RealMatrix RealMatrix::inverse() const {
    double d = det();
    if (d == 0.0) throw Error("singular matrix inverse");
    RealMatrix r(rows_, cols_);
    if (rows_ == 1) {
        r.at(0, 0) = 1.0 / d;
    } else if (rows_ == 2) {
        r.at(0, 0) = at(1, 1) / d;
        r.at(0, 1) = -at(0, 1) / d;
        r.at(1, 0) = -at(1, 0) / d;
        r.at(1, 1) = at(0, 0) / d;
    } else {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
                int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
                r.at(i, j) = (at(r0, c0) * at(r1, c1) - at(r0, c1) * at(r1, c0)) / d;
            }
    }
    return r;
}

std::vector<double> row_times(const std::vector<double>& v, const RealMatrix& m) {
    if (static_cast<int>(v.size()) != m.rows()) throw DimMismatch("row_times dim mismatch");
    std::vector<double> r(static_cast<std::size_t>(m.cols()), 0.0);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r[static_cast<std::size_t>(j)] += v[static_cast<std::size_t>(i)] * m.at(i, j);
    return r;
}

std::vector<double> row_times(const std::vector<double>& v, const ExactMatrix& m) {
    if (static_cast<int>(v.size()) != m.dim()) throw DimMismatch("row_times dim mismatch");
    std::vector<double> r(static_cast<std::size_t>(m.dim()), 0.0);
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) r[static_cast<std::size_t>(j)] += v[static_cast<std::size_t>(i)] * static_cast<double>(m.at(i, j));
    return r;
}

} // namespace orbitlab
