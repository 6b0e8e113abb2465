#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "orbitlab/errors.hpp"
#include "orbitlab/rational.hpp"

namespace orbitlab {

class RealMatrix;

// Square integer matrix with overflow-checked int64 arithmetic. All group
// elements of the integer lattices live here; anything that would wrap
// throws OverflowError instead of silently corrupting a count.
class ExactMatrix {
public:
    ExactMatrix() : dim_(0) {}
    explicit ExactMatrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim, 0) {}
    ExactMatrix(int dim, std::initializer_list<std::int64_t> entries);

    static ExactMatrix identity(int dim);

    int dim() const { return dim_; }
    std::int64_t& at(int i, int j) { return a_[static_cast<std::size_t>(i) * dim_ + j]; }
    std::int64_t at(int i, int j) const { return a_[static_cast<std::size_t>(i) * dim_ + j]; }
    const std::vector<std::int64_t>& entries() const { return a_; }

    ExactMatrix operator*(const ExactMatrix& o) const;
    bool operator==(const ExactMatrix& o) const { return dim_ == o.dim_ && a_ == o.a_; }
    bool operator<(const ExactMatrix& o) const; // lexicographic, for canonical ordering

    std::int64_t det() const;      // dim <= 3 closed form, else Bareiss
    ExactMatrix inverse() const;   // adjugate / det; throws NonUnimodular unless det = +/-1

    RealMatrix real() const;

private:
    int dim_;
    std::vector<std::int64_t> a_;
};

// Dense real matrix, row-major, sized for the tiny representations used here.
class RealMatrix {
public:
    RealMatrix() : rows_(0), cols_(0) {}
    RealMatrix(int rows, int cols) : rows_(rows), cols_(cols),
        a_(static_cast<std::size_t>(rows) * cols, 0.0) {}
    RealMatrix(int rows, int cols, std::initializer_list<double> entries);

    static RealMatrix identity(int dim);
    // 2x2 rotation by theta embedded as the full matrix.
    static RealMatrix rotation2(double theta);
    static RealMatrix diagonal(const std::vector<double>& d);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    double at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const std::vector<double>& entries() const { return a_; }

    RealMatrix operator*(const RealMatrix& o) const;
    RealMatrix operator+(const RealMatrix& o) const;
    RealMatrix operator*(double s) const;
    RealMatrix transpose() const;
    RealMatrix kron(const RealMatrix& o) const;

    double det() const;            // up to 3x3
    RealMatrix inverse() const;    // up to 3x3, adjugate

private:
    int rows_, cols_;
    std::vector<double> a_;
};

// Row vector times matrix (linear action used by the planar orbits).
std::vector<double> row_times(const std::vector<double>& v, const RealMatrix& m);
std::vector<double> row_times(const std::vector<double>& v, const ExactMatrix& m);

} // namespace orbitlab
