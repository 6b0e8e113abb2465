#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "orbitlab/matrix.hpp"
#include "orbitlab/rational.hpp"
#include "orbitlab/rootsys.hpp"

using namespace orbitlab;

TEST_CASE("rational arithmetic normalizes and compares exactly") {
    Rational a{2, 4}, b{1, 2};
    CHECK(a == b);
    CHECK((a + b) == Rational{1, 1});
    CHECK((a * b) == Rational{1, 4});
    CHECK((a - Rational{3, 4}) == Rational{-1, 4});
    CHECK((Rational{1, 3} / Rational{2, 5}) == Rational{5, 6});
    CHECK(Rational{-1, -2} == Rational{1, 2}); // sign on the numerator
    CHECK(Rational{1, 3} < Rational{1, 2});
    CHECK(Rational{7, 3}.value() == doctest::Approx(7.0 / 3.0));
}

TEST_CASE("rational arithmetic refuses to overflow silently") {
    Rational big{INT64_MAX / 2, 1};
    CHECK_THROWS_AS(big * big, OverflowError);
}

TEST_CASE("exact matrix determinant and inverse") {
    ExactMatrix g(2, {2, 1, 1, 1});
    CHECK(g.det() == 1);
    ExactMatrix inv = g.inverse();
    CHECK(inv * g == ExactMatrix::identity(2));

    ExactMatrix h(3, {1, 2, 3, 0, 1, 4, 0, 0, 1});
    CHECK(h.det() == 1);
    CHECK(h.inverse() * h == ExactMatrix::identity(3));

    ExactMatrix neg(3, {0, 1, 0, 1, 0, 0, 0, 0, 1});
    CHECK(neg.det() == -1);
    CHECK(neg.inverse() * neg == ExactMatrix::identity(3));

    ExactMatrix sing(2, {2, 0, 0, 2}); // det 4: not unimodular
    CHECK_THROWS_AS(sing.inverse(), NonUnimodular);
}

TEST_CASE("bareiss determinant beyond 3x3") {
    // Block-diagonal of two unimodular blocks: det = 1 * -1.
    ExactMatrix m(4, {2, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0});
    CHECK(m.det() == -1);
}

TEST_CASE("real matrix algebra") {
    RealMatrix r = RealMatrix::rotation2(0.3);
    RealMatrix rt = r.transpose();
    RealMatrix prod = r * rt;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(prod.at(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
    CHECK(r.det() == doctest::Approx(1.0));

    RealMatrix a(2, 2, {1.0, 2.0, 3.0, 4.0});
    RealMatrix ainv = a.inverse();
    RealMatrix id = a * ainv;
    CHECK(id.at(0, 0) == doctest::Approx(1.0));
    CHECK(id.at(1, 0) == doctest::Approx(0.0).epsilon(1e-12));

    RealMatrix k = RealMatrix::identity(2).kron(RealMatrix::diagonal({2.0, 3.0}));
    CHECK(k.rows() == 4);
    CHECK(k.at(0, 0) == 2.0);
    CHECK(k.at(3, 3) == 3.0);
}

TEST_CASE("row vector action") {
    std::vector<double> v{1.0, 2.0};
    ExactMatrix g(2, {1, 1, 0, 1});
    auto w = row_times(v, g);
    CHECK(w[0] == doctest::Approx(1.0));
    CHECK(w[1] == doctest::Approx(3.0));
}

TEST_CASE("symmetric power of 2x2 matrices") {
    // Sym^1 is the matrix itself.
    RealMatrix g(2, 2, {1.0, 2.0, 3.0, 4.0});
    RealMatrix s2 = sym_power(g, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(s2.at(i, j) == doctest::Approx(g.at(i, j)));

    // On a diagonal matrix Sym^2 acts by monomials of degree 2.
    RealMatrix d = RealMatrix::diagonal({2.0, 0.5});
    RealMatrix s3 = sym_power(d, 3);
    CHECK(s3.at(0, 0) == doctest::Approx(4.0));
    CHECK(s3.at(1, 1) == doctest::Approx(1.0));
    CHECK(s3.at(2, 2) == doctest::Approx(0.25));
    CHECK(s3.at(0, 1) == doctest::Approx(0.0));

    // Representation property on rotations.
    RealMatrix r1 = RealMatrix::rotation2(0.4), r2 = RealMatrix::rotation2(1.1);
    RealMatrix lhs = sym_power(r1 * r2, 4);
    RealMatrix rhs = sym_power(r1, 4) * sym_power(r2, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(lhs.at(i, j) == doctest::Approx(rhs.at(i, j)).epsilon(1e-10));
}

TEST_CASE("quaternion rotations are orthogonal with det 1") {
    RealMatrix r = so3_from_quaternion(0.3, -1.2, 0.7, 2.0);
    RealMatrix p = r * r.transpose();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(p.at(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
    CHECK(r.det() == doctest::Approx(1.0));
}
