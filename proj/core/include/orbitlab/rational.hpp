#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "orbitlab/errors.hpp"

namespace orbitlab {

namespace detail {
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 multiply overflow");
    return r;
}
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 add overflow");
    return r;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("int64 subtract overflow");
    return r;
}
} // namespace detail

// Exact rational on checked int64, always kept normalized (den > 0, gcd 1).
// Used for root/weight pairings and growth exponents, where the acceptance
// checks demand exact values like p(q-1).
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw Error("rational with zero denominator");
        if (den < 0) { num = detail::checked_sub(0, num); den = detail::checked_sub(0, den); }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    Rational operator+(const Rational& o) const {
        return {detail::checked_add(detail::checked_mul(num, o.den), detail::checked_mul(o.num, den)),
                detail::checked_mul(den, o.den)};
    }
    Rational operator-(const Rational& o) const {
        return {detail::checked_sub(detail::checked_mul(num, o.den), detail::checked_mul(o.num, den)),
                detail::checked_mul(den, o.den)};
    }
    Rational operator*(const Rational& o) const {
        return {detail::checked_mul(num, o.num), detail::checked_mul(den, o.den)};
    }
    Rational operator/(const Rational& o) const {
        if (o.num == 0) throw Error("rational division by zero");
        return {detail::checked_mul(num, o.den), detail::checked_mul(den, o.num)};
    }
    Rational operator-() const { return {detail::checked_sub(0, num), den}; }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return detail::checked_mul(num, o.den) < detail::checked_mul(o.num, den);
    }
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
};

} // namespace orbitlab
