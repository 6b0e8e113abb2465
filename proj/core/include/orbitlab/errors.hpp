#pragma once

#include <stdexcept>
#include <string>

namespace orbitlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Checked int64 arithmetic would wrap; the exact-matrix path refuses to.
struct OverflowError : Error {
    using Error::Error;
};

struct DimMismatch : Error {
    using Error::Error;
};

// Exact inverse requested for a matrix with det not in {+1, -1}.
struct NonUnimodular : Error {
    using Error::Error;
};

struct BadNorm : Error {
    using Error::Error;
};

// Enumeration would visit more candidate tuples than the configured budget.
struct BudgetExceeded : Error {
    using Error::Error;
};

// Asymptotic-constant machinery needs the gap condition on growth exponents.
struct ConditionGRequired : Error {
    using Error::Error;
};

struct UnsupportedGroup : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct QuadratureError : Error {
    using Error::Error;
};

} // namespace orbitlab
